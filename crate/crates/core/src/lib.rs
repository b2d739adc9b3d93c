//! Perfect matchings in planar graphs through circulation-based isolating
//! weightings and Kasteleyn determinants.

pub mod cli;
pub mod embed;
pub mod error;
pub mod face_weighting;
pub mod graph;
pub mod grid;
pub mod io;
pub mod kasteleyn;
pub mod linalg;
pub mod matcher;
pub mod oracle;
pub mod outerplanar;
pub mod planarity;
pub mod poly;
pub mod scalar;
pub mod weighting;

pub use error::{Error, Result};
pub use graph::{build_planar_graph, compute_bipartition, Bipartition, Dart, FaceStructure, PlanarGraph};
pub use weighting::{EdgeWeighting, Matching};

/// Laurent polynomial with big-integer coefficients.
pub type IntPoly = poly::LaurentPolynomial<num_bigint::BigInt>;
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
pub type PolyMatrix = linalg::Matrix<IntPoly>;
pub type Gf2Matrix = linalg::Matrix<scalar::Gf2>;
