//! Pfaffian orientations, Kasteleyn matrices and coefficient queries on
//! their determinants.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::linalg::{bareiss_determinant, cofactor_determinant, interpolation_determinant, Matrix};
use crate::weighting::EdgeWeighting;
use crate::{IntMatrix, IntPoly, PolyMatrix};

/// `direction[e] = (from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianOrientation {
    pub direction: Vec<(usize, usize)>,
}

impl PfaffianOrientation {
    /// `+1` when `e` points from `u` to the other endpoint.
    pub fn sign_from(&self, e: usize, u: usize) -> i64 {
        if self.direction[e].0 == u {
            1
        } else {
            -1
        }
    }
}

/// Orients every component so each bounded face has an odd number of
/// clockwise edges.
///
/// A breadth-first spanning tree (neighbours by vertex id) is oriented from
/// lower to higher id. The remaining edges form a spanning tree of the dual;
/// they are fixed from the leaves toward the outer face, each one settling
/// the parity of the face it leads away from.
pub fn pfaffian_orient(g: &PlanarGraph) -> Result<PfaffianOrientation> {
    let mut direction = g.edges().to_vec();
    for members in g.components() {
        if members.len() < 2 {
            continue;
        }
        let (sub, vmap, emap) = g.induced(&members);
        for (e, (a, b)) in orient_connected(&sub)?.into_iter().enumerate() {
            direction[emap[e]] = (vmap[a], vmap[b]);
        }
    }
    Ok(PfaffianOrientation { direction })
}

fn orient_connected(g: &PlanarGraph) -> Result<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut in_tree = vec![false; m];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<(usize, usize)> = g.neighbors(v).collect();
        nbrs.sort_unstable();
        for (w, e) in nbrs {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut dir: Vec<Option<(usize, usize)>> = (0..m)
        .map(|e| {
            let (a, b) = g.endpoints(e);
            in_tree[e].then_some((a.min(b), a.max(b)))
        })
        .collect();

    let faces = g.compute_faces()?;
    let mut adj = vec![Vec::new(); faces.face_count()];
    for (a, b, e) in faces.dual_edges() {
        if !in_tree[e] {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut parent = vec![None; faces.face_count()];
    let mut visited = vec![false; faces.face_count()];
    let mut order = vec![faces.outer];
    visited[faces.outer] = true;
    let mut i = 0;
    while i < order.len() {
        let f = order[i];
        i += 1;
        for &(h, e) in &adj[f] {
            if !visited[h] {
                visited[h] = true;
                parent[h] = Some(e);
                order.push(h);
            }
        }
    }
    if order.len() != faces.face_count() {
        return Err(Error::Internal("co-tree edges do not span the dual".into()));
    }
    for &f in order.iter().skip(1).rev() {
        let pe = parent[f].expect("non-root face has a parent edge");
        let mut against = 0;
        let mut parent_dart = None;
        for &d in &faces.faces[f] {
            if d.edge() == pe {
                parent_dart = Some(d);
                continue;
            }
            let (from, _) = dir[d.edge()].ok_or_else(|| Error::Internal("face edge oriented out of order".into()))?;
            if from != g.tail(d) {
                against += 1;
            }
        }
        let d = parent_dart.expect("parent edge lies on the face");
        // make the parent edge clockwise on f exactly when the rest is even
        dir[pe] = Some(if against % 2 == 0 { (g.head(d), g.tail(d)) } else { (g.tail(d), g.head(d)) });
    }
    Ok(dir.into_iter().map(|d| d.expect("every edge oriented")).collect())
}

/// Clockwise-edge count of every bounded face of every component, each
/// face listed by the vertices of its boundary walk.
pub fn clockwise_counts(g: &PlanarGraph, o: &PfaffianOrientation) -> Result<Vec<(Vec<usize>, usize)>> {
    let mut out = Vec::new();
    for members in g.components() {
        let (sub, vmap, emap) = g.induced(&members);
        let faces = sub.compute_faces()?;
        for f in faces.bounded_faces() {
            let walk = &faces.faces[f];
            let count = walk.iter().filter(|&&d| o.direction[emap[d.edge()]].0 != vmap[sub.tail(d)]).count();
            out.push((walk.iter().map(|&d| vmap[sub.tail(d)]).collect(), count));
        }
    }
    Ok(out)
}

/// Skew matrix with `+x^w(e)` at `(from, to)` and `-x^w(e)` at `(to, from)`.
pub fn build_kasteleyn_matrix(g: &PlanarGraph, o: &PfaffianOrientation, w: &EdgeWeighting) -> PolyMatrix {
    let mut m = Matrix::zeros(g.vertex_count());
    for e in 0..g.edge_count() {
        let (a, b) = o.direction[e];
        m[(a, b)] = IntPoly::monomial(BigInt::one(), w.weight(e));
        m[(b, a)] = IntPoly::monomial(-BigInt::one(), w.weight(e));
    }
    m
}

/// Integer Kasteleyn matrix with every weight 0.
pub fn build_unweighted_matrix(g: &PlanarGraph, o: &PfaffianOrientation) -> IntMatrix {
    let mut m = Matrix::zeros(g.vertex_count());
    for e in 0..g.edge_count() {
        let (a, b) = o.direction[e];
        m[(a, b)] = BigInt::one();
        m[(b, a)] = -BigInt::one();
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DeterminantStrategy {
    /// Fraction-free elimination over the polynomials themselves.
    #[default]
    Elimination,
    /// Exact evaluation at integer points followed by interpolation.
    Interpolation,
    /// Cofactor expansion; small matrices only.
    Cofactor,
}

pub fn poly_determinant(m: &PolyMatrix) -> IntPoly {
    poly_determinant_with(m, DeterminantStrategy::Elimination)
}

pub fn poly_determinant_with(m: &PolyMatrix, strategy: DeterminantStrategy) -> IntPoly {
    match strategy {
        DeterminantStrategy::Elimination => bareiss_determinant(m),
        DeterminantStrategy::Interpolation => interpolation_determinant(m),
        DeterminantStrategy::Cofactor => cofactor_determinant(m),
    }
}

/// `det` of the Kasteleyn matrix of `g` under `w`, checked to have
/// nonnegative coefficients.
pub fn weighted_determinant(g: &PlanarGraph, w: &EdgeWeighting) -> Result<IntPoly> {
    let o = pfaffian_orient(g)?;
    let det = poly_determinant(&build_kasteleyn_matrix(g, &o, w));
    if let Some((k, c)) = det.terms().find(|(_, c)| c.is_negative()) {
        return Err(Error::Internal(format!("Kasteleyn determinant has coefficient {c} at x^{k}")));
    }
    Ok(det)
}

/// Whether the coefficient at `exponent` is nonzero, under the promise that
/// it is 0 or 1.
pub fn spl_query(p: &IntPoly, exponent: i64) -> Result<bool> {
    let c = p.coefficient(exponent);
    if c.is_zero() {
        Ok(false)
    } else if c.is_one() {
        Ok(true)
    } else {
        Err(Error::PromiseViolation { exponent, coefficient: c.to_string() })
    }
}

/// Lowest exponent of `det` halved, with the promise check applied there.
///
/// Every matching weight lies within `(n/2) max|w|` of zero, so the lowest
/// nonzero coefficient is what a query loop over that range would stop at.
pub fn lowest_query(det: &IntPoly, n: usize, w: &EdgeWeighting) -> Result<Option<i64>> {
    let Some(low) = det.low_exponent() else {
        return Ok(None);
    };
    let bound = (n as i64 / 2).saturating_mul(w.max_abs()).saturating_mul(2);
    if low.abs() > bound || low % 2 != 0 {
        return Err(Error::Internal(format!("lowest determinant exponent {low} outside [-{bound}, {bound}] or odd")));
    }
    spl_query(det, low)?;
    Ok(Some(low / 2))
}

/// Minimum total weight (offset excluded) of a perfect matching, or `None`
/// when there is none.
pub fn min_matching_weight(g: &PlanarGraph, w: &EdgeWeighting) -> Result<Option<i64>> {
    if g.vertex_count() % 2 == 1 {
        return Ok(None);
    }
    lowest_query(&weighted_determinant(g, w)?, g.vertex_count(), w)
}

pub fn count_perfect_matchings(g: &PlanarGraph) -> Result<BigUint> {
    if g.vertex_count() % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let o = pfaffian_orient(g)?;
    let det = bareiss_determinant(&build_unweighted_matrix(g, &o));
    if det.sign() == Sign::Minus {
        return Err(Error::NonSquareDeterminant(det.to_string()));
    }
    let det = det.magnitude().clone();
    let root = det.sqrt();
    if &root * &root != det {
        return Err(Error::NonSquareDeterminant(det.to_string()));
    }
    Ok(root)
}
