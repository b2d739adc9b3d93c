//! Outerplanar graphs given by a spine order: bipartization, perfect
//! matching parity, and the unique perfect matching test.
//!
//! Vertex `k` carries spine label `k + 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::linalg::{bareiss_determinant, Matrix};
use crate::scalar::Gf2;
use crate::weighting::Matching;
use crate::{Gf2Matrix, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterplanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OuterplanarGraph {
    /// Edges by 0-based vertex index; they must not cross as chords of the
    /// circle `0, 1, ..., n - 1`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<OuterplanarGraph> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) is not a chord of a {n}-vertex spine")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) listed twice")));
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            let (a, b) = (a.min(b), a.max(b));
            for &(c, d) in &edges[i + 1..] {
                let (c, d) = (c.min(d), c.max(d));
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(Error::Crossing(a + 1, b + 1, c + 1, d + 1));
                }
            }
        }
        Ok(OuterplanarGraph { n, edges })
    }

    /// Edges by 1-based spine label.
    pub fn from_labels(n: usize, labelled: &[(usize, usize)]) -> Result<OuterplanarGraph> {
        if labelled.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::InvalidInput("spine labels start at 1".into()));
        }
        OuterplanarGraph::new(n, labelled.iter().map(|&(a, b)| (a - 1, b - 1)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn without_edge(&self, e: usize) -> OuterplanarGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        OuterplanarGraph { n: self.n, edges }
    }

    pub fn to_planar_graph(&self) -> PlanarGraph {
        PlanarGraph::with_rotation(self.n, self.edges.clone(), spine_rotation(self.n, &self.edges))
            .expect("spine rotation lists every edge once")
    }
}

/// Rotation of the drawing with vertices counter-clockwise on a circle in
/// index order and edges as straight chords.
pub fn spine_rotation(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut rot: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        rot[u].push(((v + n - u) % n, e));
        rot[v].push(((u + n - v) % n, e));
    }
    rot.into_iter()
        .map(|mut r| {
            r.sort_unstable();
            r.into_iter().map(|(_, e)| e).collect()
        })
        .collect()
}

/// Drops every edge joining two labels of equal parity; no perfect
/// matching uses such an edge.
pub fn bipartize_outerplanar(g: &OuterplanarGraph) -> OuterplanarGraph {
    OuterplanarGraph { n: g.n, edges: g.edges.iter().copied().filter(|&(u, v)| (u + v) % 2 == 1).collect() }
}

/// Number of perfect matchings mod 2, as the determinant of the adjacency
/// matrix over the two-element field.
pub fn pm_parity(g: &OuterplanarGraph) -> u8 {
    let mut a: Gf2Matrix = Matrix::zeros(g.n);
    for &(u, v) in &g.edges {
        a[(u, v)] = Gf2(true);
        a[(v, u)] = Gf2(true);
    }
    bareiss_determinant(&a).as_u8()
}

/// The same parity through spanning trees: joining a new vertex to every
/// odd-degree vertex makes all degrees even, so the Laplacian with the new
/// vertex deleted is the adjacency matrix mod 2, and its determinant counts
/// spanning trees of the enlarged graph.
pub fn pm_parity_via_spanning_trees(g: &OuterplanarGraph) -> u8 {
    let mut degree = vec![0i64; g.n];
    for &(u, v) in &g.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut lap: IntMatrix = Matrix::zeros(g.n);
    for v in 0..g.n {
        let apex = degree[v] % 2;
        lap[(v, v)] = BigInt::from(degree[v] + apex);
    }
    for &(u, v) in &g.edges {
        lap[(u, v)] = -BigInt::one();
        lap[(v, u)] = -BigInt::one();
    }
    let trees = bareiss_determinant(&lap);
    u8::from(!trees.is_even())
}

/// Edge `e` is kept iff `g - e` has an even number of perfect matchings.
/// When `g` has exactly one perfect matching, this is it.
pub fn construct_pm_if_unique(g: &OuterplanarGraph) -> Vec<usize> {
    (0..g.edges.len()).into_par_iter().filter(|&e| pm_parity(&g.without_edge(e)) == 0).collect()
}

/// Whether `g` has exactly one perfect matching.
pub fn upm_outerplanar(g: &OuterplanarGraph) -> bool {
    let h = bipartize_outerplanar(g);
    let candidate = construct_pm_if_unique(&h);
    let Ok(m) = Matching::new(h.n, &h.edges, candidate) else {
        return false;
    };
    if !m.is_perfect() {
        return false;
    }
    let mut mate = vec![0; h.n];
    for (u, v) in m.pairs(&h.edges) {
        mate[u] = v;
        mate[v] = u;
    }
    // u -> w when u's matching edge is followed by a non-matching edge to w
    let mut aux = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..h.n).map(|_| aux.add_node(())).collect();
    for (e, &(x, y)) in h.edges.iter().enumerate() {
        if m.contains(e) {
            continue;
        }
        aux.add_edge(nodes[mate[x]], nodes[y], ());
        aux.add_edge(nodes[mate[y]], nodes[x], ());
    }
    !is_cyclic_directed(&aux)
}
