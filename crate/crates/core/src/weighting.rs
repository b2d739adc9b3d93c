//! Edge weightings and matchings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer weight per edge id plus a global offset.
///
/// The offset carries constant shifts introduced when a weighting is moved
/// between a graph and a derived graph: for every perfect matching `M`,
/// the derived graph's weight of the image of `M` is `weight(M) + offset`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeighting {
    pub weights: Vec<i64>,
    pub offset: i64,
}

impl EdgeWeighting {
    pub fn zeros(edges: usize) -> Self {
        EdgeWeighting { weights: vec![0; edges], offset: 0 }
    }

    pub fn new(weights: Vec<i64>) -> Self {
        EdgeWeighting { weights, offset: 0 }
    }

    pub fn weight(&self, e: usize) -> i64 {
        self.weights[e]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn max_abs(&self) -> i64 {
        self.weights.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    /// Sum of the weights of `edges`, offset excluded.
    pub fn total<'a>(&self, edges: impl IntoIterator<Item = &'a usize>) -> i64 {
        edges.into_iter().map(|&e| self.weights[e]).sum()
    }

    /// Weights of the listed edge ids, in order.
    pub fn select(&self, edge_ids: &[usize]) -> EdgeWeighting {
        EdgeWeighting { weights: edge_ids.iter().map(|&e| self.weights[e]).collect(), offset: 0 }
    }

    /// Drops edge `e`, matching `PlanarGraph::without_edge`.
    pub fn without_edge(&self, e: usize) -> EdgeWeighting {
        let mut weights = self.weights.clone();
        weights.remove(e);
        EdgeWeighting { weights, offset: self.offset }
    }
}

/// A set of vertex-disjoint edges of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    edges: Vec<usize>,
    perfect: bool,
}

impl Matching {
    /// Validates disjointness against the graph's edge list; `perfect` is
    /// derived from coverage of all `n` vertices.
    pub fn new(n: usize, graph_edges: &[(usize, usize)], mut chosen: Vec<usize>) -> Result<Matching> {
        chosen.sort_unstable();
        chosen.dedup();
        let mut covered = vec![false; n];
        for &e in &chosen {
            let &(u, v) =
                graph_edges.get(e).ok_or_else(|| Error::InvalidInput(format!("matching uses unknown edge {e}")))?;
            if covered[u] || covered[v] {
                return Err(Error::InvalidInput(format!("edge {e} shares an endpoint with another matched edge")));
            }
            covered[u] = true;
            covered[v] = true;
        }
        let perfect = covered.iter().all(|&c| c);
        Ok(Matching { edges: chosen, perfect })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn is_perfect(&self) -> bool {
        self.perfect
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Endpoint pairs of the matched edges, in edge-id order.
    pub fn pairs(&self, graph_edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&e| graph_edges[e]).collect()
    }
}
