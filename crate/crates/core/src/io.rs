//! Graph file schema.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_planar_graph, PlanarGraph};
use crate::outerplanar::{spine_rotation, OuterplanarGraph};
use crate::weighting::EdgeWeighting;

/// `{"n": int, "edges": [[u, v], ...], "rotation"?: [[edge, ...], ...],
/// "weights"?: [int, ...], "spine"?: bool}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<bool>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("graph file: {e}")))
    }

    pub fn from_graph(g: &PlanarGraph) -> GraphFile {
        GraphFile {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            rotation: Some(g.rotations().to_vec()),
            weights: None,
            spine: None,
        }
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&[u, v]| (u, v)).collect()
    }

    pub fn is_spine(&self) -> bool {
        self.spine.unwrap_or(false)
    }

    /// The embedded graph: the given rotation, else the spine drawing for
    /// spine files, else a computed embedding.
    pub fn planar_graph(&self) -> Result<PlanarGraph> {
        let edges = self.edge_pairs();
        let rotation = match (&self.rotation, self.is_spine()) {
            (Some(r), _) => Some(r.clone()),
            (None, true) => {
                self.outerplanar()?;
                Some(spine_rotation(self.n, &edges))
            }
            (None, false) => None,
        };
        build_planar_graph(self.n, &edges, rotation)
    }

    pub fn outerplanar(&self) -> Result<OuterplanarGraph> {
        OuterplanarGraph::new(self.n, self.edge_pairs())
    }

    pub fn weighting(&self) -> Result<Option<EdgeWeighting>> {
        match &self.weights {
            None => Ok(None),
            Some(w) if w.len() == self.edges.len() => Ok(Some(EdgeWeighting::new(w.clone()))),
            Some(w) => Err(Error::InvalidInput(format!("{} weights for {} edges", w.len(), self.edges.len()))),
        }
    }
}
