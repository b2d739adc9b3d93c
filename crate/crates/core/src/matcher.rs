//! Isolating weightings, matching extraction by edge deletion, and the
//! decision and search problems built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{grid_embed, pull_back_weighting};
use crate::error::{Error, Result};
use crate::face_weighting::direct_weighting;
use crate::graph::{compute_bipartition, PlanarGraph};
use crate::grid::grid_weighting;
use crate::kasteleyn::{lowest_query, weighted_determinant};
use crate::weighting::{EdgeWeighting, Matching};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Embed into a grid, weight the grid, pull the weights back.
    #[default]
    Grid,
    /// Weight faces of an Eulerian augmentation directly.
    Direct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Grid => "grid",
            Method::Direct => "direct",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "grid" => Ok(Method::Grid),
            "direct" => Ok(Method::Direct),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

/// Weighting with nonzero circulation on every even cycle, built per
/// connected component. Offsets of the components add up.
pub fn isolating_weighting(g: &PlanarGraph, method: Method) -> Result<EdgeWeighting> {
    let mut out = EdgeWeighting::zeros(g.edge_count());
    for members in g.components() {
        let (sub, _, emap) = g.induced(&members);
        if sub.edge_count() == 0 {
            continue;
        }
        let b = compute_bipartition(&sub)?;
        let w = match method {
            Method::Grid => {
                let (grid, map) = grid_embed(&sub, &b)?;
                pull_back_weighting(&grid_weighting(&grid)?, &map)
            }
            Method::Direct => direct_weighting(&sub, &b)?,
        };
        for (e, &orig) in emap.iter().enumerate() {
            out.weights[orig] = w.weight(e);
        }
        out.offset += w.offset;
    }
    Ok(out)
}

/// One determinant evaluation made during extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    /// The deleted edge, `None` for the graph itself.
    pub deleted: Option<usize>,
    pub min_weight: Option<i64>,
    /// Coefficient found at the lowest exponent (0 when there is no matching).
    pub lowest_coefficient: BigInt,
}

fn probe(g: &PlanarGraph, w: &EdgeWeighting, deleted: Option<usize>) -> Result<Probe> {
    let det = if g.vertex_count() % 2 == 1 { crate::IntPoly::zero() } else { weighted_determinant(g, w)? };
    let lowest_coefficient = det.low_exponent().map(|k| det.coefficient(k)).unwrap_or_default();
    let min_weight = lowest_query(&det, g.vertex_count(), w)?;
    Ok(Probe { deleted, min_weight, lowest_coefficient })
}

/// The unique minimum-weight perfect matching under an isolating `w`.
pub fn extract_matching(g: &PlanarGraph, w: &EdgeWeighting) -> Result<Option<Matching>> {
    Ok(extract_matching_traced(g, w)?.0)
}

/// Like [`extract_matching`], also returning every probe made. Edge `e` is
/// kept when deleting it raises the minimum weight or removes all perfect
/// matchings; the probes run in parallel and are merged by edge id.
pub fn extract_matching_traced(g: &PlanarGraph, w: &EdgeWeighting) -> Result<(Option<Matching>, Vec<Probe>)> {
    let whole = probe(g, w, None)?;
    let Some(t) = whole.min_weight else {
        return Ok((None, vec![whole]));
    };
    let probes: Vec<Probe> = (0..g.edge_count())
        .into_par_iter()
        .map(|e| probe(&g.without_edge(e), &w.without_edge(e), Some(e)))
        .collect::<Result<_>>()?;
    let mut chosen = Vec::new();
    for p in &probes {
        let e = p.deleted.expect("edge probe");
        match p.min_weight {
            Some(s) if s < t => return Err(Error::Internal(format!("deleting edge {e} lowered the minimum weight"))),
            Some(s) if s == t => {}
            _ => chosen.push(e),
        }
    }
    let m = Matching::new(g.vertex_count(), g.edges(), chosen)?;
    if !m.is_perfect() || w.total(m.edges()) != t {
        return Err(Error::Internal("extracted edges are not a minimum-weight perfect matching".into()));
    }
    let mut all = vec![whole];
    all.extend(probes);
    Ok((Some(m), all))
}

/// Some perfect matching, or `None` when there is none.
pub fn find_perfect_matching(g: &PlanarGraph) -> Result<Option<Matching>> {
    find_perfect_matching_with(g, Method::Grid)
}

pub fn find_perfect_matching_with(g: &PlanarGraph, method: Method) -> Result<Option<Matching>> {
    let w = isolating_weighting(g, method)?;
    per_component(g, &w)
}

fn per_component(g: &PlanarGraph, w: &EdgeWeighting) -> Result<Option<Matching>> {
    let mut chosen = Vec::new();
    for members in g.components() {
        let (sub, _, emap) = g.induced(&members);
        let sub_w = w.select(&emap);
        match extract_matching(&sub, &sub_w)? {
            Some(m) => chosen.extend(m.edges().iter().map(|&e| emap[e])),
            None => return Ok(None),
        }
    }
    let m = Matching::new(g.vertex_count(), g.edges(), chosen)?;
    if !m.is_perfect() {
        return Err(Error::Internal("union of component matchings is not perfect".into()));
    }
    Ok(Some(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpmStatus {
    pub has_perfect_matching: bool,
    pub unique: bool,
}

/// Unique perfect matching test: build one matching `M` and check that no
/// `g - e` with `e` in `M` still has a perfect matching.
pub fn upm_status(g: &PlanarGraph, method: Method) -> Result<UpmStatus> {
    let Some(m) = find_perfect_matching_with(g, method)? else {
        return Ok(UpmStatus { has_perfect_matching: false, unique: false });
    };
    let mut unique = true;
    for &e in m.edges() {
        if find_perfect_matching_with(&g.without_edge(e), method)?.is_some() {
            unique = false;
            break;
        }
    }
    Ok(UpmStatus { has_perfect_matching: true, unique })
}

/// `false` also when there is no perfect matching; see [`upm_status`].
pub fn is_upm(g: &PlanarGraph) -> Result<bool> {
    Ok(upm_status(g, Method::Grid)?.unique)
}

/// Factor applied to the input weights so that the isolating perturbation
/// cannot reorder matchings of different input weight.
pub fn combination_scale(n: usize, w_iso: &EdgeWeighting) -> Result<i64> {
    let n = n as i64;
    let n4 = n.checked_pow(4).ok_or(Error::WeightOverflow)?;
    let needed = n.checked_mul(w_iso.max_abs()).and_then(|x| x.checked_add(1)).ok_or(Error::WeightOverflow)?;
    Ok(n4.max(needed))
}

/// `scale * w_in + w_iso`.
pub fn combined_weighting(g: &PlanarGraph, w_in: &EdgeWeighting, method: Method) -> Result<EdgeWeighting> {
    if w_in.len() != g.edge_count() {
        return Err(Error::InvalidInput(format!("{} weights for {} edges", w_in.len(), g.edge_count())));
    }
    let w_iso = isolating_weighting(g, method)?;
    let scale = combination_scale(g.vertex_count(), &w_iso)?;
    let bound = (g.vertex_count() as i64 / 2 + 1).checked_mul(scale).ok_or(Error::WeightOverflow)?;
    let weights = w_in
        .weights
        .iter()
        .zip(&w_iso.weights)
        .map(|(&a, &b)| {
            a.checked_mul(scale)
                .and_then(|x| x.checked_add(b))
                .filter(|x| x.checked_mul(bound).is_some())
                .ok_or(Error::WeightOverflow)
        })
        .collect::<Result<_>>()?;
    Ok(EdgeWeighting { weights, offset: w_iso.offset })
}

/// A perfect matching of minimum total input weight.
pub fn min_weight_perfect_matching(g: &PlanarGraph, w_in: &EdgeWeighting) -> Result<Option<Matching>> {
    min_weight_perfect_matching_with(g, w_in, Method::Grid)
}

pub fn min_weight_perfect_matching_with(
    g: &PlanarGraph,
    w_in: &EdgeWeighting,
    method: Method,
) -> Result<Option<Matching>> {
    let w = combined_weighting(g, w_in, method)?;
    per_component(g, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_planar_graph;
    use crate::grid::GridGraph;
    use crate::oracle;

    fn graph(n: usize, edges: &[(usize, usize)]) -> PlanarGraph {
        build_planar_graph(n, edges, None).unwrap()
    }

    fn cycle(n: usize) -> PlanarGraph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn minimisers(g: &PlanarGraph, w: &EdgeWeighting) -> Vec<Vec<usize>> {
        oracle::minimum_weight_matchings(g.vertex_count(), g.edges(), w, 20).unwrap()
    }

    #[test]
    fn isolation_examples() {
        for method in [Method::Grid, Method::Direct] {
            let c4 = cycle(4);
            let w = isolating_weighting(&c4, method).unwrap();
            let hist = oracle::weight_histogram(4, c4.edges(), &w, 20).unwrap();
            assert_eq!(hist.len(), 2, "{method}");
            assert_eq!(minimisers(&cycle(6), &isolating_weighting(&cycle(6), method).unwrap()).len(), 1);
            let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
            assert_eq!(minimisers(&p4, &isolating_weighting(&p4, method).unwrap()).len(), 1);
        }
    }

    #[test]
    fn extraction_examples() {
        let block = GridGraph::full(2, 2);
        let g = block.to_planar_graph();
        let w = grid_weighting(&block).unwrap();
        let m = extract_matching(&g, &w).unwrap().unwrap();
        assert!(m.edges().iter().all(|&e| block.kind(e) == crate::grid::EdgeKind::Horizontal));
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(extract_matching(&edge, &EdgeWeighting::new(vec![3])).unwrap().unwrap().edges(), &[0]);
        let c6 = cycle(6);
        let w = isolating_weighting(&c6, Method::Grid).unwrap();
        assert_eq!(extract_matching(&c6, &w).unwrap().unwrap().edges(), minimisers(&c6, &w)[0].as_slice());
    }

    #[test]
    fn search_examples() {
        let m = find_perfect_matching(&cycle(4)).unwrap().unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_perfect());
        assert_eq!(find_perfect_matching(&graph(3, &[(0, 1), (1, 2)])).unwrap(), None);
        let two = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(find_perfect_matching(&two).unwrap().unwrap().edges(), &[0, 1]);
        assert!(matches!(find_perfect_matching(&cycle(3)), Err(Error::OddCycle { .. })));
    }

    #[test]
    fn upm_examples() {
        assert!(is_upm(&graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap());
        assert!(!is_upm(&cycle(4)).unwrap());
        assert!(is_upm(&graph(2, &[(0, 1)])).unwrap());
        let none = upm_status(&graph(4, &[(0, 1), (0, 2), (0, 3)]), Method::Grid).unwrap();
        assert_eq!(none, UpmStatus { has_perfect_matching: false, unique: false });
    }

    #[test]
    fn min_weight_examples() {
        let c4 = cycle(4);
        let m = min_weight_perfect_matching(&c4, &EdgeWeighting::new(vec![1, 1, 1, 5])).unwrap().unwrap();
        assert_eq!(m.edges(), &[0, 2]);
        let ties = min_weight_perfect_matching(&c4, &EdgeWeighting::zeros(4)).unwrap().unwrap();
        assert_eq!(min_weight_perfect_matching(&c4, &EdgeWeighting::zeros(4)).unwrap().unwrap(), ties);
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(min_weight_perfect_matching(&edge, &EdgeWeighting::new(vec![7])).unwrap().unwrap().edges(), &[0]);
    }

    #[test]
    fn overflow_is_reported() {
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(
            min_weight_perfect_matching(&edge, &EdgeWeighting::new(vec![i64::MAX / 2])),
            Err(Error::WeightOverflow)
        );
    }

    #[test]
    fn method_names() {
        assert_eq!("direct".parse::<Method>().unwrap(), Method::Direct);
        assert_eq!(Method::Grid.to_string(), "grid");
        assert!("other".parse::<Method>().is_err());
    }
}
