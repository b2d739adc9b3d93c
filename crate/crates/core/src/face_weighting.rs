//! Non-vanishing circulations on bipartite planar graphs without going
//! through a grid: make the graph Eulerian, two-colour faces and face
//! boundaries, then set weights along a dual spanning tree so that every
//! bounded face has circulation equal to its colour.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, FaceStructure, PlanarGraph};
use crate::weighting::EdgeWeighting;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(usize),
    /// Edge `position` (0, 1, 2) of a 3-path added beside original edge
    /// `parallel_to`, counted from that edge's first endpoint.
    Spurious {
        parallel_to: usize,
        position: usize,
    },
    /// Edge `position` of the 3-path that replaces original edge `edge`.
    Subdivision {
        edge: usize,
        position: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub graph: PlanarGraph,
    pub bipartition: Bipartition,
    pub origin: Vec<EdgeOrigin>,
    pub faces: FaceStructure,
    pub original_vertices: usize,
    pub original_edges: usize,
    /// Original edge ids lying on no cycle.
    pub original_bridges: BTreeSet<usize>,
}

impl AugmentedGraph {
    pub fn spurious_paths(&self) -> usize {
        self.origin.iter().filter(|o| matches!(o, EdgeOrigin::Spurious { position: 0, .. })).count()
    }
}

/// Adds spurious 3-paths until every degree is even.
///
/// Faces are handled from the leaves of a breadth-first dual tree toward
/// the outer face. Inside a face, the boundary is walked from the endpoint
/// reached by its parent edge; every vertex found with odd degree gets a
/// path beside the next boundary edge, which hands the oddness on. What is
/// left ends at the parent edge and is passed to the parent face.
pub fn eulerianize(g: &PlanarGraph, b: &Bipartition) -> Result<AugmentedGraph> {
    if g.edges().iter().any(|&(u, v)| b.class(u) == b.class(v)) {
        return Err(Error::NotBipartite);
    }
    let faces = g.compute_faces()?;
    let (parent, order) = faces.dual_bfs_tree();
    let mut n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let mut rotation = g.rotations().to_vec();
    let mut class = b.class_of.clone();
    let mut origin: Vec<EdgeOrigin> = (0..edges.len()).map(EdgeOrigin::Original).collect();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let budget = 2 * g.edge_count() + 1;
    let mut added = 0;

    for &f in order.iter().rev() {
        let walk = &faces.faces[f];
        if walk.is_empty() {
            continue;
        }
        let len = walk.len();
        let (start, steps) = match parent[f] {
            Some((_, pe)) => {
                let x = walk.iter().position(|d| d.edge() == pe).expect("parent edge on the face");
                (x + 1, len - 1)
            }
            None => (0, len),
        };
        for k in 0..steps {
            let d = walk[(start + k) % len];
            let (u, v, e) = (g.tail(d), g.head(d), d.edge());
            if degree[u].is_multiple_of(2) {
                continue;
            }
            added += 1;
            if added > budget {
                return Err(Error::Internal("oddness pushing exceeded its work bound".into()));
            }
            // u - a - b - v inside the face on the left of u -> v
            let (a, bb) = (n, n + 1);
            n += 2;
            class.push(class[v]);
            class.push(class[u]);
            let (e1, e2, e3) = (edges.len(), edges.len() + 1, edges.len() + 2);
            let forward = g.endpoints(e).0 == u;
            edges.extend([(u, a), (a, bb), (bb, v)]);
            for k in 0..3 {
                let position = if forward { k } else { 2 - k };
                origin.push(EdgeOrigin::Spurious { parallel_to: e, position });
            }
            let pu = rotation[u].iter().position(|&x| x == e).expect("edge at its endpoint");
            rotation[u].insert(pu + 1, e1);
            let pv = rotation[v].iter().position(|&x| x == e).expect("edge at its endpoint");
            rotation[v].insert(pv, e3);
            rotation.push(vec![e1, e2]);
            rotation.push(vec![e2, e3]);
            degree[u] += 1;
            degree[v] += 1;
            degree.push(2);
            degree.push(2);
        }
    }
    if let Some(v) = degree.iter().position(|d| d % 2 == 1) {
        return Err(Error::Internal(format!("vertex {v} still has odd degree")));
    }
    let graph = PlanarGraph::with_rotation(n, edges, rotation)?;
    graph.check_euler().map_err(|e| Error::Internal(format!("augmentation broke planarity: {e}")))?;
    let faces = graph.compute_faces()?;
    Ok(AugmentedGraph {
        graph,
        bipartition: Bipartition { class_of: class },
        origin,
        faces,
        original_vertices: g.vertex_count(),
        original_edges: g.edge_count(),
        original_bridges: g.bridges(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    /// Sign of every face of the augmented graph (the outer face included, as +1).
    pub face_sign: Vec<i64>,
    pub edge_sign: Vec<i64>,
}

/// Two-colours the dual, and the graph on edges where two edges are
/// adjacent when they follow each other along some face.
pub fn assign_signs(a: &AugmentedGraph) -> Result<SignAssignment> {
    let faces = &a.faces;
    let dual = faces.dual_adjacency();
    let mut face_sign = vec![0i64; faces.face_count()];
    face_sign[faces.outer] = 1;
    let mut queue = VecDeque::from([faces.outer]);
    while let Some(f) = queue.pop_front() {
        for &(h, _) in &dual[f] {
            if face_sign[h] == 0 {
                face_sign[h] = -face_sign[f];
                queue.push_back(h);
            } else if face_sign[h] == face_sign[f] {
                return Err(Error::Internal("dual of the augmented graph is not bipartite".into()));
            }
        }
    }
    if faces.dual_edges().len() < a.graph.edge_count() {
        return Err(Error::Internal("augmented graph has a bridge".into()));
    }

    let m = a.graph.edge_count();
    let mut aux = vec![Vec::new(); m];
    for walk in &faces.faces {
        for k in 0..walk.len() {
            let (x, y) = (walk[k].edge(), walk[(k + 1) % walk.len()].edge());
            aux[x].push(y);
            aux[y].push(x);
        }
    }
    let mut edge_sign = vec![0i64; m];
    for s in 0..m {
        if edge_sign[s] != 0 {
            continue;
        }
        edge_sign[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &aux[x] {
                if edge_sign[y] == 0 {
                    edge_sign[y] = -edge_sign[x];
                    queue.push_back(y);
                } else if edge_sign[y] == edge_sign[x] {
                    return Err(Error::AuxiliaryNotBipartite);
                }
            }
        }
    }
    Ok(SignAssignment { face_sign, edge_sign })
}

/// `sum of edge_sign(e) w(e)` around face `f`.
pub fn face_circulation(a: &AugmentedGraph, s: &SignAssignment, w: &EdgeWeighting, f: usize) -> i64 {
    a.faces.faces[f].iter().map(|d| s.edge_sign[d.edge()] * w.weight(d.edge())).sum()
}

/// Weights along the breadth-first dual tree: the edge through which a face
/// is left gets the value making that face's circulation its sign; every
/// other edge is 0. Faces are settled from the leaves up.
pub fn assign_face_weights(a: &AugmentedGraph, s: &SignAssignment) -> EdgeWeighting {
    let (parent, order) = a.faces.dual_bfs_tree();
    let mut w = EdgeWeighting::zeros(a.graph.edge_count());
    for &f in order.iter().skip(1).rev() {
        let (_, pe) = parent[f].expect("non-root face has a parent");
        let rest: i64 = a.faces.faces[f]
            .iter()
            .filter(|d| d.edge() != pe)
            .map(|d| s.edge_sign[d.edge()] * w.weight(d.edge()))
            .sum();
        w.weights[pe] = s.edge_sign[pe] * (s.face_sign[f] - rest);
    }
    w
}

/// Back to the original edges: spurious edges are dropped, subdivided
/// edges collapse to their alternating sum (the middle weight goes to the
/// offset), bridges get 0.
pub fn restrict_weighting(w: &EdgeWeighting, a: &AugmentedGraph) -> EdgeWeighting {
    let mut out = EdgeWeighting::zeros(a.original_edges);
    out.offset = w.offset;
    for (e, o) in a.origin.iter().enumerate() {
        match *o {
            EdgeOrigin::Original(k) => out.weights[k] = w.weight(e),
            EdgeOrigin::Subdivision { edge, position } => {
                if position == 1 {
                    out.weights[edge] -= w.weight(e);
                    out.offset += w.weight(e);
                } else {
                    out.weights[edge] += w.weight(e);
                }
            }
            EdgeOrigin::Spurious { .. } => {}
        }
    }
    for &e in &a.original_bridges {
        out.weights[e] = 0;
    }
    out
}

/// The whole direct method on a connected bipartite graph.
pub fn direct_weighting(g: &PlanarGraph, b: &Bipartition) -> Result<EdgeWeighting> {
    let a = eulerianize(g, b)?;
    let s = assign_signs(&a)?;
    Ok(restrict_weighting(&assign_face_weights(&a, &s), &a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_planar_graph, compute_bipartition};
    use crate::grid::GridGraph;
    use crate::oracle;

    fn augment(n: usize, edges: &[(usize, usize)]) -> (PlanarGraph, AugmentedGraph) {
        let g = build_planar_graph(n, edges, None).unwrap();
        let b = compute_bipartition(&g).unwrap();
        let a = eulerianize(&g, &b).unwrap();
        (g, a)
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    fn assert_eulerian_bipartite(a: &AugmentedGraph) {
        let g = &a.graph;
        assert!((0..g.vertex_count()).all(|v| g.degree(v).is_multiple_of(2)));
        assert!(g.edges().iter().all(|&(u, v)| a.bipartition.class(u) != a.bipartition.class(v)));
        compute_bipartition(g).unwrap();
    }

    #[test]
    fn four_cycle_is_left_alone() {
        let (_, a) = augment(4, &cycle(4));
        assert_eq!(a.spurious_paths(), 0);
        let s = assign_signs(&a).unwrap();
        assert_eq!(s.face_sign[0], -s.face_sign[1]);
        let walk = &a.faces.faces[1 - a.faces.outer];
        for k in 0..4 {
            assert_eq!(s.edge_sign[walk[k].edge()], -s.edge_sign[walk[(k + 1) % 4].edge()]);
        }
        let w = assign_face_weights(&a, &s);
        for f in a.faces.bounded_faces() {
            assert_eq!(face_circulation(&a, &s, &w, f), s.face_sign[f]);
        }
        assert_eq!(w.weights.iter().filter(|&&x| x != 0).count(), 1);
        assert_eq!(restrict_weighting(&w, &a), w);
    }

    #[test]
    fn path_becomes_eulerian() {
        let (_, a) = augment(3, &[(0, 1), (1, 2)]);
        assert_eulerian_bipartite(&a);
        assert!(a.spurious_paths() > 0);
        assert!(a.origin.iter().all(|o| !matches!(o, EdgeOrigin::Subdivision { .. })));
    }

    #[test]
    fn pushed_oddness_lands_beside_an_edge_as_a_three_path() {
        // a single edge: the only fix is a path parallel to it
        let (_, a) = augment(2, &[(0, 1)]);
        assert_eq!(a.spurious_paths(), 1);
        let spur: Vec<_> = a.origin.iter().filter(|o| matches!(o, EdgeOrigin::Spurious { .. })).collect();
        assert_eq!(spur.len(), 3);
        assert!(spur.iter().all(|o| matches!(o, EdgeOrigin::Spurious { parallel_to: 0, .. })));
        assert_eulerian_bipartite(&a);
    }

    #[test]
    fn rectangle_faces_get_their_signs() {
        let g = GridGraph::full(3, 2).to_planar_graph();
        let b = compute_bipartition(&g).unwrap();
        let a = eulerianize(&g, &b).unwrap();
        assert_eulerian_bipartite(&a);
        let s = assign_signs(&a).unwrap();
        let bounded: Vec<_> = a.faces.bounded_faces().collect();
        let w = assign_face_weights(&a, &s);
        for &f in &bounded {
            assert_eq!(face_circulation(&a, &s, &w, f), s.face_sign[f]);
        }
        if a.spurious_paths() == 0 {
            assert_eq!(s.face_sign[bounded[0]], -s.face_sign[bounded[1]]);
        }
    }

    fn check_nonvanishing(n: usize, edges: &[(usize, usize)]) {
        let (g, a) = augment(n, edges);
        assert_eulerian_bipartite(&a);
        let s = assign_signs(&a).unwrap();
        let wa = assign_face_weights(&a, &s);
        for f in a.faces.bounded_faces() {
            assert_eq!(face_circulation(&a, &s, &wa, f), s.face_sign[f]);
        }
        let w = restrict_weighting(&wa, &a);
        let report = oracle::verify_nonvanishing(n, g.edges(), &w, 16).unwrap();
        assert!(report.holds(), "{edges:?}: {:?}", report.violations);
    }

    #[test]
    fn nonvanishing_on_small_graphs() {
        check_nonvanishing(6, &cycle(6));
        check_nonvanishing(6, &[(0, 1), (0, 3), (0, 5), (2, 1), (2, 3), (4, 5), (4, 3)]);
        check_nonvanishing(
            9,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)],
        );
        // two squares joined by a bridge, plus a pendant edge
        check_nonvanishing(9, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 7), (7, 4), (7, 8)]);
    }

    #[test]
    fn restriction_collapses_subdivisions() {
        let sub =
            PlanarGraph::with_rotation(4, vec![(0, 2), (2, 3), (3, 1)], vec![vec![0], vec![2], vec![0, 1], vec![1, 2]])
                .unwrap();
        let a = AugmentedGraph {
            faces: sub.compute_faces().unwrap(),
            graph: sub,
            bipartition: Bipartition { class_of: vec![0, 1, 1, 0] },
            origin: (0..3).map(|position| EdgeOrigin::Subdivision { edge: 0, position }).collect(),
            original_vertices: 2,
            original_edges: 1,
            original_bridges: BTreeSet::new(),
        };
        let w = restrict_weighting(&EdgeWeighting::new(vec![4, 9, 2]), &a);
        assert_eq!(w, EdgeWeighting { weights: vec![4 - 9 + 2], offset: 9 });
    }

    #[test]
    fn non_tree_edges_carry_zero() {
        let g = GridGraph::full(3, 3).to_planar_graph();
        let b = compute_bipartition(&g).unwrap();
        let a = eulerianize(&g, &b).unwrap();
        let s = assign_signs(&a).unwrap();
        let w = assign_face_weights(&a, &s);
        let (parent, _) = a.faces.dual_bfs_tree();
        let tree: BTreeSet<usize> = parent.iter().flatten().map(|&(_, e)| e).collect();
        for e in 0..a.graph.edge_count() {
            if !tree.contains(&e) {
                assert_eq!(w.weight(e), 0);
            }
        }
    }
}
