//! Embedded planar graphs: rotation systems, faces, duals, bipartitions.
//!
//! A rotation lists, for every vertex, its incident edge ids in cyclic
//! (counter-clockwise) order. Faces are traced with the face kept on the
//! left of every dart, so bounded faces come out counter-clockwise and the
//! outer face clockwise.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::planarity;

/// One direction of an edge: `2 * edge + side`, side 0 running from the
/// edge's first endpoint to its second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: usize, side: usize) -> Dart {
        Dart(2 * edge + side)
    }
    pub fn edge(self) -> usize {
        self.0 / 2
    }
    pub fn side(self) -> usize {
        self.0 % 2
    }
    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    // slot[e] = position of e in the rotation of (first endpoint, second endpoint)
    slot: Vec<[usize; 2]>,
}

/// Builds an embedded planar graph from an edge list.
///
/// With a rotation supplied it is validated (every vertex lists exactly its
/// incident edges, and Euler's formula holds per component); without one an
/// embedding is computed. Edges must be simple: no loops, no repeats.
pub fn build_planar_graph(
    n: usize,
    edges: &[(usize, usize)],
    rotation: Option<Vec<Vec<usize>>>,
) -> Result<PlanarGraph> {
    let mut seen = HashSet::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!("edge {i} = ({u}, {v}) has a vertex outside [0, {n})")));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("edge {i} is a self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidInput(format!("edge {i} = ({u}, {v}) is a parallel edge")));
        }
    }
    let rotation = match rotation {
        Some(r) => r,
        None => planarity::embed(n, edges)?,
    };
    let g = PlanarGraph::with_rotation(n, edges.to_vec(), rotation)?;
    g.check_euler()?;
    Ok(g)
}

impl PlanarGraph {
    /// Assembles a graph from an explicit rotation without checking
    /// planarity. Parallel edges are accepted here; loops are not.
    pub fn with_rotation(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<PlanarGraph> {
        if rotation.len() != n {
            return Err(Error::InvalidRotation(format!("{} rotation lists for {n} vertices", rotation.len())));
        }
        let mut slot = vec![[usize::MAX; 2]; edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (pos, &e) in rot.iter().enumerate() {
                let &(a, b) =
                    edges.get(e).ok_or_else(|| Error::InvalidRotation(format!("vertex {v} lists unknown edge {e}")))?;
                if a == b {
                    return Err(Error::InvalidInput(format!("edge {e} is a self-loop")));
                }
                let side = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return Err(Error::InvalidRotation(format!("vertex {v} lists edge {e} = ({a}, {b})")));
                };
                if slot[e][side] != usize::MAX {
                    return Err(Error::InvalidRotation(format!("vertex {v} lists edge {e} twice")));
                }
                slot[e][side] = pos;
            }
        }
        if let Some(e) = slot.iter().position(|s| s.contains(&usize::MAX)) {
            return Err(Error::InvalidRotation(format!("edge {e} is missing from a rotation list")));
        }
        Ok(PlanarGraph { n, edges, rotation, slot })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbour, edge id)` pairs in rotation order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rotation[v].iter().map(move |&e| (self.other_end(e, v), e))
    }

    pub fn tail(&self, d: Dart) -> usize {
        let (a, b) = self.edges[d.edge()];
        if d.side() == 0 {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.reverse())
    }

    /// The dart leaving `v` along `e`.
    pub fn dart_from(&self, v: usize, e: usize) -> Dart {
        Dart::new(e, if self.edges[e].0 == v { 0 } else { 1 })
    }

    /// Successor of `d` along the face on its left: at the head, take the
    /// edge preceding `d`'s edge in counter-clockwise order.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let v = self.head(d);
        let e = d.edge();
        let pos = self.slot[e][1 - d.side()];
        let rot = &self.rotation[v];
        let next = rot[(pos + rot.len() - 1) % rot.len()];
        self.dart_from(v, next)
    }

    /// Index of `e` in the rotation of its endpoint `v`.
    pub fn slot_of(&self, e: usize, v: usize) -> usize {
        let (a, _) = self.edges[e];
        self.slot[e][if a == v { 0 } else { 1 }]
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for (w, _) in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `vertices` (ascending), with the restricted rotation.
    /// Returns the subgraph plus the original ids of its vertices and edges.
    pub fn induced(&self, vertices: &[usize]) -> (PlanarGraph, Vec<usize>, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_map = Vec::new();
        let mut local_edge = vec![usize::MAX; self.edges.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if local[a] != usize::MAX && local[b] != usize::MAX {
                local_edge[e] = edge_map.len();
                edge_map.push(e);
            }
        }
        let edges = edge_map.iter().map(|&e| (local[self.edges[e].0], local[self.edges[e].1])).collect();
        let rotation = vertices
            .iter()
            .map(|&v| {
                self.rotation[v].iter().filter(|&&e| local_edge[e] != usize::MAX).map(|&e| local_edge[e]).collect()
            })
            .collect();
        let g = PlanarGraph::with_rotation(vertices.len(), edges, rotation).expect("restriction of a valid rotation");
        (g, vertices.to_vec(), edge_map)
    }

    /// The graph without edge `e`; later edge ids shift down by one.
    pub fn without_edge(&self, e: usize) -> PlanarGraph {
        let renum = |f: usize| if f > e { f - 1 } else { f };
        let edges = self.edges.iter().enumerate().filter(|&(f, _)| f != e).map(|(_, &p)| p).collect();
        let rotation =
            self.rotation.iter().map(|rot| rot.iter().filter(|&&f| f != e).map(|&f| renum(f)).collect()).collect();
        PlanarGraph::with_rotation(self.n, edges, rotation).expect("edge deletion keeps the rotation valid")
    }

    fn trace_faces(&self) -> (Vec<Vec<Dart>>, Vec<usize>) {
        let darts = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = Dart(start);
            while dart_face[d.0] == usize::MAX {
                dart_face[d.0] = id;
                walk.push(d);
                d = self.next_in_face(d);
            }
            faces.push(walk);
        }
        (faces, dart_face)
    }

    /// Euler's formula on every component.
    pub fn check_euler(&self) -> Result<()> {
        let (faces, _) = self.trace_faces();
        let comps = self.components();
        let mut comp_of = vec![0; self.n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        let mut edge_count = vec![0i64; comps.len()];
        for walk in &faces {
            face_count[comp_of[self.tail(walk[0])]] += 1;
        }
        for &(a, _) in &self.edges {
            edge_count[comp_of[a]] += 1;
        }
        for (c, members) in comps.iter().enumerate() {
            let f = if edge_count[c] == 0 { 1 } else { face_count[c] };
            let chi = members.len() as i64 - edge_count[c] + f;
            if chi != 2 {
                return Err(Error::InvalidRotation(format!(
                    "component of vertex {} has V - E + F = {chi}",
                    members[0]
                )));
            }
        }
        Ok(())
    }

    /// Face walks of a connected embedded graph.
    ///
    /// Walks are listed in order of their smallest dart. The outer face is the
    /// longest walk; ties go to the walk containing the smallest edge id.
    pub fn compute_faces(&self) -> Result<FaceStructure> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let (faces, dart_face) = self.trace_faces();
        if faces.is_empty() {
            return Ok(FaceStructure { faces: vec![Vec::new()], dart_face, outer: 0 });
        }
        let outer = (0..faces.len())
            .min_by_key(|&f| {
                let min_edge = faces[f].iter().map(|d| d.edge()).min().unwrap_or(usize::MAX);
                (std::cmp::Reverse(faces[f].len()), min_edge)
            })
            .expect("at least one face");
        Ok(FaceStructure { faces, dart_face, outer })
    }

    /// Edges that lie on no cycle.
    pub fn bridges(&self) -> BTreeSet<usize> {
        let (_, dart_face) = self.trace_faces();
        // In a planar embedding an edge is a bridge iff one face lies on both sides.
        (0..self.edges.len()).filter(|&e| dart_face[2 * e] == dart_face[2 * e + 1]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStructure {
    /// Boundary walks; each dart has its face on the left.
    pub faces: Vec<Vec<Dart>>,
    /// Face containing each dart.
    pub dart_face: Vec<usize>,
    pub outer: usize,
}

impl FaceStructure {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.0]
    }

    /// Faces on the two sides of `e`: (left of side-0 dart, left of side-1 dart).
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        (self.dart_face[2 * e], self.dart_face[2 * e + 1])
    }

    /// `(face, face, shared edge)` for every edge separating two distinct faces.
    pub fn dual_edges(&self) -> Vec<(usize, usize, usize)> {
        (0..self.dart_face.len() / 2)
            .filter_map(|e| {
                let (a, b) = self.edge_faces(e);
                (a != b).then_some((a, b, e))
            })
            .collect()
    }

    /// Dual adjacency lists `(neighbour face, edge)` sorted by neighbour then edge.
    pub fn dual_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for (a, b, e) in self.dual_edges() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    /// Vertices at the corners of a face, in walk order (tails of its darts).
    pub fn face_vertices(&self, g: &PlanarGraph, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| g.tail(d)).collect()
    }

    /// Breadth-first spanning tree of the dual from the outer face, visiting
    /// neighbours in face-id order. Returns `parent[f] = (parent face, edge)`.
    pub fn dual_bfs_tree(&self) -> (Vec<Option<(usize, usize)>>, Vec<usize>) {
        let adj = self.dual_adjacency();
        let mut parent = vec![None; self.faces.len()];
        let mut seen = vec![false; self.faces.len()];
        let mut order = vec![self.outer];
        seen[self.outer] = true;
        let mut i = 0;
        while i < order.len() {
            let f = order[i];
            i += 1;
            for &(h, e) in &adj[f] {
                if !seen[h] {
                    seen[h] = true;
                    parent[h] = Some((f, e));
                    order.push(h);
                }
            }
        }
        (parent, order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub class_of: Vec<u8>,
}

impl Bipartition {
    pub fn class(&self, v: usize) -> u8 {
        self.class_of[v]
    }
}

/// Two-colours every component, giving class 0 to its lowest vertex.
pub fn compute_bipartition(g: &PlanarGraph) -> Result<Bipartition> {
    let n = g.vertex_count();
    let mut class = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if class[s] != u8::MAX {
            continue;
        }
        class[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for (w, _) in g.neighbors(v) {
                if class[w] == u8::MAX {
                    class[w] = 1 - class[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if class[w] == class[v] {
                    return Err(Error::OddCycle { cycle: odd_cycle(v, w, &parent, &depth) });
                }
            }
        }
    }
    Ok(Bipartition { class_of: class })
}

// Closes the BFS-tree paths from `a` and `b` at their common ancestor.
fn odd_cycle(a: usize, b: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}
