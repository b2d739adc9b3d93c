//! Embedding bipartite planar graphs into grid graphs with the perfect
//! matchings in bijection, and moving matchings and weights back.
//!
//! The drawing is a visibility representation: every vertex becomes a
//! horizontal chain of grid points with an odd number of points, every edge
//! a vertical path of odd length between the chains of its endpoints. A
//! perfect matching of the grid image matches exactly one point of each
//! chain outside the chain (the rest of the chain is then forced), and each
//! path is either matched at both ends or covered internally.
//!
//! To get the drawing, a star vertex is added inside every face, which
//! makes the graph 2-connected. One star edge `(s, t)` on the outer face is
//! removed, the rest is oriented by an st-numbering, and every edge is put
//! in the column given by the longest-path distance of its left face in the
//! dual digraph.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Dart, PlanarGraph};
use crate::grid::{GridGraph, Point};
use crate::weighting::{EdgeWeighting, Matching};

/// Correspondence between a graph and its grid image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMap {
    /// Grid vertices of each original vertex's chain, left to right.
    pub chains: Vec<Vec<usize>>,
    /// Grid edges of each chain, left to right.
    pub chain_edges: Vec<Vec<usize>>,
    /// Grid edges of each original edge's path, from its first endpoint.
    pub edge_paths: Vec<Vec<usize>>,
    /// Chain index where each path attaches, at the first and second endpoint.
    pub attachments: Vec<[usize; 2]>,
    pub original_edges: Vec<(usize, usize)>,
}

impl EmbeddingMap {
    pub fn vertex_count(&self) -> usize {
        self.chains.len()
    }

    /// Grid point of each original vertex: the left end of its chain.
    pub fn vertex_placement(&self, grid: &GridGraph) -> Vec<Point> {
        self.chains.iter().map(|c| grid.point(c[0])).collect()
    }

    /// The grid perfect matching corresponding to `m`.
    pub fn image_of_matching(&self, grid: &GridGraph, m: &Matching) -> Result<Vec<usize>> {
        if !m.is_perfect() {
            return Err(Error::NotPerfect);
        }
        let mut out = Vec::new();
        let mut external = vec![usize::MAX; self.chains.len()];
        for (e, path) in self.edge_paths.iter().enumerate() {
            let start = if m.contains(e) { 0 } else { 1 };
            out.extend(path.iter().skip(start).step_by(2));
            if m.contains(e) {
                let (u, v) = self.original_edges[e];
                external[u] = self.attachments[e][0];
                external[v] = self.attachments[e][1];
            }
        }
        for (v, edges) in self.chain_edges.iter().enumerate() {
            if external[v] == usize::MAX {
                return Err(Error::NotPerfect);
            }
            out.extend(forced_chain_edges(edges, external[v]));
        }
        out.sort_unstable();
        let check = Matching::new(grid.vertex_count(), grid.edges(), out.clone())?;
        if !check.is_perfect() {
            return Err(Error::Internal("image of a perfect matching is not perfect".into()));
        }
        Ok(out)
    }

    pub fn report(&self, grid: &GridGraph) -> EmbeddingReport {
        let pt = |v: usize| {
            let (x, y) = grid.point(v);
            [x, y]
        };
        let path_points = |e: usize| {
            let (u, _) = self.original_edges[e];
            let mut at = self.chains[u][self.attachments[e][0]];
            let mut pts = vec![pt(at)];
            for &ge in &self.edge_paths[e] {
                let (a, b) = grid.edges()[ge];
                at = if a == at { b } else { a };
                pts.push(pt(at));
            }
            pts
        };
        EmbeddingReport {
            width: grid.width(),
            height: grid.height(),
            vertices: self
                .chains
                .iter()
                .enumerate()
                .map(|(v, c)| VertexPlacement { vertex: v, chain: c.iter().map(|&p| pt(p)).collect() })
                .collect(),
            edges: (0..self.edge_paths.len())
                .map(|e| EdgePlacement { edge: e, endpoints: self.original_edges[e], path: path_points(e) })
                .collect(),
        }
    }
}

/// JSON view of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub width: usize,
    pub height: usize,
    pub vertices: Vec<VertexPlacement>,
    pub edges: Vec<EdgePlacement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPlacement {
    pub vertex: usize,
    pub chain: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePlacement {
    pub edge: usize,
    pub endpoints: (usize, usize),
    pub path: Vec<[usize; 2]>,
}

// chain edges matched inside the chain when point `k` is matched outside it
fn forced_chain_edges(edges: &[usize], k: usize) -> impl Iterator<Item = usize> + '_ {
    (0..edges.len()).filter(move |&j| if j < k { j % 2 == 0 } else { j > k && (j - k) % 2 == 1 }).map(|j| edges[j])
}

/// Grid image of a connected bipartite planar graph.
pub fn grid_embed(g: &PlanarGraph, b: &Bipartition) -> Result<(GridGraph, EmbeddingMap)> {
    let n = g.vertex_count();
    for (u, v) in g.edges() {
        if b.class(*u) == b.class(*v) {
            return Err(Error::NotBipartite);
        }
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 0 {
        let grid = GridGraph::new(1, 1, Vec::new(), &[], None)?;
        let map = EmbeddingMap {
            chains: Vec::new(),
            chain_edges: Vec::new(),
            edge_paths: Vec::new(),
            attachments: Vec::new(),
            original_edges: Vec::new(),
        };
        return Ok((grid, map));
    }
    if n == 1 {
        let grid = GridGraph::new(1, 1, vec![(0, 0)], &[], None)?;
        let map = EmbeddingMap {
            chains: vec![vec![0]],
            chain_edges: vec![Vec::new()],
            edge_paths: Vec::new(),
            attachments: Vec::new(),
            original_edges: Vec::new(),
        };
        return Ok((grid, map));
    }
    let (column, height) = visibility(g)?;
    realize(g, b, &column, &height)
}

/// Column of every edge and height (st-number) of every vertex.
fn visibility(g: &PlanarGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let faces = g.compute_faces()?;

    // star vertex n + f inside face f, joined to each distinct corner vertex
    let mut edges = g.edges().to_vec();
    let mut gaps: Vec<Vec<Vec<usize>>> = g.rotations().iter().map(|r| vec![Vec::new(); r.len()]).collect();
    let mut star_rot = vec![Vec::new(); faces.face_count()];
    let mut face_order: Vec<usize> = faces.bounded_faces().collect();
    face_order.push(faces.outer);
    for &f in &face_order {
        let mut seen = HashSet::new();
        for &d in &faces.faces[f] {
            let v = g.tail(d);
            if seen.insert(v) {
                let e = edges.len();
                edges.push((v, n + f));
                gaps[v][g.slot_of(d.edge(), v)].push(e);
                star_rot[f].push(e);
            }
        }
    }
    let mut rotation: Vec<Vec<usize>> = g
        .rotations()
        .iter()
        .enumerate()
        .map(|(v, rot)| {
            let mut r = Vec::new();
            for (k, &e) in rot.iter().enumerate() {
                r.push(e);
                r.extend(&gaps[v][k]);
            }
            r
        })
        .collect();
    rotation.extend(star_rot);
    let total = n + faces.face_count();
    let st_edge = edges.len() - 1;
    let (t, s) = edges[st_edge];
    let full = PlanarGraph::with_rotation(total, edges, rotation)?;
    full.check_euler().map_err(|e| Error::Internal(format!("star augmentation: {e}")))?;

    let number = st_numbering(&full, s, t)?;
    let outer_dart = full.next_in_face(full.dart_from(s, st_edge));
    let cut = full.without_edge(st_edge);
    let cut_faces = cut.compute_faces()?;
    let outer = cut_faces.face_of(outer_dart);

    // dual digraph: left face -> right face of every upward edge, with the
    // outer face split into a source (left side) and a sink (right side)
    let fc = cut_faces.face_count();
    let (source, sink) = (outer, fc);
    let mut left = vec![0; cut.edge_count()];
    let mut arcs = vec![Vec::new(); fc + 1];
    #[allow(clippy::needless_range_loop)]
    for e in 0..cut.edge_count() {
        let (a, b) = cut.endpoints(e);
        let up = if number[a] < number[b] { Dart::new(e, 0) } else { Dart::new(e, 1) };
        let l = cut_faces.face_of(up);
        let r = cut_faces.face_of(up.reverse());
        let l = if l == outer { source } else { l };
        let r = if r == outer { sink } else { r };
        left[e] = l;
        arcs[l].push(r);
    }
    let mut indeg = vec![0usize; fc + 1];
    for list in &arcs {
        for &h in list {
            indeg[h] += 1;
        }
    }
    let mut dist = vec![0usize; fc + 1];
    let mut queue: VecDeque<usize> = (0..=fc).filter(|&f| indeg[f] == 0).collect();
    let mut done = 0;
    while let Some(f) = queue.pop_front() {
        done += 1;
        for &h in &arcs[f] {
            dist[h] = dist[h].max(dist[f] + 1);
            indeg[h] -= 1;
            if indeg[h] == 0 {
                queue.push_back(h);
            }
        }
    }
    if done != fc + 1 {
        return Err(Error::Internal("dual of the st-orientation has a cycle".into()));
    }
    let column = (0..m).map(|e| dist[left[e]]).collect();
    let height = (0..n).map(|v| number[v]).collect();
    Ok((column, height))
}

/// st-numbering of a 2-connected graph containing the edge `(s, t)`.
fn st_numbering(g: &PlanarGraph, s: usize, t: usize) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a: Vec<usize> = g.neighbors(v).map(|(w, _)| w).collect();
            if v == s {
                a.sort_unstable_by_key(|&w| (w != t, w));
            }
            a
        })
        .collect();
    const NONE: usize = usize::MAX;
    let mut pre = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut low: Vec<usize> = (0..n).collect();
    let mut order = vec![s];
    pre[s] = 0;
    let mut stack = vec![(s, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i < adj[v].len() {
            top.1 += 1;
            let w = adj[v][i];
            if pre[w] == NONE {
                pre[w] = order.len();
                order.push(w);
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && pre[w] < pre[low[v]] {
                low[v] = w;
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p != NONE && pre[low[v]] < pre[low[p]] {
                low[p] = low[v];
            }
        }
    }
    if order.len() != n || order.get(1) != Some(&t) {
        return Err(Error::Internal("st-numbering search did not start along (s, t)".into()));
    }
    // doubly linked list, starting as s, t
    let mut next = vec![NONE; n];
    let mut prev = vec![NONE; n];
    next[s] = t;
    prev[t] = s;
    let mut minus = vec![false; n];
    minus[s] = true;
    for &v in &order[2..] {
        let p = parent[v];
        if minus[low[v]] {
            let q = prev[p];
            next[q] = v;
            prev[v] = q;
            next[v] = p;
            prev[p] = v;
            minus[p] = false;
        } else {
            let q = next[p];
            next[p] = v;
            prev[v] = p;
            next[v] = q;
            if q != NONE {
                prev[q] = v;
            }
            minus[p] = true;
        }
    }
    let mut number = vec![NONE; n];
    let mut at = s;
    let mut k = 0;
    while at != NONE {
        number[at] = k;
        k += 1;
        at = next[at];
    }
    for v in 0..n {
        let (mut lower, mut higher) = (false, false);
        for &w in &adj[v] {
            lower |= number[w] < number[v];
            higher |= number[w] > number[v];
        }
        if number[v] == NONE || (v != s && !lower) || (v != t && !higher) {
            return Err(Error::Internal(format!("vertex {v} breaks the st-numbering")));
        }
    }
    Ok(number)
}

fn rank_map(values: impl Iterator<Item = usize>) -> HashMap<usize, usize> {
    let sorted: std::collections::BTreeSet<usize> = values.collect();
    sorted.into_iter().enumerate().map(|(r, v)| (v, r)).collect()
}

fn realize(g: &PlanarGraph, b: &Bipartition, column: &[usize], height: &[usize]) -> Result<(GridGraph, EmbeddingMap)> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let col_rank = rank_map(column.iter().copied());
    let row_rank = rank_map(height.iter().copied());
    let col = |e: usize| 2 * col_rank[&column[e]];
    let row = |v: usize| 2 * row_rank[&height[v]] + b.class(v) as usize;

    let width = 2 * col_rank.len() - 1;
    let grid_height = 2 * row_rank.len();
    let mut points: Vec<Point> = Vec::new();
    let mut at: HashMap<Point, usize> = HashMap::new();
    let mut place = |p: Point, points: &mut Vec<Point>| -> Result<usize> {
        if at.contains_key(&p) {
            return Err(Error::Internal(format!("grid point {p:?} used twice")));
        }
        at.insert(p, points.len());
        points.push(p);
        Ok(points.len() - 1)
    };
    let mut span = vec![(usize::MAX, 0usize); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for x in [u, v] {
            span[x].0 = span[x].0.min(col(e));
            span[x].1 = span[x].1.max(col(e));
        }
    }
    let mut segments: Vec<(Point, Point)> = Vec::new();
    let mut chains = Vec::with_capacity(n);
    let mut chain_segments = Vec::with_capacity(n);
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        let (lo, hi) = span[v];
        let r = row(v);
        let mut chain = Vec::new();
        let mut segs = Vec::new();
        for x in lo..=hi {
            chain.push(place((x, r), &mut points)?);
            if x > lo {
                segs.push(segments.len());
                segments.push(((x - 1, r), (x, r)));
            }
        }
        chains.push(chain);
        chain_segments.push(segs);
    }
    let mut path_segments = Vec::with_capacity(m);
    let mut attachments = Vec::with_capacity(m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let x = col(e);
        let (ru, rv) = (row(u), row(v));
        let step = |r: usize| if ru < rv { r + 1 } else { r - 1 };
        let mut segs = Vec::new();
        let mut r = ru;
        while r != rv {
            let nr = step(r);
            if nr != rv {
                place((x, nr), &mut points)?;
            }
            segs.push(segments.len());
            segments.push(((x, r), (x, nr)));
            r = nr;
        }
        if segs.len() % 2 == 0 {
            return Err(Error::Internal(format!("path of edge {e} has even length")));
        }
        path_segments.push(segs);
        attachments.push([x - span[u].0, x - span[v].0]);
    }
    let grid = GridGraph::new(width, grid_height, points, &segments, None)?;
    let map = EmbeddingMap {
        chains,
        chain_edges: chain_segments,
        edge_paths: path_segments,
        attachments,
        original_edges: g.edges().to_vec(),
    };
    Ok((grid, map))
}

/// The original perfect matching behind a grid perfect matching.
pub fn pull_back_matching(grid: &GridGraph, m_grid: &Matching, map: &EmbeddingMap) -> Result<Matching> {
    if !m_grid.is_perfect() || m_grid.edges().iter().any(|&e| e >= grid.edge_count()) {
        return Err(Error::NotPerfect);
    }
    let mut chosen = Vec::new();
    for (e, path) in map.edge_paths.iter().enumerate() {
        let odd = path.iter().step_by(2).all(|&p| m_grid.contains(p));
        let even_clear = path.iter().skip(1).step_by(2).all(|&p| !m_grid.contains(p));
        let even = path.iter().skip(1).step_by(2).all(|&p| m_grid.contains(p));
        let odd_clear = path.iter().step_by(2).all(|&p| !m_grid.contains(p));
        match (odd && even_clear, even && odd_clear) {
            (true, _) => chosen.push(e),
            (false, true) => {}
            _ => return Err(Error::InconsistentPath(e)),
        }
    }
    let m = Matching::new(map.vertex_count(), &map.original_edges, chosen).map_err(|_| Error::NotPerfect)?;
    if !m.is_perfect() {
        return Err(Error::NotPerfect);
    }
    Ok(m)
}

/// Weights on the original graph with
/// `w_grid(image(M)) = w(M) + offset` for every perfect matching `M`.
///
/// An edge gets the alternating sum along its path plus, at each endpoint,
/// the weight of the chain edges forced when the chain is left at that
/// path's attachment point. The offset collects the weights of the
/// internally matched path edges of all paths.
pub fn pull_back_weighting(w_grid: &EdgeWeighting, map: &EmbeddingMap) -> EdgeWeighting {
    let chain_cost =
        |v: usize, k: usize| -> i64 { forced_chain_edges(&map.chain_edges[v], k).map(|e| w_grid.weight(e)).sum() };
    let mut offset = w_grid.offset;
    let mut weights = Vec::with_capacity(map.edge_paths.len());
    for (e, path) in map.edge_paths.iter().enumerate() {
        let mut alt = 0;
        for (k, &p) in path.iter().enumerate() {
            if k % 2 == 0 {
                alt += w_grid.weight(p);
            } else {
                alt -= w_grid.weight(p);
                offset += w_grid.weight(p);
            }
        }
        let (u, v) = map.original_edges[e];
        weights.push(alt + chain_cost(u, map.attachments[e][0]) + chain_cost(v, map.attachments[e][1]));
    }
    EdgeWeighting { weights, offset }
}

/// Sizes of the grid image, for reporting.
pub fn image_stats(grid: &GridGraph) -> BTreeMap<&'static str, usize> {
    BTreeMap::from([
        ("width", grid.width()),
        ("height", grid.height()),
        ("vertices", grid.vertex_count()),
        ("edges", grid.edge_count()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_planar_graph, compute_bipartition};
    use crate::grid::grid_weighting;
    use crate::oracle;

    fn embed(n: usize, edges: &[(usize, usize)]) -> (PlanarGraph, GridGraph, EmbeddingMap) {
        let g = build_planar_graph(n, edges, None).unwrap();
        let b = compute_bipartition(&g).unwrap();
        let (grid, map) = grid_embed(&g, &b).unwrap();
        (g, grid, map)
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    fn check_bijection(n: usize, edges: &[(usize, usize)]) {
        let (g, grid, map) = embed(n, edges);
        let orig = oracle::enumerate_perfect_matchings(n, g.edges(), 20).unwrap();
        let image = if grid.vertex_count() <= 63 {
            oracle::count_perfect_matchings_memo(grid.vertex_count(), grid.edges(), 63).unwrap()
        } else {
            crate::kasteleyn::count_perfect_matchings(&grid.to_planar_graph()).unwrap().try_into().unwrap()
        };
        assert_eq!(orig.len() as u128, image, "{edges:?}");
        let w = grid_weighting(&grid).unwrap();
        let pulled = pull_back_weighting(&w, &map);
        for m in orig {
            let m = Matching::new(n, g.edges(), m).unwrap();
            let img = map.image_of_matching(&grid, &m).unwrap();
            assert_eq!(w.total(&img), pulled.total(m.edges()) + pulled.offset);
            let img = Matching::new(grid.vertex_count(), grid.edges(), img).unwrap();
            assert_eq!(pull_back_matching(&grid, &img, &map).unwrap(), m);
        }
    }

    #[test]
    fn small_cycles() {
        check_bijection(4, &cycle(4));
        check_bijection(6, &cycle(6));
        let (_, grid, map) = embed(4, &cycle(4));
        assert!(map.edge_paths.iter().all(|p| p.len() % 2 == 1));
        assert!(grid.width() <= 16 && grid.height() <= 16);
    }

    #[test]
    fn assorted_bipartite_graphs() {
        check_bijection(2, &[(0, 1)]);
        check_bijection(4, &[(0, 1), (1, 2), (2, 3)]);
        check_bijection(6, &[(0, 1), (0, 3), (0, 5), (2, 1), (2, 3), (4, 5), (4, 3)]);
        // 3 x 3 grid plus a pendant pair and a high-degree vertex
        let mut e = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                let v = 3 * j + i;
                if i < 2 {
                    e.push((v, v + 1));
                }
                if j < 2 {
                    e.push((v, v + 3));
                }
            }
        }
        e.push((8, 9));
        check_bijection(10, &e);
        let star: Vec<_> = (1..6).map(|i| (0, i)).chain([(1, 6), (3, 7), (5, 7), (2, 6), (4, 6)]).collect();
        check_bijection(8, &star);
    }

    #[test]
    fn triangle_is_rejected() {
        let g = build_planar_graph(3, &cycle(3), None).unwrap();
        let b = Bipartition { class_of: vec![0, 1, 0] };
        assert_eq!(grid_embed(&g, &b).unwrap_err(), Error::NotBipartite);
    }

    #[test]
    fn path_patterns() {
        // one path of length 3: both end edges matched, or only the middle
        let (g, grid, map) = embed(4, &[(0, 1), (1, 2), (2, 3)]);
        let ms = oracle::enumerate_perfect_matchings(grid.vertex_count(), grid.edges(), 63).unwrap();
        assert_eq!(ms.len(), 1);
        let m = Matching::new(grid.vertex_count(), grid.edges(), ms[0].clone()).unwrap();
        let back = pull_back_matching(&grid, &m, &map).unwrap();
        assert_eq!(back.pairs(g.edges()), vec![(0, 1), (2, 3)]);
        let partial = Matching::new(grid.vertex_count(), grid.edges(), vec![ms[0][0]]).unwrap();
        assert_eq!(pull_back_matching(&grid, &partial, &map), Err(Error::NotPerfect));
    }

    #[test]
    fn weighting_transport_examples() {
        let map = EmbeddingMap {
            chains: vec![vec![0], vec![3]],
            chain_edges: vec![vec![], vec![]],
            edge_paths: vec![vec![0, 1, 2]],
            attachments: vec![[0, 0]],
            original_edges: vec![(0, 1)],
        };
        let w = pull_back_weighting(&EdgeWeighting::new(vec![5, 7, 11]), &map);
        assert_eq!(w, EdgeWeighting { weights: vec![5 - 7 + 11], offset: 7 });
        let single = EmbeddingMap { edge_paths: vec![vec![0]], ..map };
        assert_eq!(pull_back_weighting(&EdgeWeighting::new(vec![4]), &single), EdgeWeighting::new(vec![4]));
    }

    #[test]
    fn determinism() {
        let a = embed(6, &cycle(6));
        let b = embed(6, &cycle(6));
        assert_eq!(a.1, b.1);
        assert_eq!(a.2, b.2);
    }
}
