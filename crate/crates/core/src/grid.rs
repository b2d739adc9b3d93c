//! Grid graphs, block and cycle circulations, and their explicit weightings.
//!
//! Points are `(column, row)` with rows increasing upwards. The horizontal
//! edge `(i, j)-(i+1, j)` is the one the weighting formula indexes by
//! `(i, j)`, and the block anchored at `(i, j)` is the unit square with that
//! lower-left corner.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::oracle;
use crate::weighting::EdgeWeighting;

pub type Point = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
    Diagonal,
}

/// A subgraph of the `width x height` grid, optionally with parallel unit
/// diagonals inside the single row of blocks `diagonal_row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    width: usize,
    height: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    // (a, b) with a left of b, or below b for verticals
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    diagonal_row: Option<usize>,
}

impl GridGraph {
    pub fn new(
        width: usize,
        height: usize,
        points: Vec<Point>,
        segments: &[(Point, Point)],
        diagonal_row: Option<usize>,
    ) -> Result<GridGraph> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput("grid dimensions must be positive".into()));
        }
        let mut index = HashMap::new();
        for (k, &p) in points.iter().enumerate() {
            if p.0 >= width || p.1 >= height {
                return Err(Error::InvalidInput(format!("point {p:?} lies outside the {width}x{height} grid")));
            }
            if index.insert(p, k).is_some() {
                return Err(Error::InvalidInput(format!("point {p:?} listed twice")));
            }
        }
        if let Some(r) = diagonal_row {
            if r + 1 >= height {
                return Err(Error::InvalidInput(format!("diagonal row {r} has no row above it")));
            }
        }
        let mut g =
            GridGraph { width, height, points, index, edges: Vec::new(), edge_index: HashMap::new(), diagonal_row };
        let mut slope = None;
        for &(p, q) in segments {
            let (a, b) = if (p.0, p.1) <= (q.0, q.1) { (p, q) } else { (q, p) };
            let ia =
                *g.index.get(&a).ok_or_else(|| Error::InvalidInput(format!("edge endpoint {a:?} is not a vertex")))?;
            let ib =
                *g.index.get(&b).ok_or_else(|| Error::InvalidInput(format!("edge endpoint {b:?} is not a vertex")))?;
            let dx = b.0 - a.0;
            let dy = b.1 as i64 - a.1 as i64;
            let ok = match (dx, dy) {
                (1, 0) | (0, 1) => true,
                (1, 1) | (1, -1) => {
                    let low = a.1.min(b.1);
                    if diagonal_row != Some(low) {
                        return Err(Error::InvalidInput(format!("diagonal {a:?}-{b:?} outside the diagonal row")));
                    }
                    if *slope.get_or_insert(dy) != dy {
                        return Err(Error::InvalidInput("diagonals are not parallel".into()));
                    }
                    true
                }
                _ => false,
            };
            if !ok {
                return Err(Error::InvalidInput(format!("{a:?}-{b:?} is not a unit grid segment")));
            }
            if g.edge_index.insert((ia, ib), g.edges.len()).is_some() {
                return Err(Error::InvalidInput(format!("segment {a:?}-{b:?} listed twice")));
            }
            g.edges.push((ia, ib));
        }
        Ok(g)
    }

    /// The complete `width x height` grid: points row by row, then the
    /// horizontal edges row by row, then the vertical edges.
    pub fn full(width: usize, height: usize) -> GridGraph {
        let points: Vec<Point> = (0..height).flat_map(|j| (0..width).map(move |i| (i, j))).collect();
        let mut segments = Vec::new();
        for j in 0..height {
            for i in 0..width.saturating_sub(1) {
                segments.push(((i, j), (i + 1, j)));
            }
        }
        for j in 0..height.saturating_sub(1) {
            for i in 0..width {
                segments.push(((i, j), (i, j + 1)));
            }
        }
        GridGraph::new(width, height, points, &segments, None).expect("full grid is well formed")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Vertex-id endpoints of every edge.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn segment(&self, e: usize) -> (Point, Point) {
        let (a, b) = self.edges[e];
        (self.points[a], self.points[b])
    }

    pub fn edge_between(&self, p: Point, q: Point) -> Option<usize> {
        let (a, b) = (self.vertex_at(p)?, self.vertex_at(q)?);
        let key = if (p.0, p.1) <= (q.0, q.1) { (a, b) } else { (b, a) };
        self.edge_index.get(&key).copied()
    }

    pub fn kind(&self, e: usize) -> EdgeKind {
        let (a, b) = self.segment(e);
        match (a.0 == b.0, a.1 == b.1) {
            (false, true) => EdgeKind::Horizontal,
            (true, false) => EdgeKind::Vertical,
            _ => EdgeKind::Diagonal,
        }
    }

    pub fn diagonal_row(&self) -> Option<usize> {
        self.diagonal_row
    }

    pub fn has_diagonals(&self) -> bool {
        (0..self.edges.len()).any(|e| self.kind(e) == EdgeKind::Diagonal)
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        let (w, h) = (self.width, self.height);
        (0..h.saturating_sub(1)).flat_map(move |j| (0..w.saturating_sub(1)).map(move |i| Block { i, j }))
    }

    /// Bottom, right, top, left sides of `b`, `None` where absent.
    pub fn block_edges(&self, b: Block) -> [Option<usize>; 4] {
        let Block { i, j } = b;
        [
            self.edge_between((i, j), (i + 1, j)),
            self.edge_between((i + 1, j), (i + 1, j + 1)),
            self.edge_between((i, j + 1), (i + 1, j + 1)),
            self.edge_between((i, j), (i, j + 1)),
        ]
    }

    /// The same graph with its geometric rotation (counter-clockwise by angle).
    /// Vertex and edge ids carry over unchanged.
    pub fn to_planar_graph(&self) -> PlanarGraph {
        let mut rotation: Vec<Vec<(u8, usize)>> = vec![Vec::new(); self.points.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (pa, pb) = (self.points[a], self.points[b]);
            rotation[a].push((direction(pa, pb), e));
            rotation[b].push((direction(pb, pa), e));
        }
        let rotation = rotation
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r.into_iter().map(|(_, e)| e).collect()
            })
            .collect();
        PlanarGraph::with_rotation(self.points.len(), self.edges.clone(), rotation)
            .expect("grid rotation is consistent")
    }

    pub fn to_file(&self) -> GridFile {
        GridFile {
            width: self.width,
            height: self.height,
            vertices: self.points.iter().map(|&(x, y)| [x, y]).collect(),
            edges: (0..self.edges.len())
                .map(|e| {
                    let (a, b) = self.segment(e);
                    [[a.0, a.1], [b.0, b.1]]
                })
                .collect(),
            diagonal_row: self.diagonal_row,
        }
    }

    pub fn from_file(f: &GridFile) -> Result<GridGraph> {
        let segments: Vec<(Point, Point)> = f.edges.iter().map(|[a, b]| ((a[0], a[1]), (b[0], b[1]))).collect();
        GridGraph::new(f.width, f.height, f.vertices.iter().map(|p| (p[0], p[1])).collect(), &segments, f.diagonal_row)
    }
}

// 0 = east, counter-clockwise in eighths of a turn
fn direction(from: Point, to: Point) -> u8 {
    let dx = to.0 as i64 - from.0 as i64;
    let dy = to.1 as i64 - from.1 as i64;
    match (dx, dy) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        _ => 7,
    }
}

/// On-disk grid description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridFile {
    pub width: usize,
    pub height: usize,
    pub vertices: Vec<[usize; 2]>,
    pub edges: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal_row: Option<usize>,
}

/// Unit square with lower-left corner `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub i: usize,
    pub j: usize,
}

impl Block {
    pub fn sign(self) -> i64 {
        parity_sign(self.i + self.j)
    }
}

fn parity_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `+1` for vertical edges, `-1` for horizontal ones.
pub fn edge_sign(kind: EdgeKind) -> i64 {
    match kind {
        EdgeKind::Horizontal => -1,
        _ => 1,
    }
}

/// Verticals weigh 0; the horizontal edge `(i, j)-(i+1, j)` weighs `(-1)^(i+j) (i+j+1)`.
pub fn grid_weighting(g: &GridGraph) -> Result<EdgeWeighting> {
    if g.has_diagonals() {
        return Err(Error::HasDiagonals);
    }
    let weights = (0..g.edge_count())
        .map(|e| match g.kind(e) {
            EdgeKind::Horizontal => {
                let ((i, j), _) = g.segment(e);
                parity_sign(i + j) * (i + j + 1) as i64
            }
            _ => 0,
        })
        .collect();
    Ok(EdgeWeighting::new(weights))
}

/// Signed sum around `b`'s four sides.
pub fn block_circulation(g: &GridGraph, w: &EdgeWeighting, b: Block) -> Result<i64> {
    if g.block_edges(b).iter().any(Option::is_none) {
        return Err(Error::IncompleteBlock(b.i, b.j));
    }
    Ok(partial_block_circulation(g, w, b))
}

// absent sides count as weight 0
fn partial_block_circulation(g: &GridGraph, w: &EdgeWeighting, b: Block) -> i64 {
    g.block_edges(b).iter().flatten().map(|&e| edge_sign(g.kind(e)) * w.weight(e)).sum()
}

/// A simple cycle of a grid graph in canonical form: it starts at the
/// leftmost, then topmost, non-horizontal edge, traversed upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePath {
    edges: Vec<usize>,
    vertices: Vec<usize>,
}

impl CyclePath {
    /// Accepts the cycle's edges in any order.
    pub fn new(g: &GridGraph, edge_ids: &[usize]) -> Result<CyclePath> {
        if edge_ids.len() < 3 {
            return Err(Error::NotACycle(format!("{} edges", edge_ids.len())));
        }
        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in edge_ids {
            if e >= g.edge_count() {
                return Err(Error::NotACycle(format!("unknown edge {e}")));
            }
            let (a, b) = g.edges[e];
            incident.entry(a).or_default().push(e);
            incident.entry(b).or_default().push(e);
        }
        if let Some((v, _)) = incident.iter().find(|(_, es)| es.len() != 2) {
            return Err(Error::NotACycle(format!("vertex {:?} does not have degree 2", g.point(*v))));
        }
        let start = *edge_ids
            .iter()
            .filter(|&&e| g.kind(e) != EdgeKind::Horizontal)
            .min_by_key(|&&e| {
                let (a, b) = g.segment(e);
                (a.0.min(b.0), std::cmp::Reverse(a.1.max(b.1)), e)
            })
            .ok_or_else(|| Error::NotACycle("no vertical edge".into()))?;
        let (a, b) = g.edges[start];
        let (low, high) = if g.point(a).1 < g.point(b).1 { (a, b) } else { (b, a) };
        let mut edges = vec![start];
        let mut vertices = vec![low];
        let mut at = high;
        let mut prev = start;
        while at != low {
            vertices.push(at);
            let next = *incident[&at].iter().find(|&&e| e != prev).expect("degree two");
            let (x, y) = g.edges[next];
            at = if x == at { y } else { x };
            prev = next;
            edges.push(next);
            if edges.len() > edge_ids.len() {
                break;
            }
        }
        if edges.len() != edge_ids.len() || at != low {
            return Err(Error::NotACycle("edges form more than one cycle".into()));
        }
        Ok(CyclePath { edges, vertices })
    }

    /// The cycle through consecutive points (the closing edge is implied).
    pub fn from_points(g: &GridGraph, points: &[Point]) -> Result<CyclePath> {
        let mut ids = Vec::with_capacity(points.len());
        for k in 0..points.len() {
            let (p, q) = (points[k], points[(k + 1) % points.len()]);
            ids.push(g.edge_between(p, q).ok_or_else(|| Error::NotACycle(format!("{p:?}-{q:?} is not an edge")))?);
        }
        CyclePath::new(g, &ids)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// `vertices[k]` is the start of `edges[k]`.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Blocks whose centres lie inside the cycle polygon.
    pub fn interior_blocks(&self, g: &GridGraph) -> Vec<Block> {
        // Doubled coordinates: block centres sit at odd points, so a ray
        // cast to the right never touches a grid point.
        let mut crossings: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in &self.edges {
            if g.kind(e) == EdgeKind::Vertical {
                let (a, _) = g.segment(e);
                crossings.entry(a.1).or_default().push(a.0);
            }
        }
        let mut out = Vec::new();
        for b in g.blocks() {
            if let Some(xs) = crossings.get(&b.j) {
                if xs.iter().filter(|&&x| x > b.i).count() % 2 == 1 {
                    out.push(b);
                }
            }
        }
        out
    }

    fn check_in(&self, g: &GridGraph) -> Result<()> {
        let m = g.edge_count();
        if self.edges.iter().any(|&e| e >= m) || self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return Err(Error::NotACycle("cycle does not belong to this graph".into()));
        }
        for (k, &e) in self.edges.iter().enumerate() {
            let (a, b) = g.edges[e];
            let (s, t) = (self.vertices[k], self.vertices[(k + 1) % self.vertices.len()]);
            if (a, b) != (s, t) && (b, a) != (s, t) {
                return Err(Error::NotACycle("cycle does not belong to this graph".into()));
            }
        }
        Ok(())
    }
}

/// `sum (-1)^k w(e_k)` from the canonical start edge.
pub fn cycle_circulation(g: &GridGraph, w: &EdgeWeighting, c: &CyclePath) -> Result<i64> {
    c.check_in(g)?;
    Ok(c.edges.iter().enumerate().map(|(k, &e)| parity_sign(k) * w.weight(e)).sum())
}

/// `(|circ(C)|, |sum over interior blocks of sign(B) circ(B)|)`.
///
/// Interior blocks with absent sides contribute with those sides at weight 0.
pub fn verify_block_decomposition(g: &GridGraph, w: &EdgeWeighting, c: &CyclePath) -> Result<(i64, i64)> {
    let lhs = cycle_circulation(g, w, c)?.abs();
    if g.has_diagonals() {
        return Err(Error::HasDiagonals);
    }
    let rhs: i64 = c.interior_blocks(g).into_iter().map(|b| b.sign() * partial_block_circulation(g, w, b)).sum();
    Ok((lhs, rhs.abs()))
}

/// Weighting for a two-row grid whose block row may carry parallel
/// diagonals: horizontals 0, and both the verticals and the diagonals in
/// column `i` get `(-1)^i (i+1)`.
pub fn one_row_weighting(g: &GridGraph) -> Result<EdgeWeighting> {
    if g.height() != 2 {
        return Err(Error::NotOneRowAlmostGrid(format!("height is {}, expected 2", g.height())));
    }
    if g.has_diagonals() && g.diagonal_row() != Some(0) {
        return Err(Error::NotOneRowAlmostGrid("diagonals outside row 0".into()));
    }
    let weights = (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.segment(e);
            let i = a.0.min(b.0);
            match g.kind(e) {
                EdgeKind::Horizontal => 0,
                _ => parity_sign(i) * (i + 1) as i64,
            }
        })
        .collect();
    Ok(EdgeWeighting::new(weights))
}

/// Every simple cycle of `g` in canonical form, refusing grids wider or
/// taller than `max_blocks` blocks.
pub fn enumerate_grid_cycles(g: &GridGraph, max_blocks: usize) -> Result<Vec<CyclePath>> {
    let side = g.width().max(g.height()).saturating_sub(1);
    if side > max_blocks {
        return Err(Error::TooLarge { size: side, limit: max_blocks });
    }
    oracle::enumerate_simple_cycles(g.vertex_count(), g.edges(), usize::MAX)?
        .into_iter()
        .map(|c| CyclePath::new(g, &c.edges))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight_of(g: &GridGraph, w: &EdgeWeighting, p: Point, q: Point) -> i64 {
        w.weight(g.edge_between(p, q).unwrap())
    }

    #[test]
    fn weighting_formula() {
        let g = GridGraph::full(4, 3);
        let w = grid_weighting(&g).unwrap();
        assert_eq!(weight_of(&g, &w, (0, 0), (1, 0)), 1);
        assert_eq!(weight_of(&g, &w, (2, 1), (3, 1)), -4);
        assert_eq!(weight_of(&g, &w, (1, 1), (1, 2)), 0);
    }

    #[test]
    fn block_circulation_is_block_sign() {
        for (wd, ht) in [(2, 2), (5, 3), (9, 9)] {
            let g = GridGraph::full(wd, ht);
            let w = grid_weighting(&g).unwrap();
            for b in g.blocks() {
                assert_eq!(block_circulation(&g, &w, b).unwrap(), b.sign());
            }
        }
        let g = GridGraph::full(3, 2);
        let w = grid_weighting(&g).unwrap();
        assert_eq!(block_circulation(&g, &w, Block { i: 0, j: 0 }).unwrap(), 1);
        assert_eq!(block_circulation(&g, &w, Block { i: 1, j: 0 }).unwrap(), -1);
        assert_eq!(block_circulation(&g, &EdgeWeighting::zeros(g.edge_count()), Block { i: 1, j: 0 }).unwrap(), 0);
    }

    #[test]
    fn incomplete_block() {
        let g = GridGraph::new(2, 2, vec![(0, 0), (1, 0), (0, 1), (1, 1)], &[((0, 0), (1, 0)), ((0, 0), (0, 1))], None)
            .unwrap();
        let w = EdgeWeighting::zeros(2);
        assert_eq!(block_circulation(&g, &w, Block { i: 0, j: 0 }), Err(Error::IncompleteBlock(0, 0)));
    }

    #[test]
    fn rectangle_circulations() {
        let g = GridGraph::full(4, 4);
        let w = grid_weighting(&g).unwrap();
        let unit = CyclePath::from_points(&g, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(cycle_circulation(&g, &w, &unit).unwrap().abs(), 1);
        let wide = CyclePath::from_points(&g, &[(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)]).unwrap();
        assert_eq!(cycle_circulation(&g, &w, &wide).unwrap().abs(), 2);
        let square =
            CyclePath::from_points(&g, &[(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(cycle_circulation(&g, &w, &square).unwrap().abs(), 4);
    }

    #[test]
    fn canonical_start() {
        let g = GridGraph::full(3, 3);
        let c = CyclePath::from_points(&g, &[(1, 1), (1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(g.segment(c.edges()[0]), ((0, 1), (0, 2)));
        assert_eq!(c.vertices()[0], g.vertex_at((0, 1)).unwrap());
    }

    #[test]
    fn not_a_cycle() {
        let g = GridGraph::full(3, 3);
        let path = [g.edge_between((0, 0), (1, 0)).unwrap(), g.edge_between((1, 0), (1, 1)).unwrap()];
        assert!(matches!(CyclePath::new(&g, &path), Err(Error::NotACycle(_))));
        let mut two = CyclePath::from_points(&g, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap().edges().to_vec();
        two.extend(CyclePath::from_points(&g, &[(1, 1), (2, 1), (2, 2), (1, 2)]).unwrap().edges());
        assert!(matches!(CyclePath::new(&g, &two), Err(Error::NotACycle(_))));
    }

    #[test]
    fn block_decomposition_examples() {
        let g = GridGraph::full(3, 3);
        let w = grid_weighting(&g).unwrap();
        let unit = CyclePath::from_points(&g, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(verify_block_decomposition(&g, &w, &unit).unwrap(), (1, 1));
        let ell =
            CyclePath::from_points(&g, &[(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(ell.interior_blocks(&g).len(), 3);
        assert_eq!(verify_block_decomposition(&g, &w, &ell).unwrap(), (3, 3));
        let zero = EdgeWeighting::zeros(g.edge_count());
        assert_eq!(verify_block_decomposition(&g, &zero, &ell).unwrap(), (0, 0));
    }

    #[test]
    fn weight_bound() {
        for (wd, ht) in [(1, 1), (2, 7), (6, 6)] {
            let g = GridGraph::full(wd, ht);
            assert!(grid_weighting(&g).unwrap().max_abs() <= (wd + ht - 1) as i64);
        }
    }

    fn one_row(len: usize, verticals: &[usize], diagonals: &[usize]) -> GridGraph {
        let points: Vec<Point> = (0..2).flat_map(|j| (0..len).map(move |i| (i, j))).collect();
        let mut seg = Vec::new();
        for j in 0..2 {
            for i in 0..len - 1 {
                seg.push(((i, j), (i + 1, j)));
            }
        }
        seg.extend(verticals.iter().map(|&i| ((i, 0), (i, 1))));
        seg.extend(diagonals.iter().map(|&i| ((i, 0), (i + 1, 1))));
        GridGraph::new(len, 2, points, &seg, Some(0)).unwrap()
    }

    #[test]
    fn one_row_examples() {
        let g = one_row(6, &[0, 2], &[3, 4]);
        let w = one_row_weighting(&g).unwrap();
        let cycles = enumerate_grid_cycles(&g, 8).unwrap();
        let mut saw = (false, false, false);
        for c in &cycles {
            let kinds: Vec<EdgeKind> =
                c.edges().iter().map(|&e| g.kind(e)).filter(|&k| k != EdgeKind::Horizontal).collect();
            let verticals = kinds.iter().filter(|&&k| k == EdgeKind::Vertical).count();
            match (verticals, kinds.len() - verticals) {
                (2, 0) => saw.0 = true,
                (0, 2) => saw.1 = true,
                (1, 1) => {
                    saw.2 = true;
                    assert_eq!(c.len() % 2, 1);
                }
                _ => {}
            }
            if c.len() % 2 == 0 {
                assert_ne!(cycle_circulation(&g, &w, c).unwrap(), 0);
            }
        }
        assert_eq!(saw, (true, true, true));
    }

    #[test]
    fn one_row_rejects_tall_grids() {
        assert!(matches!(one_row_weighting(&GridGraph::full(3, 3)), Err(Error::NotOneRowAlmostGrid(_))));
        assert_eq!(grid_weighting(&one_row(3, &[], &[0])), Err(Error::HasDiagonals));
    }

    #[test]
    fn invalid_grids() {
        let pts = vec![(0, 0), (1, 1), (2, 0)];
        assert!(GridGraph::new(3, 2, pts.clone(), &[((0, 0), (1, 1))], None).is_err());
        assert!(GridGraph::new(3, 2, pts.clone(), &[((0, 0), (2, 0))], None).is_err());
        let pts = vec![(0, 0), (1, 1), (1, 0), (0, 1)];
        assert!(GridGraph::new(3, 2, pts, &[((0, 0), (1, 1)), ((1, 0), (0, 1))], Some(0)).is_err());
    }

    #[test]
    fn planar_view_faces() {
        let g = GridGraph::full(3, 2).to_planar_graph();
        assert_eq!(g.compute_faces().unwrap().face_count(), 3);
        let d = one_row(4, &[0, 3], &[1]).to_planar_graph();
        d.check_euler().unwrap();
    }

    #[test]
    fn file_round_trip() {
        let g = one_row(4, &[0], &[2]);
        let f = g.to_file();
        let text = serde_json::to_string(&f).unwrap();
        let back: GridFile = serde_json::from_str(&text).unwrap();
        assert_eq!(GridGraph::from_file(&back).unwrap(), g);
    }
}
