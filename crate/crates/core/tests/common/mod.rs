#![allow(dead_code)]

use circmatch::graph::{build_planar_graph, PlanarGraph};
use circmatch::oracle;
use circmatch::outerplanar::OuterplanarGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn try_planar(n: usize, edges: &[(usize, usize)]) -> Option<PlanarGraph> {
    build_planar_graph(n, edges, None).ok()
}

/// Random spanning tree with alternating classes, then random cross-class
/// edges added while the graph stays planar.
pub fn bipartite_planar(rng: &mut impl Rng, n: usize) -> PlanarGraph {
    let mut class = vec![0u8; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        class[v] = 1 - class[u];
        edges.push((u, v));
    }
    let mut extra: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| class[u] != class[v] && !edges.contains(&(u, v)))
        .collect();
    extra.shuffle(rng);
    let target = if n >= 3 { rng.gen_range(n - 1..=2 * n - 4) } else { n.saturating_sub(1) };
    for e in extra {
        if edges.len() >= target {
            break;
        }
        edges.push(e);
        if try_planar(n, &edges).is_none() {
            edges.pop();
        }
    }
    edges.shuffle(rng);
    build_planar_graph(n, &edges, None).unwrap()
}

/// Connected planar graph with no bipartiteness requirement.
pub fn planar(rng: &mut impl Rng, n: usize) -> PlanarGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut extra: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|e| !edges.contains(e)).collect();
    extra.shuffle(rng);
    let target = if n >= 3 { rng.gen_range(n - 1..=3 * n - 6) } else { n.saturating_sub(1) };
    for e in extra {
        if edges.len() >= target {
            break;
        }
        edges.push(e);
        if try_planar(n, &edges).is_none() {
            edges.pop();
        }
    }
    build_planar_graph(n, &edges, None).unwrap()
}

pub fn pm_count(g: &PlanarGraph) -> u128 {
    oracle::count_perfect_matchings_memo(g.vertex_count(), g.edges(), 63).unwrap()
}

/// Connected bipartite planar graphs with `min_n..=max_n` vertices (even)
/// and at least one perfect matching.
pub fn matchable_corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<PlanarGraph> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = 2 * r.gen_range(min_n.div_ceil(2)..=max_n / 2);
        let g = bipartite_planar(&mut r, n);
        if pm_count(&g) > 0 {
            out.push(g);
        }
    }
    out
}

/// Bipartite and general planar graphs of both parities, matchable or not.
pub fn mixed_corpus(seed: u64, count: usize, max_n: usize) -> Vec<PlanarGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = r.gen_range(1..=max_n);
            if k % 3 == 2 {
                planar(&mut r, n)
            } else {
                bipartite_planar(&mut r, n)
            }
        })
        .collect()
}

fn graph(n: usize, edges: &[(usize, usize)]) -> PlanarGraph {
    build_planar_graph(n, edges, None).unwrap()
}

/// Matchable bipartite graphs with bridges.
pub fn bridge_fixtures() -> Vec<PlanarGraph> {
    vec![
        graph(2, &[(0, 1)]),
        graph(4, &[(0, 1), (1, 2), (2, 3)]),
        graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
        graph(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 7), (7, 4)]),
        graph(10, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 6)]),
        graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5)]),
        graph(8, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7)]),
        graph(10, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7), (7, 8), (8, 9)]),
        graph(
            12,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
                (3, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 10),
                (10, 11),
                (11, 6),
            ],
        ),
    ]
}

/// Chords of the spine circle added in random order when they cross nothing.
pub fn outerplanar(rng: &mut impl Rng, n: usize) -> OuterplanarGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let keep = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for (u, v) in pairs {
        let on_spine = v == u + 1 || (u == 0 && v == n - 1);
        if !rng.gen_bool(if on_spine { 0.9 } else { keep }) {
            continue;
        }
        edges.push((u, v));
        if OuterplanarGraph::new(n, edges.clone()).is_err() {
            edges.pop();
        }
    }
    OuterplanarGraph::new(n, edges).unwrap()
}
