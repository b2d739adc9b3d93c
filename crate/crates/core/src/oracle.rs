//! Brute-force ground truth on small instances.
//!
//! Nothing here uses embeddings, faces, or determinants; the routines only
//! look at vertex count and edge list, so they stay independent of the
//! algebraic pipeline they are used to check.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::weighting::EdgeWeighting;
use crate::IntPoly;

pub const ORACLE_ENV: &str = "CIRCMATCH_MAX_ORACLE";

/// Instance-size guards for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub matching_vertices: usize,
    pub cycle_vertices: usize,
    /// Largest grid side, in blocks, for exhaustive grid cycle enumeration.
    pub grid_blocks: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { matching_vertices: 20, cycle_vertices: 16, grid_blocks: 4 }
    }
}

impl Limits {
    /// Every guard set to `n`'s vertex count (grid side derived from it).
    pub fn uniform(n: usize) -> Self {
        Limits { matching_vertices: n, cycle_vertices: n, grid_blocks: (n as f64).sqrt() as usize }
    }

    /// Defaults, overridden by the environment variable when it parses.
    pub fn from_env() -> Self {
        std::env::var(ORACLE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(Limits::uniform)
            .unwrap_or_default()
    }
}

fn guard(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    Ok(())
}

fn incidence(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut inc = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        inc[u].push((v, e));
        inc[v].push((u, e));
    }
    for list in &mut inc {
        list.sort_unstable_by_key(|&(_, e)| e);
    }
    inc
}

/// All perfect matchings as sorted edge-id lists.
///
/// Backtracks on the lowest uncovered vertex, trying its edges in id order,
/// and abandons a branch as soon as some uncovered vertex has no uncovered
/// neighbour left.
pub fn enumerate_perfect_matchings(n: usize, edges: &[(usize, usize)], limit: usize) -> Result<Vec<Vec<usize>>> {
    guard(n, limit)?;
    let mut out = Vec::new();
    if n % 2 == 1 {
        return Ok(out);
    }
    let inc = incidence(n, edges);
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    fn stuck(inc: &[Vec<(usize, usize)>], covered: &[bool]) -> bool {
        (0..covered.len()).any(|v| !covered[v] && inc[v].iter().all(|&(w, _)| covered[w]))
    }
    fn go(inc: &[Vec<(usize, usize)>], covered: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        if stuck(inc, covered) {
            return;
        }
        covered[v] = true;
        for &(w, e) in &inc[v] {
            if covered[w] {
                continue;
            }
            covered[w] = true;
            chosen.push(e);
            go(inc, covered, chosen, out);
            chosen.pop();
            covered[w] = false;
        }
        covered[v] = false;
    }
    go(&inc, &mut covered, &mut chosen, &mut out);
    Ok(out)
}

/// Perfect-matching count by memoised recursion over covered-vertex sets.
/// Shares no code with [`enumerate_perfect_matchings`].
pub fn count_perfect_matchings_memo(n: usize, edges: &[(usize, usize)], limit: usize) -> Result<u128> {
    guard(n, limit.min(63))?;
    let mut adj = vec![0u64; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    fn count(mask: u64, full: u64, adj: &[u64], memo: &mut HashMap<u64, u128>) -> u128 {
        if mask == full {
            return 1;
        }
        if let Some(&c) = memo.get(&mask) {
            return c;
        }
        let v = (!mask).trailing_zeros() as usize;
        let mut free = adj[v] & !mask;
        let mut total = 0;
        while free != 0 {
            let w = free.trailing_zeros() as usize;
            free &= free - 1;
            total += count(mask | (1 << v) | (1 << w), full, adj, memo);
        }
        memo.insert(mask, total);
        total
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(count(0, full, &adj, &mut HashMap::new()))
}

/// Matching weight → number of perfect matchings of that weight (offset excluded).
pub type WeightHistogram = BTreeMap<i64, u64>;

pub fn weight_histogram(
    n: usize,
    edges: &[(usize, usize)],
    w: &EdgeWeighting,
    limit: usize,
) -> Result<WeightHistogram> {
    let mut hist = WeightHistogram::new();
    for m in enumerate_perfect_matchings(n, edges, limit)? {
        *hist.entry(w.total(&m)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `(sum_t N_t x^t)^2`, the value a Kasteleyn determinant must take.
pub fn squared_spectrum(hist: &WeightHistogram) -> IntPoly {
    let gf = IntPoly::from_terms(hist.iter().map(|(&t, &c)| (t, BigInt::from(c))));
    &gf * &gf
}

/// The perfect matchings of minimum weight.
pub fn minimum_weight_matchings(
    n: usize,
    edges: &[(usize, usize)],
    w: &EdgeWeighting,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let all = enumerate_perfect_matchings(n, edges, limit)?;
    let Some(best) = all.iter().map(|m| w.total(m)).min() else {
        return Ok(Vec::new());
    };
    Ok(all.into_iter().filter(|m| w.total(m) == best).collect())
}

/// A simple cycle: vertices in order starting at the smallest, heading to the
/// smaller of its two neighbours; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `sum (-1)^i w(e_i)` along the cycle from its first edge.
    pub fn alternating_sum(&self, w: &EdgeWeighting) -> i64 {
        self.edges.iter().enumerate().map(|(i, &e)| if i % 2 == 0 { w.weight(e) } else { -w.weight(e) }).sum()
    }
}

/// Every simple cycle of a simple graph, each reported once.
pub fn enumerate_simple_cycles(n: usize, edges: &[(usize, usize)], limit: usize) -> Result<Vec<Cycle>> {
    guard(n, limit)?;
    let inc = incidence(n, edges);
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        let mut path_edges = Vec::new();
        on_path[s] = true;
        extend_cycles(&inc, s, &mut path, &mut path_edges, &mut on_path, &mut out);
        on_path[s] = false;
    }
    Ok(out)
}

fn extend_cycles(
    inc: &[Vec<(usize, usize)>],
    s: usize,
    path: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let v = *path.last().expect("path starts at s");
    for &(w, e) in &inc[v] {
        if w == s && path.len() >= 3 && path[1] < v {
            let mut edges = path_edges.clone();
            edges.push(e);
            out.push(Cycle { vertices: path.clone(), edges });
        }
        if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            path_edges.push(e);
            extend_cycles(inc, s, path, path_edges, on_path, out);
            path_edges.pop();
            path.pop();
            on_path[w] = false;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NonvanishingReport {
    pub cycles: usize,
    pub even_cycles: usize,
    /// Smallest |circulation| over even cycles, if there are any.
    pub min_abs_circulation: Option<i64>,
    pub violations: Vec<Cycle>,
}

impl NonvanishingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every even simple cycle has nonzero alternating sum.
pub fn verify_nonvanishing(
    n: usize,
    edges: &[(usize, usize)],
    w: &EdgeWeighting,
    limit: usize,
) -> Result<NonvanishingReport> {
    Ok(check_cycles(enumerate_simple_cycles(n, edges, limit)?, w))
}

pub(crate) fn check_cycles(cycles: Vec<Cycle>, w: &EdgeWeighting) -> NonvanishingReport {
    let mut report = NonvanishingReport { cycles: cycles.len(), ..Default::default() };
    for c in cycles {
        if c.len() % 2 == 1 {
            continue;
        }
        report.even_cycles += 1;
        let circ = c.alternating_sum(w).abs();
        report.min_abs_circulation = Some(report.min_abs_circulation.map_or(circ, |m| m.min(circ)));
        if circ == 0 {
            report.violations.push(c);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];

    #[test]
    fn four_cycle_matchings() {
        let ms = enumerate_perfect_matchings(4, &C4, 20).unwrap();
        assert_eq!(ms, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(count_perfect_matchings_memo(4, &C4, 20).unwrap(), 2);
    }

    #[test]
    fn trivial_matchings() {
        assert_eq!(enumerate_perfect_matchings(2, &[(0, 1)], 20).unwrap().len(), 1);
        assert!(enumerate_perfect_matchings(3, &[(0, 1), (1, 2), (2, 0)], 20).unwrap().is_empty());
        assert_eq!(enumerate_perfect_matchings(0, &[], 20).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn size_guard() {
        let edges: Vec<_> = (0..21).map(|i| (i, i + 1)).collect();
        assert_eq!(enumerate_perfect_matchings(22, &edges, 20), Err(Error::TooLarge { size: 22, limit: 20 }));
    }

    #[test]
    fn histograms() {
        let zero = EdgeWeighting::zeros(4);
        assert_eq!(weight_histogram(4, &C4, &zero, 20).unwrap(), BTreeMap::from([(0, 2)]));
        let path = [(0, 1), (1, 2)];
        assert!(weight_histogram(3, &path, &EdgeWeighting::zeros(2), 20).unwrap().is_empty());
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_simple_cycles(4, &C4, 16).unwrap().len(), 1);
        let k4: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let cycles = enumerate_simple_cycles(4, &k4, 16).unwrap();
        assert_eq!(cycles.len(), 7);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        let tree = [(0, 1), (1, 2), (1, 3)];
        assert!(enumerate_simple_cycles(4, &tree, 16).unwrap().is_empty());
    }

    #[test]
    fn zero_weighting_violates_on_every_even_cycle() {
        let report = verify_nonvanishing(4, &C4, &EdgeWeighting::zeros(4), 16).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(!report.holds());
    }

    #[test]
    fn memo_count_matches_enumeration_on_ladder() {
        // 2 x 5 ladder has Fibonacci(6) = 8 perfect matchings
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, i + 5));
            if i < 4 {
                edges.push((i, i + 1));
                edges.push((i + 5, i + 6));
            }
        }
        assert_eq!(enumerate_perfect_matchings(10, &edges, 20).unwrap().len(), 8);
        assert_eq!(count_perfect_matchings_memo(10, &edges, 20).unwrap(), 8);
    }
}
