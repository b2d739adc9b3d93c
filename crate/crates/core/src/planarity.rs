//! Planarity testing and embedding by path addition.
//!
//! Each biconnected block is embedded with the Demoucron–Malgrange–Pertuiset
//! procedure: start from a cycle, then repeatedly pick a fragment of the
//! remaining graph and route one of its attachment-to-attachment paths
//! through a face that contains all of its attachments, preferring fragments
//! with a single admissible face. Blocks are then glued at cut vertices by
//! concatenating their rotations. Quadratic in practice, which is plenty for
//! the graph sizes handled here.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Computes a rotation system (edge ids per vertex, counter-clockwise) for a
/// simple graph, or reports that none exists.
pub fn embed(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(n, &adj) {
        if block.len() == 1 {
            let e = block[0];
            rotation[edges[e].0].push(e);
            rotation[edges[e].1].push(e);
            continue;
        }
        for (v, rot) in embed_block(edges, &block)? {
            rotation[v].extend(rot);
        }
    }
    Ok(rotation)
}

/// Edge sets of the biconnected components, in discovery order.
fn biconnected_blocks(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    }
    fn dfs(s: &mut State, v: usize, parent_edge: usize) {
        s.disc[v] = s.time;
        s.low[v] = s.time;
        s.time += 1;
        for i in 0..s.adj[v].len() {
            let (w, e) = s.adj[v][i];
            if e == parent_edge {
                continue;
            }
            if s.disc[w] == usize::MAX {
                s.stack.push(e);
                dfs(s, w, e);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push(e);
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s =
        State { adj, disc: vec![usize::MAX; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..n {
        if s.disc[v] == usize::MAX {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.blocks
}

struct Fragment {
    inner: HashSet<usize>,
    attachments: Vec<usize>,
}

/// Embeds one 2-connected block; returns per-vertex rotations of its edges.
fn embed_block(edges: &[(usize, usize)], block: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut adj: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
    for &e in block {
        let (u, v) = edges[e];
        adj.entry(u).or_default().push((v, e));
        adj.entry(v).or_default().push((u, e));
        edge_of.insert((u, v), e);
        edge_of.insert((v, u), e);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let cycle = find_cycle(edges, block, &adj);
    let mut emb_vertices: HashSet<usize> = cycle.iter().copied().collect();
    let mut emb_edges: HashSet<usize> =
        (0..cycle.len()).map(|i| edge_of[&(cycle[i], cycle[(i + 1) % cycle.len()])]).collect();
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];

    while emb_edges.len() < block.len() {
        let fragments = fragments(block, edges, &adj, &emb_vertices, &emb_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (k, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a))).collect();
            match admissible.len() {
                0 => return Err(Error::NonPlanar),
                1 => {
                    choice = Some((k, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((k, admissible[0]));
                    }
                }
            }
        }
        let (k, f) = choice.expect("a fragment exists while edges remain");
        let path = fragment_path(&fragments[k], &adj);
        let face = faces.swap_remove(f);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            emb_edges.insert(edge_of[&(w[0], w[1])]);
        }
        emb_vertices.extend(path.iter().copied());
    }

    // Consecutive darts (u -> v), (v -> w) on a face mean that, around v,
    // edge vu follows edge vw counter-clockwise.
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
            succ.insert((v, edge_of[&(v, w)]), edge_of[&(v, u)]);
        }
    }
    let mut out = Vec::new();
    let mut vertices: Vec<usize> = adj.keys().copied().collect();
    vertices.sort_unstable();
    for v in vertices {
        let first = adj[&v].iter().map(|&(_, e)| e).min().expect("block vertex has edges");
        let mut rot = vec![first];
        let mut e = succ[&(v, first)];
        while e != first {
            rot.push(e);
            e = succ[&(v, e)];
        }
        if rot.len() != adj[&v].len() {
            return Err(Error::Internal(format!("faces around vertex {v} do not form one rotation")));
        }
        out.push((v, rot));
    }
    Ok(out)
}

fn find_cycle(edges: &[(usize, usize)], block: &[usize], adj: &HashMap<usize, Vec<(usize, usize)>>) -> Vec<usize> {
    let start = edges[block[0]].0;
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut depth: HashMap<usize, usize> = HashMap::new();
    let mut stack = vec![(start, usize::MAX)];
    depth.insert(start, 0);
    // Iterative DFS; the first non-tree edge closes a cycle.
    let mut iter_pos: HashMap<usize, usize> = HashMap::new();
    while let Some(&(v, pe)) = stack.last() {
        let pos = iter_pos.entry(v).or_insert(0);
        if *pos >= adj[&v].len() {
            stack.pop();
            continue;
        }
        let (w, e) = adj[&v][*pos];
        *pos += 1;
        if e == pe {
            continue;
        }
        if let Some(&dw) = depth.get(&w) {
            if dw < depth[&v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[&x];
                    cyc.push(x);
                }
                return cyc;
            }
            continue;
        }
        parent.insert(w, v);
        depth.insert(w, depth[&v] + 1);
        stack.push((w, e));
    }
    unreachable!("a 2-connected block with two or more edges contains a cycle")
}

fn fragments(
    block: &[usize],
    edges: &[(usize, usize)],
    adj: &HashMap<usize, Vec<(usize, usize)>>,
    emb_vertices: &HashSet<usize>,
    emb_edges: &HashSet<usize>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &e in block {
        let (u, v) = edges[e];
        if !emb_edges.contains(&e) && emb_vertices.contains(&u) && emb_vertices.contains(&v) {
            out.push(Fragment { inner: HashSet::new(), attachments: vec![u, v] });
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    let mut vertices: Vec<usize> = adj.keys().copied().collect();
    vertices.sort_unstable();
    for s in vertices {
        if emb_vertices.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut inner = HashSet::from([s]);
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        let mut attachments = HashSet::new();
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[&v] {
                if emb_vertices.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    inner.insert(w);
                    queue.push_back(w);
                }
            }
        }
        let mut attachments: Vec<usize> = attachments.into_iter().collect();
        attachments.sort_unstable();
        out.push(Fragment { inner, attachments });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(frag: &Fragment, adj: &HashMap<usize, Vec<(usize, usize)>>) -> Vec<usize> {
    if frag.inner.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &(w, _) in &adj[&a] {
        if frag.inner.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[&v] {
            if w == a || prev.contains_key(&w) {
                continue;
            }
            prev.insert(w, v);
            if !frag.inner.contains(&w) {
                let mut path = vec![w];
                let mut x = w;
                while x != a {
                    x = prev[&x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            queue.push_back(w);
        }
    }
    unreachable!("fragments of a 2-connected block have two attachments")
}

/// Splits an oriented face cycle along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().expect("path has endpoints");
    let i = face.iter().position(|&x| x == a).expect("attachment on face");
    let j = face.iter().position(|&x| x == b).expect("attachment on face");
    let inner = &path[1..path.len() - 1];
    let mut f1: Vec<usize> = (0..).map(|t| face[(i + t) % k]).take((j + k - i) % k + 1).collect();
    f1.extend(inner.iter().rev());
    let mut f2: Vec<usize> = (0..).map(|t| face[(j + t) % k]).take((i + k - j) % k + 1).collect();
    f2.extend(inner.iter());
    (f1, f2)
}
