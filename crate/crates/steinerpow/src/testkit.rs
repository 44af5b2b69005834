//! Brute-force oracles and instance generators.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chordal::is_strongly_chordal;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::tree::{canonical_form, join_components, tree_power_graph, verify_leaf_root, verify_root, NodeLabel, SteinerTree};

#[derive(Clone, Debug)]
pub struct OracleBudget {
    /// None means 2(k-1)n.
    pub max_steiner: Option<usize>,
    /// Partial trees expanded before giving up.
    pub node_cap: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_steiner: None, node_cap: 5_000_000, time_cap: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(SteinerTree),
    NotFound,
    Inconclusive,
}

impl OracleOutcome {
    pub fn found(&self) -> Option<&SteinerTree> {
        match self {
            OracleOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    leaf: bool,
    order: Vec<Vertex>,
    max_steiner: usize,
    budget: &'a OracleBudget,
    start: Instant,
    expanded: usize,
    seen: HashSet<String>,
    aborted: bool,
}

impl Search<'_> {
    /// `t` holds order[..i]; `steiner` counts its Steiner nodes.
    fn go(&mut self, t: &SteinerTree, i: usize, steiner: usize) -> Option<SteinerTree> {
        if i == self.order.len() {
            return Some(t.clone());
        }
        if !self.seen.insert(canonical_form(t)) {
            return None;
        }
        self.expanded += 1;
        if self.expanded > self.budget.node_cap || self.budget.time_cap.is_some_and(|c| self.start.elapsed() > c) {
            self.aborted = true;
            return None;
        }
        let v = self.order[i];
        let placed: Vec<(Vertex, usize)> = self.order[..i].iter().map(|&u| (u, t.node_of(u).unwrap())).collect();
        for p in 0..t.len() {
            let lab = t.label(p);
            if self.leaf && lab.is_real() && t.degree(p) > 0 {
                continue;
            }
            let d = t.bfs(p);
            // admissible pendant lengths
            let lo = if lab.is_real() || self.leaf { 1 } else { 0 };
            'len: for l in lo..=self.k {
                let added = if l == 0 { 0 } else { l - 1 };
                if steiner + added - usize::from(l == 0) > self.max_steiner {
                    break;
                }
                for &(u, nu) in &placed {
                    let dist = d[nu] + l;
                    if self.g.has_edge(u, v) != (dist <= self.k) {
                        if self.g.has_edge(u, v) {
                            break 'len;
                        }
                        continue 'len;
                    }
                }
                let mut nt = t.clone();
                let new_steiner = if l == 0 {
                    nt.set_label(p, NodeLabel::Real(v));
                    steiner - 1
                } else {
                    let mut prev = p;
                    for _ in 0..l - 1 {
                        let s = nt.add_node(NodeLabel::Steiner);
                        nt.add_edge(prev, s);
                        prev = s;
                    }
                    let x = nt.add_node(NodeLabel::Real(v));
                    nt.add_edge(prev, x);
                    steiner + added
                };
                if let Some(r) = self.go(&nt, i + 1, new_steiner) {
                    return Some(r);
                }
                if self.aborted {
                    return None;
                }
            }
        }
        None
    }
}

fn bfs_order(g: &Graph, comp: &VertexSet) -> Vec<Vertex> {
    let start = comp.iter().next().unwrap();
    let d = g.bfs_distances(start).expect("vertex in range");
    let mut o: Vec<Vertex> = comp.iter().collect();
    o.sort_by_key(|&v| (d[v], v));
    o
}

fn oracle(g: &Graph, k: usize, b: &OracleBudget, leaf: bool) -> OracleOutcome {
    if g.n() == 0 || k == 0 {
        return OracleOutcome::NotFound;
    }
    let max_steiner = b.max_steiner.unwrap_or(2 * (k.max(1) - 1) * g.n());
    let start = Instant::now();
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        let order = bfs_order(g, &comp);
        let mut s = Search {
            g,
            k,
            leaf,
            order: order.clone(),
            max_steiner,
            budget: b,
            start,
            expanded: 0,
            seen: HashSet::new(),
            aborted: false,
        };
        let t0 = SteinerTree::single(NodeLabel::Real(order[0]));
        match s.go(&t0, 1, 0) {
            Some(t) => parts.push(t),
            None if s.aborted => return OracleOutcome::Inconclusive,
            None => return OracleOutcome::NotFound,
        }
    }
    let t = join_components(&parts, k + 1);
    let ok = if leaf { verify_leaf_root(&t, g, k) } else { verify_root(&t, g, k) };
    assert!(ok, "oracle produced an invalid root");
    OracleOutcome::Found(t)
}

/// Exhaustive search for a k-Steiner root (reals inserted in BFS order, each
/// hung on a pendant path from an existing node, partial trees deduplicated
/// up to Steiner equivalence).
pub fn oracle_steiner_root(g: &Graph, k: usize, b: &OracleBudget) -> OracleOutcome {
    oracle(g, k, b, false)
}

/// As `oracle_steiner_root`, with every real node a leaf.
pub fn oracle_leaf_root(g: &Graph, k: usize, b: &OracleBudget) -> OracleOutcome {
    oracle(g, k, b, true)
}

/// Independent check: enumerate skeleton trees (reals plus Steiner branch
/// nodes of degree >= 3) by Prüfer sequence and give every skeleton edge a
/// length in 1..=k+1. Feasible only for very small graphs.
pub fn skeleton_search(g: &Graph, k: usize, leaf: bool) -> bool {
    let n = g.n();
    if n <= 1 {
        return n == 1;
    }
    for b in 0..=n.saturating_sub(2) {
        let total = n + b;
        let mut seq = vec![0usize; total - 2];
        if prufer_rec(g, k, leaf, n, total, &mut seq, 0) {
            return true;
        }
    }
    false
}

fn prufer_rec(g: &Graph, k: usize, leaf: bool, n: usize, total: usize, seq: &mut Vec<usize>, i: usize) -> bool {
    if i == seq.len() {
        let mut cnt = vec![0usize; total];
        for &x in seq.iter() {
            cnt[x] += 1;
        }
        // Steiner labels n.. need degree >= 3, reals in leaf mode degree 1
        if (n..total).any(|s| cnt[s] < 2) || (leaf && (0..n).any(|v| cnt[v] > 0)) {
            return false;
        }
        // symmetry: Steiner labels first appear in increasing order
        let mut next = n;
        for &x in seq.iter() {
            if x >= n {
                if x > next {
                    return false;
                }
                if x == next {
                    next += 1;
                }
            }
        }
        let edges = prufer_decode(seq, total);
        return lengths_feasible(g, k, n, total, &edges);
    }
    for x in 0..total {
        seq[i] = x;
        if prufer_rec(g, k, leaf, n, total, seq, i + 1) {
            return true;
        }
    }
    false
}

fn prufer_decode(seq: &[usize], total: usize) -> Vec<(usize, usize)> {
    let mut deg = vec![1usize; total];
    for &x in seq {
        deg[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..total).find(|&j| deg[j] == 1).unwrap();
        edges.push((leaf, x));
        deg[leaf] -= 1;
        deg[x] -= 1;
    }
    let rest: Vec<usize> = (0..total).filter(|&j| deg[j] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn lengths_feasible(g: &Graph, k: usize, n: usize, total: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); total];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    // edge indices on each real pair's path
    let mut paths = Vec::new();
    for u in 0..n {
        let mut via = vec![None; total];
        let mut stack = vec![u];
        let mut seen = vec![false; total];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        for v in u + 1..n {
            let mut p = Vec::new();
            let mut x = v;
            while let Some((y, e)) = via[x] {
                p.push(e);
                x = y;
            }
            paths.push((u, v, p));
        }
    }
    let mut len = vec![0usize; edges.len()];
    fn rec(i: usize, len: &mut Vec<usize>, k: usize, g: &Graph, paths: &[(usize, usize, Vec<usize>)]) -> bool {
        for (u, v, p) in paths {
            if p.iter().all(|&e| e < i) {
                let d: usize = p.iter().map(|&e| len[e]).sum();
                if g.has_edge(*u, *v) != (d <= k) {
                    return false;
                }
            } else if g.has_edge(*u, *v) {
                let d: usize = p.iter().filter(|&&e| e < i).map(|&e| len[e]).sum();
                if d > k {
                    return false;
                }
            }
        }
        if i == len.len() {
            return true;
        }
        for l in 1..=k + 1 {
            len[i] = l;
            if rec(i + 1, len, k, g, paths) {
                return true;
            }
        }
        false
    }
    rec(0, &mut len, k, g, &paths)
}

fn random_tree_edges(nodes: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    (1..nodes).map(|i| (rng.gen_range(0..i), i)).collect()
}

/// Random tree on n_real + n_steiner nodes with randomly placed reals; the
/// graph is its k-th power restricted to the reals (possibly disconnected).
pub fn random_yes_instance(k: usize, n_real: usize, n_steiner: usize, seed: u64) -> (Graph, SteinerTree) {
    assert!(n_real >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = n_real + n_steiner;
    let mut perm: Vec<usize> = (0..total).collect();
    perm.shuffle(&mut rng);
    let mut labels = vec![NodeLabel::Steiner; total];
    for (v, &node) in perm[..n_real].iter().enumerate() {
        labels[node] = NodeLabel::Real(v);
    }
    let edges = random_tree_edges(total, &mut rng);
    let t = SteinerTree::from_edges(labels, &edges, 0).expect("random tree is a tree");
    let g = tree_power_graph(&t, k).expect("labels are 0..n_real");
    (g, t)
}

/// Random tree whose reals are exactly its leaves: a random tree on
/// `n_internal` Steiner nodes with `n_leaves` real leaves hung on it.
pub fn random_leaf_instance(k: usize, n_leaves: usize, n_internal: usize, seed: u64) -> (Graph, SteinerTree) {
    assert!(n_leaves >= 1 && n_internal >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = vec![NodeLabel::Steiner; n_internal];
    let mut edges = random_tree_edges(n_internal, &mut rng);
    let mut ids: Vec<usize> = (0..n_leaves).collect();
    ids.shuffle(&mut rng);
    for v in ids {
        let x = labels.len();
        labels.push(NodeLabel::Real(v));
        edges.push((rng.gen_range(0..n_internal), x));
    }
    let t = SteinerTree::from_edges(labels, &edges, 0).expect("tree");
    let g = tree_power_graph(&t, k).expect("labels are 0..n_leaves");
    (g, t)
}

/// A connected strongly chordal graph on n vertices: a power (k in 1..=5) of
/// a random tree whose Steiner nodes are pairwise non-adjacent and not leaves.
pub fn random_strongly_chordal(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(1..=5);
        let mut edges = random_tree_edges(n, &mut rng);
        let mut total = n;
        if k >= 2 {
            // subdivide some edges and split some hubs with one Steiner node
            let mut out = Vec::new();
            for (a, b) in edges {
                if rng.gen_bool(0.25) {
                    out.push((a, total));
                    out.push((total, b));
                    total += 1;
                } else {
                    out.push((a, b));
                }
            }
            edges = out;
        }
        let mut labels = vec![NodeLabel::Steiner; total];
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut rng);
        for (node, v) in ids.into_iter().enumerate() {
            labels[node] = NodeLabel::Real(v);
        }
        let t = SteinerTree::from_edges(labels, &edges, 0).expect("tree");
        let g = tree_power_graph(&t, k).expect("labels");
        if g.is_connected() && matches!(is_strongly_chordal(&g), Ok(Some(_))) {
            return g;
        }
    }
}

/// One representative per isomorphism class of connected graphs on n
/// vertices (n <= 7), found by minimizing the edge bitmask over all vertex
/// permutations.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7);
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut idx = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        idx[a][b] = i;
        idx[b][a] = i;
    }
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    // bit i of a mask maps to bit pmap[p][i]
    let pmap: Vec<Vec<usize>> = perms.iter().map(|p| pairs.iter().map(|&(a, b)| idx[p[a]][p[b]]).collect()).collect();
    let mut classes = std::collections::BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if edges.len() + 1 < n {
            continue;
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let mut best = mask;
        for pm in &pmap {
            let mut m2 = 0u64;
            for (i, &j) in pm.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m2 |= 1 << j;
                }
            }
            best = best.min(m2);
        }
        classes.insert(best);
    }
    classes
        .into_iter()
        .map(|m| {
            let e: Vec<_> = (0..pairs.len()).filter(|&i| m >> i & 1 == 1).map(|i| pairs[i]).collect();
            Graph::from_edges(n, &e).unwrap()
        })
        .collect()
}

fn permutations(a: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == a.len() {
        out.push(a.clone());
        return;
    }
    for j in i..a.len() {
        a.swap(i, j);
        permutations(a, i + 1, out);
        a.swap(i, j);
    }
}

/// The 3-sun: triangle 0,1,2 with ears 3 (on 0,1), 4 (on 1,2), 5 (on 0,2).
pub fn three_sun() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_steiner_root(&Graph::complete(2), 4, &b()).found().is_some());
        assert_eq!(oracle_steiner_root(&Graph::cycle(4), 4, &b()), OracleOutcome::NotFound);
        let t = oracle_steiner_root(&Graph::path(3), 4, &b());
        assert!(verify_root(t.found().unwrap(), &Graph::path(3), 4));
        assert!(oracle_leaf_root(&Graph::complete(2), 6, &b()).found().is_some());
        assert!(oracle_leaf_root(&Graph::path(3), 6, &b()).found().is_some());
        assert_eq!(oracle_leaf_root(&Graph::cycle(4), 6, &b()), OracleOutcome::NotFound);
        assert_eq!(oracle_steiner_root(&three_sun(), 4, &b()), OracleOutcome::NotFound);
    }

    #[test]
    fn oracle_reports_inconclusive() {
        let tight = OracleBudget { node_cap: 1, ..OracleBudget::default() };
        assert_eq!(oracle_steiner_root(&Graph::cycle(5), 4, &tight), OracleOutcome::Inconclusive);
    }

    #[test]
    fn oracle_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = oracle_steiner_root(&g, 4, &b());
        assert!(verify_root(t.found().unwrap(), &g, 4));
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn oracle_matches_skeleton_search() {
        for n in 1..=5 {
            for g in connected_graphs(n) {
                for (k, leaf) in [(4, false), (2, false), (3, true), (4, true)] {
                    let o = if leaf { oracle_leaf_root(&g, k, &b()) } else { oracle_steiner_root(&g, k, &b()) };
                    assert_ne!(o, OracleOutcome::Inconclusive);
                    assert_eq!(o.found().is_some(), skeleton_search(&g, k, leaf), "{} k={k} leaf={leaf}", g.to_edge_list());
                }
            }
        }
    }

    #[test]
    fn generators() {
        let (g, t) = random_yes_instance(4, 5, 0, 1);
        assert!(verify_root(&t, &g, 4));
        for seed in 0..50 {
            let (g, t) = random_yes_instance(4, 10, 8, seed);
            assert!(verify_root(&t, &g, 4));
            let (g, t) = random_leaf_instance(6, 8, 5, seed);
            assert!(verify_leaf_root(&t, &g, 6));
        }
        assert_eq!(random_strongly_chordal(1, 0).n(), 1);
        let mut complete = 0;
        for seed in 0..100 {
            let g = random_strongly_chordal(10, seed);
            assert!(g.is_connected());
            assert!(matches!(is_strongly_chordal(&g), Ok(Some(_))));
            complete += usize::from(g.is_complete());
        }
        assert!(complete < 100);
    }

    #[test]
    fn yes_instance_path_power() {
        // n_steiner = 0 and a path-shaped tree gives P_n^4
        let labels = (0..6).map(NodeLabel::Real).collect();
        let t = SteinerTree::from_edges(labels, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 0).unwrap();
        let g = tree_power_graph(&t, 4).unwrap();
        assert_eq!(g.m(), 5 + 4 + 3 + 2);
    }
}
