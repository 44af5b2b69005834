//! Rooted clique trees: the flat tree and the three-phase final tree, with
//! the (weak) convergence predicates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::chordal::{build_clique_tree, minimal_separators, CliqueTree};
use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexSet};

/// Mutable clique tree used by the builders.
struct Work {
    cliques: Vec<VertexSet>,
    adj: Vec<BTreeSet<usize>>,
}

impl Work {
    fn new(ct: &CliqueTree) -> Self {
        let mut adj = vec![BTreeSet::new(); ct.cliques.len()];
        for &(a, b) in &ct.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Work { cliques: ct.cliques.clone(), adj }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for a in 0..self.adj.len() {
            for &b in &self.adj[a] {
                if a < b {
                    e.push((a, b));
                }
            }
        }
        e
    }

    fn label(&self, a: usize, b: usize) -> VertexSet {
        self.cliques[a].intersection(&self.cliques[b])
    }

    fn dist_from(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.adj.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if d[w] == usize::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    fn to_tree(&self) -> CliqueTree {
        CliqueTree { cliques: self.cliques.clone(), edges: self.edges(), root: None }
    }

    fn edges_labeled(&self, s: &VertexSet) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|&(a, b)| self.label(a, b) == *s).collect()
    }

    /// Makes every edge labeled `s` incident to `k` by replacing K K' (K on
    /// the k-K' path) with k K'.
    fn rehang(&mut self, s: &VertexSet, k: usize) {
        loop {
            let d = self.dist_from(k);
            let bad = self.edges_labeled(s).into_iter().find(|&(a, b)| a != k && b != k);
            let Some((a, b)) = bad else { break };
            let (near, far) = if d[a] < d[b] { (a, b) } else { (b, a) };
            self.adj[near].remove(&far);
            self.adj[far].remove(&near);
            self.adj[k].insert(far);
            self.adj[far].insert(k);
        }
    }

    fn parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut p = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    p[w] = Some(u);
                    q.push_back(w);
                }
            }
        }
        p
    }
}

/// Cliques incident to every edge in `edges` (all cliques if `edges` is empty).
fn common_endpoints(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    (0..n).filter(|&k| edges.iter().all(|&(a, b)| a == k || b == k)).collect()
}

fn strict_super_edges(tree: &CliqueTree, s: &VertexSet) -> Vec<(usize, usize)> {
    tree.edges.iter().copied().filter(|&e| s.is_strict_subset(&tree.label(e))).collect()
}

fn super_edges(tree: &CliqueTree, s: &VertexSet) -> Vec<(usize, usize)> {
    tree.edges.iter().copied().filter(|&e| s.is_subset(&tree.label(e))).collect()
}

fn own_edges(tree: &CliqueTree, s: &VertexSet) -> Vec<(usize, usize)> {
    tree.edges.iter().copied().filter(|&e| tree.label(e) == *s).collect()
}

/// Some clique is incident to all edges labeled by strict supersets of `s`.
pub fn is_weakly_convergent(tree: &CliqueTree, s: &VertexSet) -> bool {
    !common_endpoints(tree.cliques.len(), &strict_super_edges(tree, s)).is_empty()
}

/// Some clique is incident to all edges labeled by `s` or a strict superset.
pub fn is_convergent(tree: &CliqueTree, s: &VertexSet) -> bool {
    let mut e = strict_super_edges(tree, s);
    e.extend(own_edges(tree, s));
    !common_endpoints(tree.cliques.len(), &e).is_empty()
}

#[derive(Clone, Debug)]
pub struct RootedCliqueTree {
    pub tree: CliqueTree,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Children sorted by decreasing separator size, then index.
    pub children: Vec<Vec<usize>>,
    /// Children before parents; the root is last.
    pub postorder: Vec<usize>,
    /// S_i = K_i ∩ K_p(i); empty at the root.
    pub sep: Vec<VertexSet>,
}

impl RootedCliqueTree {
    pub fn from_tree(tree: CliqueTree, root: usize) -> Self {
        let k = tree.cliques.len();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &tree.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        let mut bfs = Vec::new();
        while let Some(u) = q.pop_front() {
            bfs.push(u);
            let mut nb = adj[u].clone();
            nb.sort_unstable();
            for w in nb {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    q.push_back(w);
                }
            }
        }
        let sep: Vec<VertexSet> = (0..k)
            .map(|i| parent[i].map_or_else(VertexSet::new, |p| tree.cliques[i].intersection(&tree.cliques[p])))
            .collect();
        let mut children = vec![Vec::new(); k];
        for i in 0..k {
            if let Some(p) = parent[i] {
                children[p].push(i);
            }
        }
        for c in &mut children {
            c.sort_by(|&a, &b| sep[b].len().cmp(&sep[a].len()).then(a.cmp(&b)));
        }
        let mut postorder = Vec::with_capacity(k);
        fn post(i: usize, ch: &[Vec<usize>], out: &mut Vec<usize>) {
            for &c in &ch[i] {
                post(c, ch, out);
            }
            out.push(i);
        }
        if k > 0 {
            post(root, &children, &mut postorder);
        }
        let mut tree = tree;
        tree.root = Some(root);
        RootedCliqueTree { tree, root, parent, children, postorder, sep }
    }

    pub fn len(&self) -> usize {
        self.tree.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.cliques.is_empty()
    }

    pub fn clique(&self, i: usize) -> &VertexSet {
        &self.tree.cliques[i]
    }

    pub fn subtree(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut j = 0;
        while j < out.len() {
            let u = out[j];
            j += 1;
            out.extend(self.children[u].iter().copied());
        }
        out
    }

    /// V_i: vertices of the cliques in the subtree of K_i.
    pub fn vertices(&self, i: usize) -> VertexSet {
        let mut v: Vec<Vertex> = Vec::new();
        for c in self.subtree(i) {
            v.extend(self.tree.cliques[c].iter());
        }
        VertexSet::from_vec(v)
    }

    /// W_i = V_i \ S_i.
    pub fn private(&self, i: usize) -> VertexSet {
        self.vertices(i).difference(&self.sep[i])
    }

    /// G_i with its vertex map.
    pub fn subgraph(&self, g: &Graph, i: usize) -> (Graph, Vec<Vertex>) {
        g.induced_subgraph(&self.vertices(i)).expect("subtree vertices are in the graph")
    }

    /// Minimal separators of G_i: labels of edges inside the subtree of K_i.
    pub fn separators_below(&self, i: usize) -> BTreeSet<VertexSet> {
        self.subtree(i).into_iter().filter(|&c| c != i).map(|c| self.sep[c].clone()).collect()
    }

    pub fn dump(&self) -> String {
        let seps = minimal_separators(&self.tree);
        let mut s = String::new();
        for &i in &self.postorder {
            let _ = write!(s, "K{i} {} parent=", self.tree.cliques[i]);
            match self.parent[i] {
                Some(p) => {
                    let _ = write!(s, "K{p} S={}", self.sep[i]);
                }
                None => {
                    let _ = write!(s, "- S={{}}");
                }
            }
            let _ = writeln!(s);
        }
        for sep in seps.keys() {
            let _ = writeln!(
                s,
                "sep {} weakly={} convergent={}",
                sep,
                is_weakly_convergent(&self.tree, sep),
                is_convergent(&self.tree, sep)
            );
        }
        s
    }
}

/// K_0: a largest maximal clique, ties by lexicographic member order.
pub fn default_root(cliques: &[VertexSet]) -> usize {
    let mut best = 0;
    for i in 1..cliques.len() {
        let (a, b) = (&cliques[i], &cliques[best]);
        if a.len() > b.len() || (a.len() == b.len() && a < b) {
            best = i;
        }
    }
    best
}

/// Separators by decreasing size, ties by lexicographic order.
fn separator_order(tree: &CliqueTree) -> Vec<VertexSet> {
    let mut seps: Vec<VertexSet> = minimal_separators(tree).into_keys().collect();
    seps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    seps
}

fn closest_to_root(w: &Work, root: usize, cands: impl Iterator<Item = usize>) -> Option<usize> {
    let d = w.dist_from(root);
    cands.min_by_key(|&k| (d[k], k))
}

pub fn build_flat_clique_tree(g: &Graph) -> Result<RootedCliqueTree> {
    let ct = build_clique_tree(g)?;
    Ok(flat_from(ct))
}

pub(crate) fn flat_from(ct: CliqueTree) -> RootedCliqueTree {
    let root = default_root(&ct.cliques);
    let mut w = Work::new(&ct);
    for s in separator_order(&ct) {
        let cur = w.to_tree();
        let ends: BTreeSet<usize> = super_edges(&cur, &s).into_iter().flat_map(|(a, b)| [a, b]).collect();
        if let Some(k) = closest_to_root(&w, root, ends.into_iter()) {
            w.rehang(&s, k);
        }
    }
    RootedCliqueTree::from_tree(w.to_tree(), root)
}

pub fn build_final_clique_tree(g: &Graph) -> Result<RootedCliqueTree> {
    let ct = build_clique_tree(g)?;
    Ok(final_from(ct))
}

pub(crate) fn final_from(ct: CliqueTree) -> RootedCliqueTree {
    let n = ct.cliques.len();
    let root = default_root(&ct.cliques);
    let order = separator_order(&ct);
    let mut w = Work::new(&ct);

    // Phase 1: unrooted, lexicographically maximal incidence vector.
    for s in &order {
        let cur = w.to_tree();
        let containing: Vec<&VertexSet> = order.iter().filter(|x| s.is_subset(x)).collect();
        let vec_of = |k: usize| -> Vec<bool> {
            containing.iter().map(|x| own_edges(&cur, x).iter().any(|&(a, b)| a == k || b == k)).collect()
        };
        let mut best = 0;
        let mut best_v = vec_of(0);
        for k in 1..n {
            let v = vec_of(k);
            if v > best_v {
                best = k;
                best_v = v;
            }
        }
        w.rehang(s, best);
    }

    // Phase 2: rooted, highest valid clique.
    let mut k2 = std::collections::BTreeMap::new();
    for s in &order {
        let cur = w.to_tree();
        let ends: BTreeSet<usize> = super_edges(&cur, s).into_iter().flat_map(|(a, b)| [a, b]).collect();
        let strict = strict_super_edges(&cur, s);
        let need_all = s.len() >= 3 && is_convergent(&cur, s);
        let cands = ends.into_iter().filter(|&k| !need_all || strict.iter().all(|&(a, b)| a == k || b == k));
        if let Some(k) = closest_to_root(&w, root, cands) {
            w.rehang(s, k);
            k2.insert(s.clone(), k);
        }
    }

    // Phase 3: push the edges of non-convergent separators to one child.
    for s in &order {
        let Some(&kk2) = k2.get(s) else { continue };
        let cur = w.to_tree();
        let mut k3 = kk2;
        if s.len() >= 3 && !is_convergent(&cur, s) {
            let parent = w.parents(root);
            let strict = strict_super_edges(&cur, s);
            let child = (0..n)
                .filter(|&c| parent[c] == Some(kk2))
                .find(|&c| strict.iter().all(|&(a, b)| a == c || b == c));
            if let Some(c) = child {
                k3 = c;
            }
        }
        if k3 == kk2 {
            continue;
        }
        let parent = w.parents(root);
        let movers: Vec<usize> = (0..n)
            .filter(|&c| c != k3 && parent[c] == Some(kk2) && w.label(c, kk2) == *s)
            .collect();
        for c in movers {
            w.adj[c].remove(&kk2);
            w.adj[kk2].remove(&c);
            w.adj[c].insert(k3);
            w.adj[k3].insert(c);
        }
    }
    let out = RootedCliqueTree::from_tree(w.to_tree(), root);
    debug_assert!(out.tree.is_valid());
    out
}

/// Flat property: for every non-root K_i and every child K_j of its
/// parent, no minimal separator of G_j is contained in S_i.
pub fn flat_property_holds(rt: &RootedCliqueTree) -> bool {
    for i in 0..rt.len() {
        let Some(p) = rt.parent[i] else { continue };
        for &j in &rt.children[p] {
            if rt.separators_below(j).iter().any(|x| x.is_subset(&rt.sep[i])) {
                return false;
            }
        }
    }
    true
}

/// Weakly convergent S_i with |S_i| >= 3 are convergent.
pub fn large_separators_convergent(rt: &RootedCliqueTree) -> bool {
    (0..rt.len()).filter(|&i| rt.parent[i].is_some()).all(|i| {
        let s = &rt.sep[i];
        s.len() < 3 || !is_weakly_convergent(&rt.tree, s) || is_convergent(&rt.tree, s)
    })
}

/// Every minimal separator of G_i inside S_i is convergent, has at
/// least three vertices and is strictly inside a minimal separator of G_i.
pub fn inner_separators_hold(rt: &RootedCliqueTree) -> bool {
    (0..rt.len()).filter(|&i| rt.parent[i].is_some()).all(|i| {
        let below = rt.separators_below(i);
        below.iter().filter(|x| x.is_subset(&rt.sep[i])).all(|x| {
            is_convergent(&rt.tree, x) && x.len() >= 3 && below.iter().any(|y| x.is_strict_subset(y))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e).unwrap()
    }

    #[test]
    fn complete_graph_single_node() {
        let rt = build_final_clique_tree(&Graph::complete(5)).unwrap();
        assert_eq!(rt.len(), 1);
        assert_eq!(rt.postorder, vec![0]);
        assert!(rt.sep[0].is_empty());
    }

    #[test]
    fn p3_trees() {
        for rt in [build_final_clique_tree(&Graph::path(3)).unwrap(), build_flat_clique_tree(&Graph::path(3)).unwrap()] {
            assert_eq!(rt.len(), 2);
            assert!(rt.tree.is_valid());
            assert!(flat_property_holds(&rt));
            assert!(large_separators_convergent(&rt));
            assert!(inner_separators_hold(&rt));
        }
    }

    #[test]
    fn convergence_definitions() {
        let ct = build_clique_tree(&star(3)).unwrap();
        let c = VertexSet::singleton(0);
        assert!(is_weakly_convergent(&ct, &c));
        // center separator labels two edges: convergent iff they share a clique
        let shared = common_endpoints(ct.cliques.len(), &own_edges(&ct, &c));
        assert_eq!(is_convergent(&ct, &c), !shared.is_empty());
        assert!(is_convergent(&ct, &c));
    }

    #[test]
    fn tree_input_flat() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let rt = build_flat_clique_tree(&g).unwrap();
        assert!(rt.tree.is_valid());
        assert!(flat_property_holds(&rt));
        let rt = build_final_clique_tree(&g).unwrap();
        assert!(rt.tree.is_valid());
        assert!(large_separators_convergent(&rt) && inner_separators_hold(&rt));
    }

    #[test]
    fn children_sorted_by_separator_size() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (0, 4), (1, 4), (4, 5)]).unwrap();
        let rt = build_final_clique_tree(&g).unwrap();
        for ch in &rt.children {
            assert!(ch.windows(2).all(|w| rt.sep[w[0]].len() >= rt.sep[w[1]].len()));
        }
    }
}
