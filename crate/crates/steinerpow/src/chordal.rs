//! Chordal and strongly chordal recognition, maximal cliques, clique trees,
//! minimal separators and the clique arrangement.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Later neighbors of every vertex form a clique.
    Perfect,
    /// Every vertex is simple in the graph induced by itself and later vertices.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<Vertex>,
    pub kind: OrderKind,
}

impl EliminationOrder {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Maximum cardinality search; the reverse visiting order is a perfect
/// elimination order whenever the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        for v in 0..n {
            if !done[v] && best.is_none_or(|b: Vertex| weight[v] > weight[b]) {
                best = Some(v);
            }
        }
        let v = best.unwrap();
        done[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

pub fn is_perfect_elimination_order(g: &Graph, order: &[Vertex]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
            if later.iter().any(|&w| w != p && !g.has_edge(p, w)) {
                return false;
            }
        }
    }
    true
}

/// Some chordless cycle of length at least four, if one exists.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                // shortest x-y path avoiding N[v] except x,y
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &w in nb {
                    if w != x && w != y {
                        blocked[w] = true;
                    }
                }
                let mut prev = vec![usize::MAX; n];
                prev[x] = x;
                let mut q = std::collections::VecDeque::from([x]);
                while let Some(u) = q.pop_front() {
                    if u == y {
                        break;
                    }
                    for &w in g.neighbors(u) {
                        if !blocked[w] && prev[w] == usize::MAX {
                            prev[w] = u;
                            q.push_back(w);
                        }
                    }
                }
                if prev[y] != usize::MAX {
                    let mut cyc = vec![v];
                    let mut path = vec![y];
                    let mut u = y;
                    while u != x {
                        u = prev[u];
                        path.push(u);
                    }
                    path.reverse();
                    cyc.extend(path);
                    return Some(cyc);
                }
            }
        }
    }
    None
}

/// Perfect elimination order, or a chordless cycle (length >= 4) as witness.
pub fn is_chordal(g: &Graph) -> std::result::Result<EliminationOrder, Vec<Vertex>> {
    let order = mcs_order(g);
    if is_perfect_elimination_order(g, &order) {
        Ok(EliminationOrder { order, kind: OrderKind::Perfect })
    } else {
        Err(chordless_cycle(g).expect("non-chordal graph has a chordless cycle"))
    }
}

fn closed_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for u in 0..n {
        m[u][u] = true;
        for &v in g.neighbors(u) {
            m[u][v] = true;
        }
    }
    m
}

/// Doubly lexical ordering of a 0/1 matrix by alternate stable sorting of rows
/// and columns until both are lexically increasing (vectors compared from the
/// last position backwards). Returns (row order, column order), or None if the
/// iteration cap is hit.
pub fn doubly_lexical_ordering(m: &[Vec<bool>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut rows: Vec<usize> = (0..nr).collect();
    let mut cols: Vec<usize> = (0..nc).collect();
    let cap = 4 * (nr + nc) + 16;
    for _ in 0..cap {
        let row_key = |r: usize, cols: &[usize]| -> Vec<bool> { cols.iter().rev().map(|&c| m[r][c]).collect() };
        let mut new_rows = rows.clone();
        new_rows.sort_by_cached_key(|&r| row_key(r, &cols));
        let col_key = |c: usize, rows: &[usize]| -> Vec<bool> { rows.iter().rev().map(|&r| m[r][c]).collect() };
        let mut new_cols = cols.clone();
        new_cols.sort_by_cached_key(|&c| col_key(c, &new_rows));
        let stable = new_rows == rows && new_cols == cols;
        rows = new_rows;
        cols = new_cols;
        if stable {
            return Some((rows, cols));
        }
    }
    None
}

pub fn is_doubly_lexical(m: &[Vec<bool>], rows: &[usize], cols: &[usize]) -> bool {
    let rk: Vec<Vec<bool>> = rows.iter().map(|&r| cols.iter().rev().map(|&c| m[r][c]).collect()).collect();
    let ck: Vec<Vec<bool>> = cols.iter().map(|&c| rows.iter().rev().map(|&r| m[r][c]).collect()).collect();
    rk.windows(2).all(|w| w[0] <= w[1]) && ck.windows(2).all(|w| w[0] <= w[1])
}

/// True when the ordered matrix has no Γ = [[1,1],[1,0]] submatrix.
pub fn is_gamma_free(m: &[Vec<bool>], rows: &[usize], cols: &[usize]) -> bool {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (ri, rj) = (&m[rows[i]], &m[rows[j]]);
            let mut seen_common = false;
            for &c in cols {
                if seen_common && ri[c] && !rj[c] {
                    return false;
                }
                if ri[c] && rj[c] {
                    seen_common = true;
                }
            }
        }
    }
    true
}

fn is_simple_in(g: &Graph, alive: &[bool], v: Vertex) -> bool {
    let nbh = |u: Vertex| -> Vec<Vertex> {
        let mut s: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| alive[w]).collect();
        s.push(u);
        s.sort_unstable();
        s
    };
    let mut sets: Vec<Vec<Vertex>> = g.neighbors(v).iter().filter(|&&w| alive[w]).map(|&w| nbh(w)).collect();
    sets.push(nbh(v));
    sets.sort_by_key(|s| s.len());
    sets.windows(2).all(|w| VertexSet::from_vec(w[0].clone()).is_subset(&VertexSet::from_vec(w[1].clone())))
}

/// Elimination by repeatedly removing the smallest simple vertex. Succeeds
/// exactly on strongly chordal graphs.
pub fn simple_elimination_order(g: &Graph) -> Option<EliminationOrder> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).find(|&v| alive[v] && is_simple_in(g, &alive, v))?;
        alive[v] = false;
        order.push(v);
    }
    Some(EliminationOrder { order, kind: OrderKind::Strong })
}

pub fn is_simple_elimination_order(g: &Graph, order: &[Vertex]) -> bool {
    let mut alive = vec![true; g.n()];
    for &v in order {
        if !is_simple_in(g, &alive, v) {
            return false;
        }
        alive[v] = false;
    }
    true
}

/// Strong chordality through a doubly lexical ordering of the closed
/// neighborhood matrix and a Γ-freeness check. On acceptance the strong
/// elimination order is returned.
pub fn is_strongly_chordal(g: &Graph) -> Result<Option<EliminationOrder>> {
    if is_chordal(g).is_err() {
        return Err(Error::Contract("is_strongly_chordal requires a chordal graph".into()));
    }
    let m = closed_matrix(g);
    let gamma_free = match doubly_lexical_ordering(&m) {
        Some((rows, cols)) => is_gamma_free(&m, &rows, &cols),
        None => simple_elimination_order(g).is_some(),
    };
    if !gamma_free {
        return Ok(None);
    }
    let order = simple_elimination_order(g);
    debug_assert!(order.is_some(), "Γ-free ordering without simple elimination");
    Ok(order)
}

pub fn maximal_cliques(g: &Graph, peo: &EliminationOrder) -> Vec<VertexSet> {
    let pos = peo.positions();
    let mut cands: Vec<VertexSet> = peo
        .order
        .iter()
        .map(|&v| {
            let mut c: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
            c.push(v);
            VertexSet::from_vec(c)
        })
        .collect();
    cands.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut out: Vec<VertexSet> = Vec::new();
    for c in cands {
        if !out.iter().any(|k| c.is_subset(k)) {
            out.push(c);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    pub cliques: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
    pub root: Option<usize>,
}

impl CliqueTree {
    pub fn label(&self, e: (usize, usize)) -> VertexSet {
        self.cliques[e.0].intersection(&self.cliques[e.1])
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cliques.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Both clique-tree conditions: a tree on the cliques, and the cliques
    /// containing any vertex induce a connected subtree.
    pub fn is_valid(&self) -> bool {
        let k = self.cliques.len();
        if k == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != k - 1 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let mut verts: Vec<Vertex> = self.cliques.iter().flat_map(|c| c.iter()).collect();
        verts.sort_unstable();
        verts.dedup();
        for v in verts {
            let holders: Vec<usize> = (0..k).filter(|&i| self.cliques[i].contains(v)).collect();
            let inner_edges =
                self.edges.iter().filter(|&&(a, b)| self.cliques[a].contains(v) && self.cliques[b].contains(v)).count();
            if inner_edges + 1 != holders.len() {
                return false;
            }
        }
        true
    }
}

/// Clique tree of a connected chordal graph as a maximum-weight spanning tree
/// of the clique intersection graph (Kruskal, deterministic tie-breaking).
pub fn build_clique_tree(g: &Graph) -> Result<CliqueTree> {
    let peo = is_chordal(g).map_err(|_| Error::Contract("build_clique_tree requires a chordal graph".into()))?;
    if !g.is_connected() {
        return Err(Error::Contract("build_clique_tree requires a connected graph".into()));
    }
    let cliques = maximal_cliques(g, &peo);
    Ok(clique_tree_from_cliques(cliques))
}

pub(crate) fn clique_tree_from_cliques(cliques: Vec<VertexSet>) -> CliqueTree {
    let k = cliques.len();
    let mut cand = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let w = cliques[a].intersection(&cliques[b]).len();
            if w > 0 {
                cand.push((w, a, b));
            }
        }
    }
    cand.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut uf: Vec<usize> = (0..k).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let nx = uf[y];
            uf[y] = r;
            y = nx;
        }
        r
    }
    let mut edges = Vec::new();
    for (_, a, b) in cand {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
            edges.push((a, b));
        }
    }
    CliqueTree { cliques, edges, root: None }
}

pub fn minimal_separators(ct: &CliqueTree) -> BTreeMap<VertexSet, usize> {
    let mut out = BTreeMap::new();
    for &e in &ct.edges {
        *out.entry(ct.label(e)).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CiKind {
    MaximalClique,
    MinimalSeparator,
    WeakSeparator,
}

impl CiKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CiKind::MaximalClique => "maximal-clique",
            CiKind::MinimalSeparator => "minimal-separator",
            CiKind::WeakSeparator => "weak-separator",
        }
    }
}

/// All clique intersections with their inclusion relation.
#[derive(Clone, Debug)]
pub struct CliqueArrangement {
    pub nodes: Vec<VertexSet>,
    pub kinds: Vec<CiKind>,
    /// |E_S| for minimal separators, 0 otherwise.
    pub multiplicity: Vec<usize>,
    /// All strict supersets of each node, ascending index.
    pub supersets: Vec<Vec<usize>>,
    /// All strict subsets of each node, ascending index.
    pub subsets: Vec<Vec<usize>>,
    /// Maximal cliques in the order used by `clique_tree`.
    pub cliques: Vec<VertexSet>,
    pub clique_tree: CliqueTree,
    index: BTreeMap<VertexSet, usize>,
}

impl CliqueArrangement {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, x: &VertexSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &VertexSet) -> bool {
        self.index.contains_key(x)
    }

    pub fn is_separator(&self, i: usize) -> bool {
        self.kinds[i] == CiKind::MinimalSeparator
    }

    pub fn separators(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_separator(i))
    }

    /// Maximal cliques containing node `i`.
    pub fn cliques_containing(&self, x: &VertexSet) -> Vec<usize> {
        (0..self.cliques.len()).filter(|&c| x.is_subset(&self.cliques[c])).collect()
    }

    /// Length of the longest strict chain of clique intersections above `i`
    /// (number of nodes in the chain, excluding `i`).
    pub fn chain_above(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.nodes[i].len()));
        let mut h = vec![0usize; self.len()];
        for &i in &order {
            h[i] = self.supersets[i].iter().map(|&j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Text dump of the inclusion DAG: one node per line with its members,
    /// kind, multiplicity and direct supersets.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            let direct: Vec<usize> = self.supersets[i]
                .iter()
                .copied()
                .filter(|&j| !self.supersets[i].iter().any(|&m| self.supersets[m].contains(&j)))
                .collect();
            let _ = write!(s, "{i} {} {}", self.nodes[i], self.kinds[i].as_str());
            if self.kinds[i] == CiKind::MinimalSeparator {
                let _ = write!(s, " mult={}", self.multiplicity[i]);
            }
            let parents: Vec<String> = direct.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, " parents=[{}]", parents.join(","));
        }
        s
    }
}

pub fn clique_arrangement(g: &Graph) -> Result<CliqueArrangement> {
    if is_strongly_chordal(g)?.is_none() {
        return Err(Error::Contract("clique_arrangement requires a strongly chordal graph".into()));
    }
    let ct = build_clique_tree(g)?;
    Ok(arrangement_from_tree(ct))
}

pub(crate) fn arrangement_from_tree(ct: CliqueTree) -> CliqueArrangement {
    let cliques = ct.cliques.clone();
    let seps = minimal_separators(&ct);
    let mut all: BTreeMap<VertexSet, CiKind> = BTreeMap::new();
    for k in &cliques {
        all.insert(k.clone(), CiKind::MaximalClique);
    }
    for a in 0..cliques.len() {
        for b in a + 1..cliques.len() {
            let x = cliques[a].intersection(&cliques[b]);
            if x.is_empty() {
                continue;
            }
            let kind = if seps.contains_key(&x) { CiKind::MinimalSeparator } else { CiKind::WeakSeparator };
            all.entry(x).or_insert(kind);
        }
    }
    let nodes: Vec<VertexSet> = all.keys().cloned().collect();
    let kinds: Vec<CiKind> = all.values().copied().collect();
    let multiplicity = nodes.iter().map(|x| seps.get(x).copied().unwrap_or(0)).collect();
    let n = nodes.len();
    let mut supersets = vec![Vec::new(); n];
    let mut subsets = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if nodes[i].is_strict_subset(&nodes[j]) {
                supersets[i].push(j);
                subsets[j].push(i);
            }
        }
    }
    let index = nodes.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    CliqueArrangement { nodes, kinds, multiplicity, supersets, subsets, cliques, clique_tree: ct, index }
}

/// Longest chain of minimal separators under strict inclusion.
pub fn longest_separator_chain(ca: &CliqueArrangement) -> usize {
    let mut order: Vec<usize> = ca.separators().collect();
    order.sort_by_key(|&i| ca.nodes[i].len());
    let mut best = vec![0usize; ca.len()];
    let mut top = 0;
    for &i in &order {
        let below = ca.subsets[i].iter().filter(|&&j| ca.is_separator(j)).map(|&j| best[j]).max().unwrap_or(0);
        best[i] = below + 1;
        top = top.max(best[i]);
    }
    top
}

/// Passes (true) unless some chain of more than `k` minimal separators is
/// strictly ordered by inclusion.
pub fn separator_chain_filter(ca: &CliqueArrangement, k: usize) -> bool {
    longest_separator_chain(ca) <= k
}
