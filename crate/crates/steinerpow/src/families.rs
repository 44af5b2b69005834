//! Candidate subtrees T<X> for clique intersections X: a shared enumeration
//! engine plus the named family operations built on it.
//!
//! A candidate for a clique K (or separator S) is a tree whose real nodes are
//! exactly the members, all leaves real, rooted at a center of radius <= 2.
//! Every filter below is a property of every 4-Steiner root, except the
//! free-vertex rules, which hold in a well-structured root and can be
//! switched off through `EngineConfig`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::chordal::{CiKind, CliqueArrangement};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::tree::{
    canonical_form, classify_vertices, free_vertex_properties_hold, spanned_nodes, tree_metrics, NodeLabel,
    SteinerTree,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Apply the free-vertex placement rules.
    pub well_structured: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { well_structured: true }
    }
}

/// Key constraint from one child: H<sep> must match one of `fragments` up to
/// Steiner equivalence.
pub struct ChildKeys<'a> {
    pub sep: VertexSet,
    pub fragments: Vec<&'a SteinerTree>,
}

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Node {
    label: Option<Vertex>,
    parent: usize,
    depth: u8,
    private: bool,
}

struct Constraint {
    set: VertexSet,
    bound: usize,
    is_max_clique: bool,
    is_separator: bool,
    free: VertexSet,
}

struct Engine<'a> {
    ca: &'a CliqueArrangement,
    cfg: EngineConfig,
    u: VertexSet,
    is_clique: bool,
    order: Vec<Vertex>,
    forced_free: Vec<Vertex>,
    cons: Vec<Constraint>,
    /// constraints (with >= 2 members) containing each vertex
    cons_of: HashMap<Vertex, Vec<usize>>,
    children: &'a [ChildKeys<'a>],
    child_of: HashMap<Vertex, Vec<usize>>,
    proj: HashMap<(usize, Vec<Vertex>), HashSet<String>>,
    nodes: Vec<Node>,
    pos: HashMap<Vertex, usize>,
    seen: HashSet<String>,
    out: Vec<SteinerTree>,
}

fn dist(nodes: &[Node], mut a: usize, mut b: usize) -> usize {
    let mut d = 0;
    while a != b {
        if nodes[a].depth >= nodes[b].depth {
            a = nodes[a].parent;
        } else {
            b = nodes[b].parent;
        }
        d += 1;
    }
    d
}

fn chain(nodes: &[Node], a: usize) -> Vec<usize> {
    let mut c = vec![a];
    let mut x = a;
    while nodes[x].parent != NONE {
        x = nodes[x].parent;
        c.push(x);
    }
    c.reverse();
    c
}

/// Nodes of the subtree spanned by `ys` in a rooted tree.
fn span(nodes: &[Node], ys: &[usize]) -> Vec<usize> {
    if ys.len() == 1 {
        return ys.to_vec();
    }
    let chains: Vec<Vec<usize>> = ys.iter().map(|&y| chain(nodes, y)).collect();
    let mut lca = 0;
    let minlen = chains.iter().map(Vec::len).min().unwrap();
    while lca + 1 < minlen && chains.iter().all(|c| c[lca + 1] == chains[0][lca + 1]) {
        lca += 1;
    }
    let mut out: Vec<usize> = chains.iter().flat_map(|c| c[lca..].iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn to_tree(nodes: &[Node], keep: &[usize]) -> SteinerTree {
    let idx: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let labels = keep.iter().map(|&x| nodes[x].label.map_or(NodeLabel::Steiner, NodeLabel::Real)).collect();
    let edges: Vec<(usize, usize)> = keep
        .iter()
        .filter_map(|&x| idx.get(&nodes[x].parent).map(|&p| (idx[&x], p)))
        .collect();
    SteinerTree::from_edges(labels, &edges, 0).expect("spanned nodes form a tree")
}

/// Projection of a fragment onto the members `ys`: the spanned subtree with
/// other reals turned Steiner.
fn project(f: &SteinerTree, ys: &[Vertex]) -> String {
    let rn = f.real_nodes();
    let targets: Vec<usize> = ys.iter().map(|v| rn[v]).collect();
    let keep = spanned_nodes(f, &targets);
    let (mut sub, _) = f.extract(&keep);
    for i in 0..sub.len() {
        if let NodeLabel::Real(v) = sub.label(i) {
            if !ys.contains(&v) {
                sub.set_label(i, NodeLabel::Steiner);
            }
        }
    }
    canonical_form(&sub)
}

impl<'a> Engine<'a> {
    fn new(
        u: &VertexSet,
        ca: &'a CliqueArrangement,
        is_clique: bool,
        children: &'a [ChildKeys<'a>],
        cfg: EngineConfig,
    ) -> Result<Self> {
        let ui = ca.index_of(u).ok_or(Error::Input(format!("{u} is not a clique intersection")))?;
        let chain = ca.chain_above();
        let multi = ca.cliques.len() > 1;
        let mut cons = Vec::new();
        for &x in ca.subsets[ui].iter().chain(std::iter::once(&ui)) {
            let free = if cfg.well_structured { classify_vertices(&ca.nodes[x], ca)?.free() } else { VertexSet::new() };
            cons.push(Constraint {
                set: ca.nodes[x].clone(),
                bound: 4usize.saturating_sub(chain[x]),
                is_max_clique: ca.kinds[x] == CiKind::MaximalClique && multi,
                is_separator: ca.is_separator(x),
                free,
            });
        }
        let mut cons_of: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, c) in cons.iter().enumerate() {
            if c.set.len() >= 2 {
                for v in c.set.iter() {
                    cons_of.entry(v).or_default().push(i);
                }
            }
        }
        let mut child_of: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (j, c) in children.iter().enumerate() {
            for v in c.sep.iter() {
                child_of.entry(v).or_default().push(j);
            }
        }
        // free members of a maximal clique sit at depth 2 under private hubs
        let forced: VertexSet = if cfg.well_structured && is_clique && multi {
            cons.last().unwrap().free.clone()
        } else {
            VertexSet::new()
        };
        let mut order: Vec<Vertex> = u.iter().filter(|&v| !forced.contains(v)).collect();
        let weight = |v: Vertex| {
            cons_of.get(&v).map_or(0, Vec::len) + 2 * child_of.get(&v).map_or(0, Vec::len)
        };
        order.sort_by_key(|&v| (std::cmp::Reverse(weight(v)), v));
        Ok(Engine {
            ca,
            cfg,
            u: u.clone(),
            is_clique,
            order,
            forced_free: forced.into_vec(),
            cons,
            cons_of,
            children,
            child_of,
            proj: HashMap::new(),
            nodes: Vec::new(),
            pos: HashMap::new(),
            seen: HashSet::new(),
            out: Vec::new(),
        })
    }

    fn run(mut self) -> Vec<SteinerTree> {
        // Steiner root
        self.nodes = vec![Node { label: None, parent: NONE, depth: 0, private: false }];
        self.pos.clear();
        self.place(0);
        for ri in 0..self.order.len() {
            let r = self.order[ri];
            self.nodes = vec![Node { label: Some(r), parent: NONE, depth: 0, private: false }];
            self.pos.clear();
            self.pos.insert(r, 0);
            if self.partial_ok(r) {
                self.place(0);
            }
        }
        self.out
    }

    fn placed_of(&self, set: &VertexSet) -> Vec<Vertex> {
        set.iter().filter(|v| self.pos.contains_key(v)).collect()
    }

    /// Prefix checks after `v` got its node (labels only turn real, spans
    /// only grow, so every violation here is final).
    fn partial_ok(&mut self, v: Vertex) -> bool {
        let node_v = self.pos[&v];
        // a claimed hub may lie inside spans of constraints not containing v
        let claimed = self.nodes.iter().any(|n| n.parent == node_v);
        let idxs: Vec<usize> = if claimed {
            (0..self.cons.len()).collect()
        } else {
            self.cons_of.get(&v).cloned().unwrap_or_default()
        };
        for ci in idxs {
            let c = &self.cons[ci];
            let ys: Vec<usize> = c.set.iter().filter_map(|x| self.pos.get(&x).copied()).collect();
            if ys.len() < 2 {
                continue;
            }
            let sp = span(&self.nodes, &ys);
            if sp.iter().any(|&x| self.nodes[x].label.is_some_and(|l| !c.set.contains(l))) {
                return false;
            }
            let mut diam = 0;
            for a in 0..ys.len() {
                for b in a + 1..ys.len() {
                    diam = diam.max(dist(&self.nodes, ys[a], ys[b]));
                }
            }
            if diam > c.bound {
                return false;
            }
        }
        for j in self.child_of.get(&v).cloned().unwrap_or_default() {
            let ys = self.placed_of(&self.children[j].sep);
            if ys.len() < 2 {
                continue;
            }
            let nodes: Vec<usize> = ys.iter().map(|y| self.pos[y]).collect();
            let sp = span(&self.nodes, &nodes);
            let mut t = to_tree(&self.nodes, &sp);
            for i in 0..t.len() {
                if let NodeLabel::Real(x) = t.label(i) {
                    if !ys.contains(&x) {
                        t.set_label(i, NodeLabel::Steiner);
                    }
                }
            }
            let code = canonical_form(&t);
            let key = (j, ys);
            if !self.proj.contains_key(&key) {
                let set: HashSet<String> = self.children[j].fragments.iter().map(|f| project(f, &key.1)).collect();
                self.proj.insert(key.clone(), set);
            }
            if !self.proj[&key].contains(&code) {
                return false;
            }
        }
        true
    }

    fn push(&mut self, label: Option<Vertex>, parent: usize, private: bool) -> usize {
        let depth = if parent == NONE { 0 } else { self.nodes[parent].depth + 1 };
        self.nodes.push(Node { label, parent, depth, private });
        if let Some(v) = label {
            self.pos.insert(v, self.nodes.len() - 1);
        }
        self.nodes.len() - 1
    }

    fn try_with(&mut self, v: Vertex, i: usize, f: impl FnOnce(&mut Self)) {
        let saved_len = self.nodes.len();
        let saved: Vec<Option<Vertex>> = self.nodes.iter().map(|n| n.label).collect();
        f(self);
        if self.partial_ok(v) {
            self.place(i + 1);
        }
        self.nodes.truncate(saved_len);
        for (n, l) in self.nodes.iter_mut().zip(saved) {
            n.label = l;
        }
        self.pos.remove(&v);
    }

    fn place(&mut self, i: usize) {
        if i == self.order.len() {
            self.place_free(0);
            return;
        }
        let v = self.order[i];
        if self.pos.contains_key(&v) {
            self.place(i + 1);
            return;
        }
        // depth 1, new node
        self.try_with(v, i, |e| {
            e.push(Some(v), 0, false);
        });
        let depth1: Vec<usize> = (1..self.nodes.len()).filter(|&x| self.nodes[x].depth == 1).collect();
        for &h in &depth1 {
            let n = &self.nodes[h];
            if n.private {
                continue;
            }
            // claim an unlabeled hub
            if n.label.is_none() {
                self.try_with(v, i, |e| {
                    e.nodes[h].label = Some(v);
                    e.pos.insert(v, h);
                });
            }
            // depth 2 under an existing depth-1 node
            self.try_with(v, i, |e| {
                e.push(Some(v), h, false);
            });
        }
        // depth 2 under a new hub
        self.try_with(v, i, |e| {
            let h = e.push(None, 0, false);
            e.push(Some(v), h, false);
        });
    }

    fn place_free(&mut self, i: usize) {
        if i == self.forced_free.len() {
            self.finish();
            return;
        }
        let v = self.forced_free[i];
        let len = self.nodes.len();
        let h = self.push(None, 0, true);
        self.push(Some(v), h, true);
        if self.partial_ok(v) {
            self.place_free(i + 1);
        }
        self.nodes.truncate(len);
        self.pos.remove(&v);
    }

    fn finish(&mut self) {
        let n = self.nodes.len();
        if self.nodes[0].label.is_none() && (1..n).filter(|&x| self.nodes[x].parent == 0).count() < 2 {
            return;
        }
        let all: Vec<usize> = (0..n).collect();
        let t = to_tree(&self.nodes, &all);
        let m = tree_metrics(&t, None);
        if !m.center.contains(&0) {
            return;
        }
        let code = canonical_form(&t);
        if self.seen.contains(&code) {
            return;
        }
        if !self.final_ok(&t, &m.center) {
            return;
        }
        self.seen.insert(code);
        self.out.push(t);
    }

    fn final_ok(&self, t: &SteinerTree, center: &[usize]) -> bool {
        let d = t.all_distances();
        let rn = t.real_nodes();
        for c in &self.cons {
            let targets: Vec<usize> = c.set.iter().map(|v| rn[&v]).collect();
            let sub = spanned_nodes(t, &targets);
            if sub.iter().any(|&x| t.label(x).vertex().is_some_and(|v| !c.set.contains(v))) {
                return false;
            }
            let diam = targets.iter().flat_map(|&a| targets.iter().map(move |&b| (a, b))).map(|(a, b)| d[a][b]).max().unwrap();
            if diam > c.bound {
                return false;
            }
            // growing T<X> by any other member must grow its diameter
            for y in self.u.iter().filter(|&y| !c.set.contains(y)) {
                if targets.iter().map(|&x| d[rn[&y]][x]).max().unwrap() <= diam {
                    return false;
                }
            }
            if diam == 3 && c.set.len() >= 2 {
                let sub_center = tree_metrics(t, Some(&sub)).center;
                if self.is_clique && c.set != self.u {
                    // a bistar inside a clique holds the clique's center and
                    // lies in exactly two maximal cliques
                    if !center.iter().all(|x| sub_center.contains(x)) || center.len() >= sub_center.len() {
                        return false;
                    }
                    if self.ca.cliques_containing(&c.set).len() != 2 {
                        return false;
                    }
                }
                if c.is_separator && !self.light_center_ok(t, &c.set, &sub_center) {
                    return false;
                }
            }
            if self.cfg.well_structured {
                let free: Vec<usize> = c.free.iter().map(|v| rn[&v]).collect();
                if !free_vertex_properties_hold(
                    &sub,
                    &free,
                    c.is_max_clique,
                    &|a, b| d[a][b],
                    &|a| t.degree(a),
                    &|a| t.label(a).is_real(),
                ) {
                    return false;
                }
            }
        }
        true
    }

    /// A separator bistar whose centers form a light part needs a heavy part
    /// strictly containing them.
    fn light_center_ok(&self, t: &SteinerTree, s: &VertexSet, sub_center: &[usize]) -> bool {
        let cv: Vec<Vertex> = sub_center.iter().filter_map(|&x| t.label(x).vertex()).collect();
        if cv.len() != 2 {
            return true;
        }
        let pair = VertexSet::from_vec(cv);
        if !self.ca.contains(&pair) {
            return true;
        }
        self.ca.nodes.iter().any(|x| x.len() >= 3 && pair.is_strict_subset(x) && x.is_strict_subset(s))
    }
}

/// All candidate trees H for the clique intersection `u` (a maximal clique
/// when `is_clique`), restricted by the children's fragment keys.
pub fn enumerate_candidates(
    u: &VertexSet,
    ca: &CliqueArrangement,
    is_clique: bool,
    children: &[ChildKeys<'_>],
    cfg: EngineConfig,
) -> Result<Vec<SteinerTree>> {
    if u.is_empty() {
        return Err(Error::Input("empty target set".into()));
    }
    Ok(Engine::new(u, ca, is_clique, children, cfg)?.run())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts {
    pub heavy: Vec<VertexSet>,
    pub light: Vec<VertexSet>,
    /// Sum of the sizes of all strict sub-intersections.
    pub total: usize,
}

impl Parts {
    /// Linear size bound on the sub-intersections (4|S|); exceeding it is
    /// reported, not acted on.
    pub fn within_linear_bound(&self, s: &VertexSet) -> bool {
        self.total <= 4 * s.len()
    }
}

/// Strict sub-intersections of `s` of size >= 3 (heavy) and exactly 2 (light).
pub fn heavy_light_parts(s: &VertexSet, ca: &CliqueArrangement) -> Result<Parts> {
    let si = ca.index_of(s).ok_or(Error::Input(format!("{s} is not a clique intersection")))?;
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    let mut total = 0;
    for &x in &ca.subsets[si] {
        let x = &ca.nodes[x];
        total += x.len();
        match x.len() {
            0 | 1 => {}
            2 => light.push(x.clone()),
            _ => heavy.push(x.clone()),
        }
    }
    Ok(Parts { heavy, light, total })
}

/// Members v of `s` with a clique intersection X such that X ∩ s = {v} and
/// |X ∩ k| >= 2 and X does not contain s. `s` must lie in exactly two maximal cliques, one being `k`.
pub fn k_dependent_vertices(s: &VertexSet, k: &VertexSet, ca: &CliqueArrangement) -> Result<VertexSet> {
    let holders = ca.cliques_containing(s);
    if holders.len() != 2 || !holders.iter().any(|&c| ca.cliques[c] == *k) {
        return Err(Error::Contract(format!("{s} must lie in exactly two maximal cliques including {k}")));
    }
    let mut out = Vec::new();
    for x in &ca.nodes {
        let a = x.intersection(s);
        if a.len() == 1 && a.len() < s.len() && x.intersection(k).len() >= 2 {
            out.push(a.as_slice()[0]);
        }
    }
    Ok(VertexSet::from_vec(out))
}

/// Second center of a bistar on `s` given the leaf set `r` of the first
/// center `c` (None for Steiner). Returns None for a fresh Steiner node.
pub fn canonical_bistar_second_center(
    s: &VertexSet,
    k: &VertexSet,
    r: &VertexSet,
    c: Option<Vertex>,
    ca: &CliqueArrangement,
) -> Result<Option<Vertex>> {
    let rest: VertexSet = r.iter().filter(|&v| Some(v) != c).collect();
    for x in &ca.nodes {
        if x.is_strict_subset(s) && !x.is_subset(r) && !x.intersection(&rest).is_empty() {
            let first = x.intersection(&rest).iter().next();
            return Ok(first);
        }
    }
    let dep = k_dependent_vertices(s, k, ca)?;
    let found = rest.iter().find(|&v| dep.contains(v));
    Ok(found)
}

/// Candidate trees T<S> for a minimal separator.
pub fn separator_family(s: &VertexSet, ca: &CliqueArrangement, cfg: EngineConfig) -> Result<Vec<SteinerTree>> {
    let si = ca.index_of(s).ok_or(Error::Input(format!("{s} is not a clique intersection")))?;
    if !ca.is_separator(si) {
        return Err(Error::Contract(format!("{s} is not a minimal separator")));
    }
    enumerate_candidates(s, ca, false, &[], cfg)
}

/// A root of G[K_i] with its profile dist(r, K_i \ S_i) over the canonical
/// node order of H<S_i>.
#[derive(Clone, Debug)]
pub struct PartialSolution {
    pub tree: SteinerTree,
    pub key: String,
    pub fragment_nodes: Vec<usize>,
    pub profile: Vec<u8>,
}

/// Fragment H<S> of a candidate: its canonical key and the host node ids in
/// canonical order.
pub fn fragment_of(h: &SteinerTree, s: &VertexSet) -> (String, Vec<usize>, SteinerTree) {
    if s.is_empty() {
        return (String::new(), Vec::new(), SteinerTree::single(NodeLabel::Steiner));
    }
    let rn = h.real_nodes();
    let targets: Vec<usize> = s.iter().map(|v| rn[&v]).collect();
    let keep = spanned_nodes(h, &targets);
    let (sub, map) = h.extract(&keep);
    let (key, order) = crate::tree::canonical_form_with_order(&sub);
    let nodes = order.iter().map(|&x| map[x]).collect();
    (key, nodes, sub)
}

pub fn leaf_clique_family(
    ki: &VertexSet,
    s_i: &VertexSet,
    ca: &CliqueArrangement,
    cfg: EngineConfig,
) -> Result<Vec<PartialSolution>> {
    let hs = enumerate_candidates(ki, ca, true, &[], cfg)?;
    let private = ki.difference(s_i);
    Ok(hs
        .into_iter()
        .map(|h| {
            let (key, nodes, _) = fragment_of(&h, s_i);
            let rn = h.real_nodes();
            let d = h.all_distances();
            let profile = nodes
                .iter()
                .map(|&r| private.iter().map(|w| d[r][rn[&w]]).min().unwrap_or(5).min(5) as u8)
                .collect();
            PartialSolution { tree: h, key, fragment_nodes: nodes, profile }
        })
        .collect())
}

/// Internal-family entry: a (partial) T<Y ∪ C> with its center and the
/// separators left pending as thin branches.
#[derive(Clone, Debug)]
pub struct InternalFamilyEntry {
    pub full: SteinerTree,
    pub partial: SteinerTree,
    pub center: Vec<usize>,
    pub y: VertexSet,
    pub pending: Vec<VertexSet>,
}

fn full_entry(h: SteinerTree, ki: &VertexSet) -> InternalFamilyEntry {
    let center = tree_metrics(&h, None).center;
    InternalFamilyEntry { partial: h.clone(), full: h, center, y: ki.clone(), pending: Vec::new() }
}

/// Candidates for an internal clique with the children's keys applied.
pub fn internal_family(
    ki: &VertexSet,
    ca: &CliqueArrangement,
    children: &[ChildKeys<'_>],
    cfg: EngineConfig,
) -> Result<Vec<InternalFamilyEntry>> {
    Ok(enumerate_candidates(ki, ca, true, children, cfg)?.into_iter().map(|h| full_entry(h, ki)).collect())
}

fn separators_inside(ki: &VertexSet, ca: &CliqueArrangement) -> Vec<VertexSet> {
    ca.separators().map(|i| ca.nodes[i].clone()).filter(|s| s.is_strict_subset(ki)).collect()
}

fn sub_diam(h: &SteinerTree, s: &VertexSet) -> usize {
    let rn = h.real_nodes();
    let d = h.all_distances();
    s.iter().flat_map(|a| s.iter().map(move |b| (a, b))).map(|(a, b)| d[rn[&a]][rn[&b]]).max().unwrap_or(0)
}

/// Entries in which some separator inside K_i spans a bistar.
pub fn bistar_internal_family(
    ki: &VertexSet,
    ca: &CliqueArrangement,
    entries: &[InternalFamilyEntry],
) -> Vec<InternalFamilyEntry> {
    let seps = separators_inside(ki, ca);
    entries.iter().filter(|e| seps.iter().any(|s| sub_diam(&e.full, s) == 3)).cloned().collect()
}

/// Thin branches of a diameter-4 candidate: separators S (|S| >= 2) whose
/// T<S> minus the center is a whole component of H minus the center, and no
/// other separator's subtree meets both the center and that component.
pub fn thin_branches(h: &SteinerTree, ki: &VertexSet, ca: &CliqueArrangement) -> Vec<VertexSet> {
    let m = tree_metrics(h, None);
    if m.diameter != 4 {
        return Vec::new();
    }
    let c = m.center[0];
    let rn = h.real_nodes();
    let seps = separators_inside(ki, ca);
    // component id of every non-center node
    let mut comp = vec![usize::MAX; h.len()];
    for (ci, &start) in h.neighbors(c).iter().enumerate() {
        let mut stack = vec![start];
        comp[start] = ci;
        while let Some(x) = stack.pop() {
            for &y in h.neighbors(x) {
                if y != c && comp[y] == usize::MAX {
                    comp[y] = ci;
                    stack.push(y);
                }
            }
        }
    }
    let spans: Vec<Vec<usize>> =
        seps.iter().map(|s| spanned_nodes(h, &s.iter().map(|v| rn[&v]).collect::<Vec<_>>())).collect();
    let mut out = Vec::new();
    for (i, s) in seps.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        let rest: Vec<usize> = spans[i].iter().copied().filter(|&x| x != c).collect();
        if rest.is_empty() {
            continue;
        }
        let cid = comp[rest[0]];
        if rest.iter().any(|&x| comp[x] != cid) || (0..h.len()).filter(|&x| comp[x] == cid).count() != rest.len() {
            continue;
        }
        let touched = spans.iter().enumerate().any(|(j, sp)| {
            j != i && sp.contains(&c) && sp.iter().any(|x| rest.contains(x))
        });
        if !touched {
            out.push(s.clone());
        }
    }
    out
}

/// Thin-branch view of diameter-4 entries without bistar separators: every
/// thin branch avoiding S_i (outside the center) is left pending and its
/// vertices dropped from Y_i.
pub fn thin_branch_family(
    ki: &VertexSet,
    s_i: &VertexSet,
    ca: &CliqueArrangement,
    entries: &[InternalFamilyEntry],
) -> Vec<InternalFamilyEntry> {
    let seps = separators_inside(ki, ca);
    let mut out = Vec::new();
    for e in entries {
        let h = &e.full;
        if tree_metrics(h, None).diameter != 4 || seps.iter().any(|s| sub_diam(h, s) == 3) {
            continue;
        }
        let c = tree_metrics(h, None).center[0];
        let cv = h.label(c).vertex();
        let mut pending = Vec::new();
        let mut drop = Vec::new();
        for s in thin_branches(h, ki, ca) {
            let off: VertexSet = s.iter().filter(|&v| Some(v) != cv).collect();
            if off.intersection(s_i).is_empty() {
                drop.extend(off.iter());
                pending.push(s);
            }
        }
        let y = ki.difference(&VertexSet::from_vec(drop));
        let rn = h.real_nodes();
        let mut targets: Vec<usize> = y.iter().map(|v| rn[&v]).collect();
        targets.push(c);
        let keep = spanned_nodes(h, &targets);
        let partial = h.extract(&keep).0;
        out.push(InternalFamilyEntry { full: h.clone(), partial, center: vec![c], y, pending });
    }
    out
}

/// Groups candidates by the key of their S-fragment.
pub fn by_fragment(hs: &[SteinerTree], s: &VertexSet) -> BTreeMap<String, Vec<usize>> {
    let mut m: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, h) in hs.iter().enumerate() {
        m.entry(fragment_of(h, s).0).or_default().push(i);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::clique_arrangement;
    use crate::graph::Graph;
    use crate::tree::{steiner_equivalent, tree_metrics, verify_root};

    fn vs(v: &[Vertex]) -> VertexSet {
        VertexSet::from_vec(v.to_vec())
    }

    #[test]
    fn separator_family_small() {
        // P_3: separator {1}
        let g = Graph::path(3);
        let ca = clique_arrangement(&g).unwrap();
        let f = separator_family(&vs(&[1]), &ca, EngineConfig::default()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 1);
        // two triangles sharing {1,2}: all paths of length <= 3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ca = clique_arrangement(&g).unwrap();
        let f = separator_family(&vs(&[1, 2]), &ca, EngineConfig { well_structured: false }).unwrap();
        let lens: Vec<usize> = f.iter().map(|t| t.len()).collect();
        assert_eq!(f.len(), 3, "{lens:?}");
    }

    #[test]
    fn candidates_are_roots_of_the_clique() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let ca = clique_arrangement(&g).unwrap();
        for k in ca.cliques.clone() {
            for cfg in [EngineConfig::default(), EngineConfig { well_structured: false }] {
                let hs = enumerate_candidates(&k, &ca, true, &[], cfg).unwrap();
                assert!(!hs.is_empty());
                for h in &hs {
                    assert_eq!(h.reals(), k);
                    assert!(tree_metrics(h, None).diameter <= 4);
                    let (sub, _) = g.induced_subgraph(&k).unwrap();
                    let mut relabeled = h.clone();
                    let map: Vec<Vertex> = k.iter().collect();
                    for i in 0..h.len() {
                        if let NodeLabel::Real(v) = h.label(i) {
                            relabeled.set_label(i, NodeLabel::Real(map.iter().position(|&x| x == v).unwrap()));
                        }
                    }
                    assert!(verify_root(&relabeled, &sub, 4));
                }
                for a in 0..hs.len() {
                    for b in a + 1..hs.len() {
                        assert!(!steiner_equivalent(&hs[a], &hs[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn free_vertices_forced_to_depth_two() {
        // K_2 = {0,1} with 1 also in {1,2}: 0 is free in {0,1}
        let g = Graph::path(3);
        let ca = clique_arrangement(&g).unwrap();
        let fam = leaf_clique_family(&vs(&[0, 1]), &vs(&[1]), &ca, EngineConfig::default()).unwrap();
        assert!(!fam.is_empty());
        for p in &fam {
            assert_eq!(tree_metrics(&p.tree, None).diameter, 4);
        }
        let loose = leaf_clique_family(&vs(&[0, 1]), &vs(&[1]), &ca, EngineConfig { well_structured: false }).unwrap();
        assert!(loose.len() > fam.len());
    }

    #[test]
    fn parts_and_dependency() {
        let g = Graph::path(3);
        let ca = clique_arrangement(&g).unwrap();
        let p = heavy_light_parts(&vs(&[1]), &ca).unwrap();
        assert!(p.heavy.is_empty() && p.light.is_empty());
        assert!(k_dependent_vertices(&vs(&[1]), &vs(&[0, 1]), &ca).unwrap().is_empty());
        assert_eq!(canonical_bistar_second_center(&vs(&[1]), &vs(&[0, 1]), &vs(&[1]), Some(1), &ca).unwrap(), None);
    }

    #[test]
    fn fig3_dependency() {
        // K1={x1,x2,x3} K2={u1,u2,u3} K3={v1,v2,v3} K4={y,x1,x2,u1,v1,u3} K5={y,x1,x2,u1,v1,v3}
        let (x1, x2, x3, u1, u2, u3, v1, v2, v3, y) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
        let cl = [vec![x1, x2, x3], vec![u1, u2, u3], vec![v1, v2, v3], vec![y, x1, x2, u1, v1, u3], vec![
            y, x1, x2, u1, v1, v3,
        ]];
        let mut e = Vec::new();
        for c in &cl {
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    e.push((c[a], c[b]));
                }
            }
        }
        e.sort();
        e.dedup();
        let g = Graph::from_edges(10, &e).unwrap();
        let ca = clique_arrangement(&g).unwrap();
        let s = vs(&[y, x1, x2, u1, v1]);
        let k4 = vs(&[y, x1, x2, u1, v1, u3]);
        let k5 = vs(&[y, x1, x2, u1, v1, v3]);
        assert!(k_dependent_vertices(&s, &k4, &ca).unwrap().contains(u1));
        assert!(k_dependent_vertices(&s, &k5, &ca).unwrap().contains(v1));
        let p = heavy_light_parts(&s, &ca).unwrap();
        assert_eq!(p.light, vec![vs(&[x1, x2])]);
        // r = {c, w}, X = {w, z} with z outside r: first branch picks w
        assert_eq!(canonical_bistar_second_center(&s, &k4, &vs(&[y, x1]), Some(y), &ca).unwrap(), Some(x1));
    }
}
