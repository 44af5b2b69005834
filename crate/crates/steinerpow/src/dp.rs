//! The recognizer: a postorder dynamic program over the final clique tree.
//!
//! For every clique K_i the table keeps, per fragment key T<S_i> (up to
//! Steiner equivalence), the Pareto-maximal profiles r -> dist(r, W_i) capped
//! at 5 over roots of G_i. A parent candidate H = T<K_i> is combined with one
//! entry per child; since children are glued to H along their fragments
//! only, the conditions are local: every child private vertex stays at
//! distance >= 5 from K_i \ S_j and from every other child's private part.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::chordal::{arrangement_from_tree, is_chordal, is_strongly_chordal, separator_chain_filter};
use crate::cliquetree::{final_from, RootedCliqueTree};
use crate::error::{Error, Result};
use crate::families::{enumerate_candidates, fragment_of, ChildKeys, EngineConfig};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::matching::{saturating_matching, WeightedBipartiteGraph};
use crate::tree::{canonical_form_with_order, join_components, spanned_nodes, verify_leaf_root, verify_root, NodeLabel, SteinerTree};

const CAP: u8 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    NotChordal,
    NotStronglyChordal,
    SeparatorChain,
    DpExhausted,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::NotChordal => "not-chordal",
            RejectReason::NotStronglyChordal => "not-strongly-chordal",
            RejectReason::SeparatorChain => "separator-chain",
            RejectReason::DpExhausted => "dp-exhausted",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DpConfig {
    pub engine: EngineConfig,
}

/// Glues `t_b` onto `t_a` along their common reals S: T_A<S> and T_B<S>
/// must be Steiner-equivalent.
pub fn compose(t_a: &SteinerTree, t_b: &SteinerTree) -> Result<SteinerTree> {
    let s = t_a.reals().intersection(&t_b.reals());
    if s.is_empty() {
        return Err(Error::Contract("compose needs a common real vertex".into()));
    }
    let (ka, na, _) = fragment_of(t_a, &s);
    let (kb, nb, _) = fragment_of(t_b, &s);
    if ka != kb {
        return Err(Error::Contract("incompatible fragments".into()));
    }
    let mut out = t_a.clone();
    let mut map = vec![usize::MAX; t_b.len()];
    for (x, y) in nb.iter().zip(&na) {
        map[*x] = *y;
    }
    for (x, slot) in map.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = out.add_node(t_b.label(x));
        }
    }
    let in_frag: Vec<bool> = {
        let mut f = vec![false; t_b.len()];
        for &x in &nb {
            f[x] = true;
        }
        f
    };
    for (a, b) in t_b.edges() {
        if !(in_frag[a] && in_frag[b]) {
            out.add_edge(map[a], map[b]);
        }
    }
    Ok(out)
}

/// Lower bounds for a child's profile over the fragment nodes `frag` (host
/// ids): 5 - dist to K_i \ S_j, raised by 5 - (distance to the private part
/// of each sibling already fixed, given as a host-node vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub key: String,
    pub fragment: Vec<usize>,
    pub lower: Vec<u8>,
}

pub fn enumerate_encodings(h: &SteinerTree, k_i: &VertexSet, s_j: &VertexSet, siblings: &[Vec<u8>]) -> Encoding {
    let (key, frag, _) = fragment_of(h, s_j);
    let rn = h.real_nodes();
    let d = h.all_distances();
    let outside = k_i.difference(s_j);
    let lower = frag
        .iter()
        .map(|&r| {
            let near = outside.iter().map(|y| d[r][rn[&y]]).min().unwrap_or(CAP as usize).min(CAP as usize) as u8;
            let mut lb = CAP - near;
            for p in siblings {
                lb = lb.max(CAP - p[r].min(CAP));
            }
            lb
        })
        .collect();
    Encoding { key, fragment: frag, lower }
}

/// A stored partial solution: the candidate H at clique `node`, one chosen
/// entry per child (in `children` order), and the profile over the
/// fragment order of H<S_i>.
#[derive(Clone, Debug)]
struct Entry {
    node: usize,
    h: usize,
    choices: Vec<usize>,
    profile: Vec<u8>,
}

#[derive(Default)]
struct Table {
    /// key -> (representative fragment, Pareto front of entry ids)
    fronts: BTreeMap<String, (SteinerTree, Vec<usize>)>,
}

pub struct Solver<'a> {
    rt: &'a RootedCliqueTree,
    ca: &'a crate::chordal::CliqueArrangement,
    cfg: DpConfig,
    hs: Vec<SteinerTree>,
    entries: Vec<Entry>,
    tables: Vec<Table>,
    pub stats: SolverStats,
}

#[derive(Clone, Debug, Default)]
pub struct SolverStats {
    pub candidates: usize,
    pub entries: usize,
    pub csp_nodes: usize,
}

/// Index of a dominating entry for `lower` in a front, if any.
pub fn solve_distance_constrained_root(profiles: &[Vec<u8>], lower: &[u8]) -> Result<Option<usize>> {
    if lower.contains(&0) {
        return Err(Error::Input("distance constraints must be >= 1".into()));
    }
    Ok(profiles.iter().position(|p| p.len() == lower.len() && p.iter().zip(lower).all(|(a, b)| a >= b)))
}

struct ChildCtx {
    frag: Vec<usize>,
    /// (entry id, profile) compatible with the static bounds
    options: Vec<(usize, Vec<u8>)>,
}

impl<'a> Solver<'a> {
    pub fn new(rt: &'a RootedCliqueTree, ca: &'a crate::chordal::CliqueArrangement, cfg: DpConfig) -> Self {
        Solver {
            rt,
            ca,
            cfg,
            hs: Vec::new(),
            entries: Vec::new(),
            tables: (0..rt.len()).map(|_| Table::default()).collect(),
            stats: SolverStats::default(),
        }
    }

    /// Runs the DP; returns a witness root of the component on success.
    pub fn run(&mut self) -> Result<Option<SteinerTree>> {
        for idx in 0..self.rt.postorder.len() {
            let i = self.rt.postorder[idx];
            self.process(i)?;
            if self.tables[i].fronts.is_empty() {
                return Ok(None);
            }
        }
        let root = self.rt.root;
        let (_, front) = self.tables[root].fronts.values().next().expect("nonempty root table");
        Ok(Some(self.build(front[0])?))
    }

    fn process(&mut self, i: usize) -> Result<()> {
        let rt = self.rt;
        let children = &rt.children[i];
        let keys: Vec<ChildKeys<'_>> = children
            .iter()
            .map(|&j| ChildKeys { sep: rt.sep[j].clone(), fragments: self.tables[j].fronts.values().map(|f| &f.0).collect() })
            .collect();
        let k_i = rt.clique(i).clone();
        let hs = enumerate_candidates(&k_i, self.ca, true, &keys, self.cfg.engine)?;
        drop(keys);
        self.stats.candidates += hs.len();
        let s_i = rt.sep[i].clone();
        let outside_i = k_i.difference(&s_i);
        for h in hs {
            let hid = self.hs.len();
            let d = h.all_distances();
            let rn = h.real_nodes();
            let near = |r: usize, set: &VertexSet| -> u8 {
                set.iter().map(|y| d[r][rn[&y]]).min().unwrap_or(CAP as usize).min(CAP as usize) as u8
            };
            let mut ctx = Vec::with_capacity(children.len());
            let mut ok = true;
            for &j in children {
                let (key, frag, _) = fragment_of(&h, &rt.sep[j]);
                let Some((_, front)) = self.tables[j].fronts.get(&key) else {
                    ok = false;
                    break;
                };
                let outside = k_i.difference(&rt.sep[j]);
                let lb: Vec<u8> = frag.iter().map(|&r| CAP - near(r, &outside)).collect();
                let options: Vec<(usize, Vec<u8>)> = front
                    .iter()
                    .map(|&e| (e, self.entries[e].profile.clone()))
                    .filter(|(_, p)| p.iter().zip(&lb).all(|(a, b)| a >= b))
                    .collect();
                if options.is_empty() {
                    ok = false;
                    break;
                }
                ctx.push(ChildCtx { frag, options });
            }
            if !ok || !self.matching_feasible(&ctx) {
                continue;
            }
            let (key_i, frag_i, frag_tree) = fragment_of(&h, &s_i);
            let out0: Vec<u8> = frag_i.iter().map(|&r| near(r, &outside_i)).collect();
            self.hs.push(h);
            let mut search = Search {
                d: &d,
                ctx: &ctx,
                frag_i: &frag_i,
                out0: &out0,
                front: self.tables[i].fronts.get(&key_i).map(|f| f.1.iter().map(|&e| self.entries[e].profile.clone()).collect()).unwrap_or_default(),
                found: Vec::new(),
                chosen: vec![0; ctx.len()],
                nodes: 0,
                stop_at_first: rt.parent[i].is_none(),
            };
            let p0 = vec![CAP; self.hs[hid].len()];
            search.go(0, &p0);
            self.stats.csp_nodes += search.nodes;
            for (choices, profile) in search.found {
                let eid = self.entries.len();
                self.entries.push(Entry { node: i, h: hid, choices, profile: profile.clone() });
                self.stats.entries += 1;
                let entries = &self.entries;
                let slot = self.tables[i].fronts.entry(key_i.clone()).or_insert_with(|| (frag_tree.clone(), Vec::new()));
                if slot.1.iter().any(|&e| dominates(&entries[e].profile, &profile)) {
                    continue;
                }
                slot.1.retain(|&e| !dominates(&profile, &entries[e].profile));
                slot.1.push(eid);
            }
            if rt.parent[i].is_none() && !self.tables[i].fronts.is_empty() {
                break;
            }
        }
        Ok(())
    }

    /// Children sharing one separator need pairwise compatible placements; a
    /// child whose every option is close (<= 2) to the private part at some
    /// fragment node must claim such a node, and two children can't claim the
    /// same node. Checked by a saturating matching (necessary condition).
    fn matching_feasible(&self, ctx: &[ChildCtx]) -> bool {
        let mut groups: HashMap<&[usize], Vec<usize>> = HashMap::new();
        for (c, x) in ctx.iter().enumerate() {
            groups.entry(x.frag.as_slice()).or_default().push(c);
        }
        for (frag, members) in groups {
            if members.len() < 2 {
                continue;
            }
            let mut edges = Vec::new();
            let mut required = Vec::new();
            for (li, &c) in members.iter().enumerate() {
                let opts = &ctx[c].options;
                if opts.iter().all(|(_, p)| p.iter().any(|&x| x <= 2)) {
                    required.push(li);
                }
                for t in 0..frag.len() {
                    let best = opts.iter().map(|(_, p)| p[t]).filter(|&x| x <= 2).min();
                    if let Some(x) = best {
                        edges.push((li, t, u64::from(3 - x)));
                    }
                }
            }
            if required.is_empty() {
                continue;
            }
            let g = WeightedBipartiteGraph::new(members.len(), frag.len(), edges).expect("valid bipartite graph");
            if saturating_matching(&g, &required).is_none() {
                return false;
            }
        }
        true
    }

    fn build(&self, eid: usize) -> Result<SteinerTree> {
        let e = &self.entries[eid];
        let mut t = self.hs[e.h].clone();
        for &c in &e.choices {
            let sub = self.build(c)?;
            t = compose(&t, &sub)?;
        }
        Ok(t)
    }

    /// Number of stored entries per clique (for diagnostics).
    pub fn table_sizes(&self) -> Vec<usize> {
        self.tables.iter().map(|t| t.fronts.values().map(|f| f.1.len()).sum()).collect()
    }

    pub fn entry_clique(&self, eid: usize) -> usize {
        self.entries[eid].node
    }
}

fn dominates(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

struct Search<'s> {
    d: &'s [Vec<usize>],
    ctx: &'s [ChildCtx],
    frag_i: &'s [usize],
    out0: &'s [u8],
    front: Vec<Vec<u8>>,
    found: Vec<(Vec<usize>, Vec<u8>)>,
    chosen: Vec<usize>,
    nodes: usize,
    stop_at_first: bool,
}

impl Search<'_> {
    fn output(&self, p: &[u8]) -> Vec<u8> {
        self.frag_i.iter().zip(self.out0).map(|(&r, &o)| o.min(p[r])).collect()
    }

    fn compatible(&self, c: usize, prof: &[u8], p: &[u8]) -> bool {
        self.ctx[c].frag.iter().zip(prof).all(|(&r, &x)| x + p[r] >= CAP)
    }

    /// `p[x]`: distance from host node x to the private parts of the children
    /// chosen so far (capped).
    fn go(&mut self, c: usize, p: &[u8]) {
        self.nodes += 1;
        if self.stop_at_first && !self.found.is_empty() {
            return;
        }
        let out = self.output(p);
        if self.front.iter().any(|f| dominates(f, &out)) {
            return;
        }
        if c == self.ctx.len() {
            self.front.retain(|f| !dominates(&out, f));
            self.front.push(out.clone());
            self.found.push((self.chosen.clone(), out));
            return;
        }
        // forward check
        for later in c..self.ctx.len() {
            if !self.ctx[later].options.iter().any(|(_, prof)| self.compatible(later, prof, p)) {
                return;
            }
        }
        for oi in 0..self.ctx[c].options.len() {
            let (eid, ref prof) = self.ctx[c].options[oi];
            if !self.compatible(c, prof, p) {
                continue;
            }
            let mut np = p.to_vec();
            for (x, slot) in np.iter_mut().enumerate() {
                for (&r, &v) in self.ctx[c].frag.iter().zip(prof) {
                    let via = (v as usize + self.d[r][x]).min(CAP as usize) as u8;
                    if via < *slot {
                        *slot = via;
                    }
                }
            }
            self.chosen[c] = eid;
            self.go(c + 1, &np);
        }
    }
}

fn single_component(g: &Graph, cfg: DpConfig) -> std::result::Result<SteinerTree, RejectReason> {
    let n = g.n();
    if g.is_complete() {
        return Ok(match n {
            1 => SteinerTree::single(NodeLabel::Real(0)),
            2 => SteinerTree::from_edges(vec![NodeLabel::Real(0), NodeLabel::Real(1)], &[(0, 1)], 0).unwrap(),
            _ => {
                let mut labels = vec![NodeLabel::Steiner];
                labels.extend((0..n).map(NodeLabel::Real));
                let e: Vec<_> = (1..=n).map(|i| (0, i)).collect();
                SteinerTree::from_edges(labels, &e, 0).unwrap()
            }
        });
    }
    let ct = crate::chordal::build_clique_tree(g).map_err(|_| RejectReason::NotChordal)?;
    let ca = arrangement_from_tree(ct.clone());
    if !separator_chain_filter(&ca, 4) {
        return Err(RejectReason::SeparatorChain);
    }
    let rt = final_from(ct);
    let mut solver = Solver::new(&rt, &ca, cfg);
    match solver.run() {
        Ok(Some(t)) => Ok(t),
        Ok(None) => Err(RejectReason::DpExhausted),
        Err(e) => panic!("internal error in the dynamic program: {e}"),
    }
}

/// Strong-chordality gate shared by both recognizers.
pub fn gate(g: &Graph) -> std::result::Result<(), RejectReason> {
    if is_chordal(g).is_err() {
        return Err(RejectReason::NotChordal);
    }
    match is_strongly_chordal(g) {
        Ok(Some(_)) => Ok(()),
        _ => Err(RejectReason::NotStronglyChordal),
    }
}

pub fn recognize_4_steiner(g: &Graph) -> std::result::Result<SteinerTree, RejectReason> {
    recognize_4_steiner_with(g, DpConfig::default())
}

pub fn recognize_4_steiner_with(g: &Graph, cfg: DpConfig) -> std::result::Result<SteinerTree, RejectReason> {
    if g.n() == 0 {
        return Err(RejectReason::DpExhausted);
    }
    gate(g)?;
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp).expect("component vertices");
        let t = single_component(&sub, cfg)?;
        parts.push(relabel(&t, &map));
    }
    let t = join_components(&parts, 5);
    assert!(verify_root(&t, g, 4), "recognizer produced an invalid root");
    Ok(t)
}

fn relabel(t: &SteinerTree, map: &[Vertex]) -> SteinerTree {
    let mut out = t.clone();
    for i in 0..t.len() {
        if let NodeLabel::Real(v) = t.label(i) {
            out.set_label(i, NodeLabel::Real(map[v]));
        }
    }
    out
}

/// Graph on the true-twin classes (class c is vertex c of the quotient).
pub fn twin_quotient(g: &Graph) -> (Graph, Vec<VertexSet>) {
    let classes = g.true_twin_classes();
    let mut class_of = vec![0usize; g.n()];
    for (c, cl) in classes.iter().enumerate() {
        for v in cl.iter() {
            class_of[v] = c;
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| class_of[a] != class_of[b])
        .map(|(a, b)| (class_of[a].min(class_of[b]), class_of[a].max(class_of[b])))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    (Graph::from_edges(classes.len(), &edges).expect("quotient edges"), classes)
}

/// 6-leaf power recognition: collapse true twins, recognize the quotient as
/// a 4-Steiner power, then hang every class as leaves of a Steiner node.
pub fn recognize_6_leaf(g: &Graph) -> std::result::Result<SteinerTree, RejectReason> {
    recognize_6_leaf_with(g, DpConfig::default())
}

pub fn recognize_6_leaf_with(g: &Graph, cfg: DpConfig) -> std::result::Result<SteinerTree, RejectReason> {
    if g.n() == 0 {
        return Err(RejectReason::DpExhausted);
    }
    gate(g)?;
    if g.n() == 1 {
        return Ok(SteinerTree::single(NodeLabel::Real(0)));
    }
    let (q, classes) = twin_quotient(g);
    let tq = recognize_4_steiner_with(&q, cfg)?;
    let mut t = tq.clone();
    for i in 0..tq.len() {
        if let NodeLabel::Real(c) = tq.label(i) {
            t.set_label(i, NodeLabel::Steiner);
            for v in classes[c].iter() {
                let x = t.add_node(NodeLabel::Real(v));
                t.add_edge(i, x);
            }
        }
    }
    assert!(verify_leaf_root(&t, g, 6), "leaf recognizer produced an invalid root");
    Ok(t)
}

/// Witness invariants: Real(T<X>) = X and diam <= 4 and |V(T<X>)| <= 4|X| + 4
/// for every clique intersection X, and disjoint centers of the maximal
/// cliques' subtrees. Returns the first violated invariant.
pub fn witness_invariants(t: &SteinerTree, g: &Graph) -> std::result::Result<(), String> {
    if !verify_root(t, g, 4) {
        return Err("not a 4-Steiner root".into());
    }
    let d = t.all_distances();
    let rn = t.real_nodes();
    let mut centers: Vec<Vec<usize>> = Vec::new();
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp).expect("component");
        let ct = crate::chordal::build_clique_tree(&sub).map_err(|e| e.to_string())?;
        let ca = arrangement_from_tree(ct);
        for (xi, x) in ca.nodes.iter().enumerate() {
            let x: VertexSet = x.iter().map(|v| map[v]).collect();
            let targets: Vec<usize> = x.iter().map(|v| rn[&v]).collect();
            let span = spanned_nodes(t, &targets);
            let reals: VertexSet = span.iter().filter_map(|&s| t.label(s).vertex()).collect();
            if reals != x {
                return Err(format!("Real(T<{x}>) = {reals}"));
            }
            let d = &d;
            let diam = targets.iter().flat_map(|&a| targets.iter().map(move |&b| d[a][b])).max().unwrap_or(0);
            if diam > 4 {
                return Err(format!("diam(T<{x}>) = {diam}"));
            }
            if span.len() > 4 * x.len() + 4 {
                return Err(format!("|T<{x}>| = {}", span.len()));
            }
            if ca.kinds[xi] == crate::chordal::CiKind::MaximalClique {
                centers.push(crate::tree::tree_metrics(t, Some(&span)).center);
            }
        }
    }
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            if centers[a].iter().any(|c| centers[b].contains(c)) {
                return Err("two maximal cliques share a center".into());
            }
        }
    }
    Ok(())
}

/// Canonical string of a fragment together with its node order (exposed for
/// debugging dumps).
pub fn fragment_signature(t: &SteinerTree) -> (String, Vec<usize>) {
    canonical_form_with_order(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{random_yes_instance, three_sun};

    #[test]
    fn compose_examples() {
        use NodeLabel::{Real as R, Steiner as S};
        let a = SteinerTree::from_edges(vec![R(0), R(1)], &[(0, 1)], 0).unwrap();
        let b = SteinerTree::from_edges(vec![R(1), R(2)], &[(0, 1)], 0).unwrap();
        let c = compose(&a, &b).unwrap();
        assert_eq!(c.len(), 3);
        // identity gluing
        let only = SteinerTree::single(R(1));
        assert_eq!(compose(&a, &only).unwrap(), a);
        // P_3 split at b
        let ta = SteinerTree::from_edges(vec![R(0), S, S, R(1)], &[(0, 1), (1, 2), (2, 3)], 0).unwrap();
        let tb = SteinerTree::from_edges(vec![R(1), S, S, S, R(2)], &[(0, 1), (1, 2), (2, 3), (3, 4)], 0).unwrap();
        let t = compose(&ta, &tb).unwrap();
        assert!(verify_root(&t, &Graph::path(3), 4));
        let bad = SteinerTree::from_edges(vec![R(0), S, R(1)], &[(0, 1), (1, 2)], 0).unwrap();
        let other = SteinerTree::from_edges(vec![R(0), R(1)], &[(0, 1)], 0).unwrap();
        assert!(compose(&bad, &other).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_distance_constrained_root(&[vec![3, 4]], &[2, 4]).unwrap(), Some(0));
        assert_eq!(solve_distance_constrained_root(&[vec![3, 4]], &[5, 1]).unwrap(), None);
        assert!(solve_distance_constrained_root(&[vec![3]], &[0]).is_err());
    }

    #[test]
    fn known_answers() {
        assert_eq!(recognize_4_steiner(&Graph::cycle(4)).unwrap_err(), RejectReason::NotChordal);
        assert_eq!(recognize_4_steiner(&three_sun()).unwrap_err(), RejectReason::NotStronglyChordal);
        for g in [Graph::complete(1), Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::path(4), Graph::path(7)] {
            let t = recognize_4_steiner(&g).unwrap();
            assert!(verify_root(&t, &g, 4));
        }
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = recognize_6_leaf(&star).unwrap();
        assert!(verify_leaf_root(&t, &star, 6));
        assert!(recognize_6_leaf(&Graph::complete(4)).is_ok());
        assert_eq!(recognize_6_leaf(&Graph::cycle(4)).unwrap_err(), RejectReason::NotChordal);
    }

    #[test]
    fn encodings_of_small_separators() {
        use NodeLabel::{Real as R, Steiner as S};
        // H: Steiner star over {0,1,2}; child separator {0}
        let h = SteinerTree::from_edges(vec![S, R(0), R(1), R(2)], &[(0, 1), (0, 2), (0, 3)], 0).unwrap();
        let k: VertexSet = [0, 1, 2].into_iter().collect();
        let e = enumerate_encodings(&h, &k, &VertexSet::singleton(0), &[]);
        assert_eq!(e.fragment, vec![1]);
        assert_eq!(e.lower, vec![3]);
        // a sibling whose private part sits at distance 1 from node 1 forces 4
        let mut sib = vec![5u8; 4];
        sib[1] = 1;
        assert_eq!(enumerate_encodings(&h, &k, &VertexSet::singleton(0), &[sib]).lower, vec![4]);
        // edge separator {0,1} in a path 0-1-2
        let p = SteinerTree::from_edges(vec![R(0), R(1), R(2)], &[(0, 1), (1, 2)], 0).unwrap();
        let e = enumerate_encodings(&p, &k, &[0, 1].into_iter().collect(), &[]);
        assert_eq!(e.fragment.len(), 2);
        let by_node: Vec<(usize, u8)> = e.fragment.iter().copied().zip(e.lower.iter().copied()).collect();
        assert!(by_node.contains(&(0, 3)) && by_node.contains(&(1, 4)));
    }

    #[test]
    fn nested_separators_rejected() {
        let core = 6;
        let mut edges = Vec::new();
        for a in 0..core {
            for b in a + 1..core {
                edges.push((a, b));
            }
        }
        for i in 0..core - 1 {
            for a in 0..=i {
                edges.push((a, core + i));
            }
        }
        let g = Graph::from_edges(2 * core - 1, &edges).unwrap();
        assert_eq!(recognize_4_steiner(&g).unwrap_err(), RejectReason::SeparatorChain);
        assert_eq!(recognize_6_leaf(&g).unwrap_err(), RejectReason::SeparatorChain);
    }

    #[test]
    fn leaf_witness_shapes() {
        // K_n: one Steiner center with n pendant leaves
        let t = recognize_6_leaf(&Graph::complete(5)).unwrap();
        assert_eq!(t.len(), 6);
        assert!(verify_leaf_root(&t, &Graph::complete(5), 6));
        let claw = Graph::from_edges(4, &[(1, 0), (1, 2), (1, 3)]).unwrap();
        let t = recognize_6_leaf(&claw).unwrap();
        assert!(verify_leaf_root(&t, &claw, 6));
        assert!((0..t.len()).filter(|&i| t.label(i).is_real()).all(|i| t.degree(i) == 1));
    }

    #[test]
    fn random_instances_accepted() {
        for seed in 0..20 {
            let (g, _) = random_yes_instance(4, 9, 6, seed);
            let t = recognize_4_steiner(&g).unwrap_or_else(|r| panic!("seed {seed}: {r}\n{}", g.to_edge_list()));
            assert!(verify_root(&t, &g, 4));
        }
    }
}
