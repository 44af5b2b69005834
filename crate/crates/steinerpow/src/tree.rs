//! Steiner trees: the witness type, its text format, powers, verification,
//! spanned subtrees, metrics, canonical forms and the free/constrained
//! vertex classification.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::chordal::{CiKind, CliqueArrangement};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    Real(Vertex),
    Steiner,
}

impl NodeLabel {
    pub fn is_real(self) -> bool {
        matches!(self, NodeLabel::Real(_))
    }

    pub fn vertex(self) -> Option<Vertex> {
        match self {
            NodeLabel::Real(v) => Some(v),
            NodeLabel::Steiner => None,
        }
    }
}

/// A tree whose nodes are real (carrying a graph vertex) or Steiner. Node ids
/// are positions in `labels`; `root` only matters for the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    labels: Vec<NodeLabel>,
    adj: Vec<Vec<usize>>,
    root: usize,
}

impl SteinerTree {
    pub fn single(label: NodeLabel) -> Self {
        SteinerTree { labels: vec![label], adj: vec![Vec::new()], root: 0 }
    }

    /// Builds a tree from labels and an edge list, checking it is a tree with
    /// distinct real labels.
    pub fn from_edges(labels: Vec<NodeLabel>, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structure("empty tree".into()));
        }
        let mut t = SteinerTree { labels, adj: vec![Vec::new(); n], root };
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Structure(format!("bad edge ({a},{b})")));
            }
            t.adj[a].push(b);
            t.adj[b].push(a);
        }
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if self.root >= n {
            return Err(Error::Structure("root out of range".into()));
        }
        let edges: usize = self.adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        if edges + 1 != n {
            return Err(Error::Structure("edge count is not N-1".into()));
        }
        if self.bfs(self.root).contains(&usize::MAX) {
            return Err(Error::Structure("tree is disconnected".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.labels {
            if let NodeLabel::Real(v) = l {
                if !seen.insert(*v) {
                    return Err(Error::Structure(format!("vertex {v} carried twice")));
                }
            }
        }
        Ok(())
    }

    pub fn add_node(&mut self, label: NodeLabel) -> usize {
        self.labels.push(label);
        self.adj.push(Vec::new());
        self.labels.len() - 1
    }

    /// Adds an edge; callers keep the tree property.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn set_label(&mut self, node: usize, label: NodeLabel) {
        self.labels[node] = label;
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn set_root(&mut self, r: usize) {
        self.root = r;
    }

    pub fn label(&self, node: usize) -> NodeLabel {
        self.labels[node]
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for a in 0..self.len() {
            for &b in &self.adj[a] {
                if a < b {
                    e.push((a, b));
                }
            }
        }
        e
    }

    /// Real(T), ascending.
    pub fn reals(&self) -> VertexSet {
        self.labels.iter().filter_map(|l| l.vertex()).collect()
    }

    /// Map vertex -> node.
    pub fn real_nodes(&self) -> BTreeMap<Vertex, usize> {
        self.labels.iter().enumerate().filter_map(|(i, l)| l.vertex().map(|v| (v, i))).collect()
    }

    pub fn node_of(&self, v: Vertex) -> Option<usize> {
        self.labels.iter().position(|l| *l == NodeLabel::Real(v))
    }

    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.len()];
        d[src] = 0;
        let mut q = VecDeque::from([src]);
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

    pub fn all_distances(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|s| self.bfs(s)).collect()
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[self.root] = true;
        let mut q = VecDeque::from([self.root]);
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

    pub fn to_text(&self) -> String {
        let p = self.parents();
        let mut s = format!("{}\n", self.len());
        for i in 0..self.len() {
            let par = p[i].map_or(-1, |x| x as i64);
            let lab = match self.labels[i] {
                NodeLabel::Real(v) => format!("r:{v}"),
                NodeLabel::Steiner => "s".to_string(),
            };
            let _ = writeln!(s, "{i} {par} {lab}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (l0, first) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty tree file".into() })?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse { line: l0 + 1, msg: "bad node count".into() })?;
        let mut labels = vec![None; n];
        let mut parent = vec![None; n];
        let mut root = None;
        let mut count = 0;
        for (ln, line) in lines {
            let err = |m: &str| Error::Parse { line: ln + 1, msg: m.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(err("expected 'id parent label'"));
            }
            let id: usize = toks[0].parse().map_err(|_| err("bad id"))?;
            if id >= n || labels[id].is_some() {
                return Err(err("id out of range or repeated"));
            }
            let par: i64 = toks[1].parse().map_err(|_| err("bad parent"))?;
            let lab = if toks[2] == "s" {
                NodeLabel::Steiner
            } else if let Some(v) = toks[2].strip_prefix("r:") {
                NodeLabel::Real(v.parse().map_err(|_| err("bad real label"))?)
            } else {
                return Err(err("label must be 'r:<vertex>' or 's'"));
            };
            labels[id] = Some(lab);
            if par == -1 {
                if root.is_some() {
                    return Err(err("two roots"));
                }
                root = Some(id);
            } else if par < 0 || par as usize >= n {
                return Err(err("parent out of range"));
            } else {
                parent[id] = Some(par as usize);
            }
            count += 1;
        }
        if count != n {
            return Err(Error::Parse { line: text.lines().count(), msg: format!("expected {n} node lines, got {count}") });
        }
        let root = root.ok_or(Error::Parse { line: 0, msg: "no root".into() })?;
        let labels: Vec<NodeLabel> = labels.into_iter().map(|l| l.unwrap()).collect();
        let edges: Vec<(usize, usize)> = (0..n).filter_map(|i| parent[i].map(|p| (i, p))).collect();
        let t = SteinerTree::from_edges(labels, &edges, root)?;
        // parent pointers must agree with the rooted structure
        let p = t.parents();
        if (0..n).any(|i| p[i] != parent[i]) {
            return Err(Error::Structure("parent pointers do not form a tree rooted at the root".into()));
        }
        Ok(t)
    }

    /// Sub-tree induced on `nodes` (must be connected); returns the tree and
    /// the map from new ids to old ids.
    pub fn extract(&self, nodes: &[usize]) -> (SteinerTree, Vec<usize>) {
        let mut back = vec![usize::MAX; self.len()];
        for (i, &v) in nodes.iter().enumerate() {
            back[v] = i;
        }
        let labels = nodes.iter().map(|&v| self.labels[v]).collect();
        let mut t = SteinerTree { labels, adj: vec![Vec::new(); nodes.len()], root: 0 };
        for (i, &v) in nodes.iter().enumerate() {
            t.adj[i] = self.adj[v].iter().filter(|&&w| back[w] != usize::MAX).map(|&w| back[w]).collect();
        }
        if back[self.root] != usize::MAX {
            t.root = back[self.root];
        }
        (t, nodes.to_vec())
    }

    /// Removes Steiner leaves repeatedly (keeps at least one node).
    pub fn prune_steiner_leaves(&self) -> SteinerTree {
        let keep = if self.reals().is_empty() {
            (0..self.len()).collect()
        } else {
            spanned_nodes(self, &self.real_nodes().values().copied().collect::<Vec<_>>())
        };
        self.extract(&keep).0
    }
}

/// Graph on vertices 0..=max real label, edge uv iff 0 < dist(u,v) <= k.
pub fn tree_power_graph(t: &SteinerTree, k: usize) -> Result<Graph> {
    let rn = t.real_nodes();
    if rn.len() != t.labels.iter().filter(|l| l.is_real()).count() {
        return Err(Error::Structure("duplicate real labels".into()));
    }
    let n = rn.keys().next_back().map_or(0, |&m| m + 1);
    let mut edges = Vec::new();
    for (&u, &nu) in &rn {
        let d = t.bfs(nu);
        for (&v, &nv) in rn.range(u + 1..) {
            if d[nv] <= k {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn verify_root(t: &SteinerTree, g: &Graph, k: usize) -> bool {
    let reals = t.reals();
    if reals.len() != g.n() || reals.len() != t.labels.iter().filter(|l| l.is_real()).count() {
        return false;
    }
    if reals.iter().enumerate().any(|(i, v)| i != v) {
        return false;
    }
    match tree_power_graph(t, k) {
        Ok(h) => h == *g,
        Err(_) => false,
    }
}

pub fn verify_leaf_root(t: &SteinerTree, g: &Graph, k: usize) -> bool {
    if !verify_root(t, g, k) {
        return false;
    }
    if t.len() == 1 {
        return true;
    }
    (0..t.len()).all(|i| !t.labels[i].is_real() || t.degree(i) == 1)
}

/// Nodes of the minimal subtree spanning `targets` (ascending ids).
pub fn spanned_nodes(t: &SteinerTree, targets: &[usize]) -> Vec<usize> {
    let n = t.len();
    let mut keep = vec![true; n];
    let mut is_target = vec![false; n];
    for &x in targets {
        is_target[x] = true;
    }
    if targets.is_empty() {
        return Vec::new();
    }
    let mut deg: Vec<usize> = (0..n).map(|i| t.degree(i)).collect();
    let mut q: VecDeque<usize> = (0..n).filter(|&i| deg[i] <= 1 && !is_target[i]).collect();
    while let Some(u) = q.pop_front() {
        if !keep[u] {
            continue;
        }
        keep[u] = false;
        for &w in &t.adj[u] {
            if keep[w] {
                deg[w] -= 1;
                if deg[w] <= 1 && !is_target[w] {
                    q.push_back(w);
                }
            }
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

/// The minimal subtree of a host tree containing a target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannedSubtree {
    pub nodes: Vec<usize>,
}

pub enum Target<'a> {
    Nodes(&'a [usize]),
    Vertices(&'a VertexSet),
}

pub fn spanned_subtree(t: &SteinerTree, x: Target<'_>) -> Result<SpannedSubtree> {
    let targets: Vec<usize> = match x {
        Target::Nodes(ns) => {
            if let Some(&bad) = ns.iter().find(|&&v| v >= t.len()) {
                return Err(Error::Input(format!("node {bad} not in tree")));
            }
            ns.to_vec()
        }
        Target::Vertices(vs) => {
            let rn = t.real_nodes();
            let mut out = Vec::new();
            for v in vs.iter() {
                out.push(*rn.get(&v).ok_or(Error::Input(format!("vertex {v} not carried by tree")))?);
            }
            out
        }
    };
    if targets.is_empty() {
        return Err(Error::Input("empty target set".into()));
    }
    Ok(SpannedSubtree { nodes: spanned_nodes(t, &targets) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMetrics {
    /// Eccentricity per node of the (sub)tree, keyed by host node id.
    pub ecc: BTreeMap<usize, usize>,
    pub diameter: usize,
    pub radius: usize,
    pub center: Vec<usize>,
}

/// Metrics of the subtree induced on `nodes` (all nodes when None).
pub fn tree_metrics(t: &SteinerTree, nodes: Option<&[usize]>) -> TreeMetrics {
    let all: Vec<usize>;
    let nodes = match nodes {
        Some(ns) => ns,
        None => {
            all = (0..t.len()).collect();
            &all
        }
    };
    let (sub, map) = t.extract(nodes);
    let mut ecc = BTreeMap::new();
    for i in 0..sub.len() {
        let e = sub.bfs(i).into_iter().max().unwrap_or(0);
        ecc.insert(map[i], e);
    }
    let diameter = ecc.values().copied().max().unwrap_or(0);
    let radius = ecc.values().copied().min().unwrap_or(0);
    let center = ecc.iter().filter(|(_, &e)| e == radius).map(|(&v, _)| v).collect();
    TreeMetrics { ecc, diameter, radius, center }
}

fn rooted_code(t: &SteinerTree, v: usize, parent: usize, order: &mut Vec<usize>, want_order: bool) -> String {
    let lab = match t.labels[v] {
        NodeLabel::Real(x) => format!("r{x}"),
        NodeLabel::Steiner => "s".to_string(),
    };
    let mut kids: Vec<(String, usize)> = t.adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| (rooted_code(t, w, v, &mut Vec::new(), false), w))
        .collect();
    kids.sort();
    if want_order {
        order.push(v);
        for (_, w) in &kids {
            rooted_code(t, *w, v, order, true);
        }
    }
    let mut s = String::with_capacity(8 + kids.iter().map(|k| k.0.len()).sum::<usize>());
    s.push('(');
    s.push_str(&lab);
    for (c, _) in kids {
        s.push_str(&c);
    }
    s.push(')');
    s
}

/// Canonical string and canonical node order: rooted at the smallest real
/// vertex (or, without reals, the lexicographically least code over centers).
pub fn canonical_form_with_order(t: &SteinerTree) -> (String, Vec<usize>) {
    let anchor = t.real_nodes().values().next().copied();
    let roots = match anchor {
        Some(a) => vec![a],
        None => tree_metrics(t, None).center,
    };
    let mut best: Option<(String, Vec<usize>)> = None;
    for r in roots {
        let mut order = Vec::with_capacity(t.len());
        let code = rooted_code(t, r, usize::MAX, &mut order, true);
        if best.as_ref().is_none_or(|b| code < b.0) {
            best = Some((code, order));
        }
    }
    best.unwrap()
}

pub fn canonical_form(t: &SteinerTree) -> String {
    canonical_form_with_order(t).0
}

/// Isomorphism fixing every real node.
pub fn steiner_equivalent(t1: &SteinerTree, t2: &SteinerTree) -> bool {
    t1.len() == t2.len() && t1.reals() == t2.reals() && canonical_form(t1) == canonical_form(t2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexTag {
    Free,
    InternallyConstrained { witness: VertexSet },
    Sandwiched { x1: VertexSet, x2: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    pub x: VertexSet,
    pub tags: Vec<(Vertex, VertexTag)>,
}

impl VertexClassification {
    pub fn free(&self) -> VertexSet {
        self.tags.iter().filter(|(_, t)| *t == VertexTag::Free).map(|(v, _)| *v).collect()
    }

    pub fn tag(&self, v: Vertex) -> Option<&VertexTag> {
        self.tags.iter().find(|(u, _)| *u == v).map(|(_, t)| t)
    }
}

/// Free / internally constrained / sandwiched classification of the vertices
/// of a clique intersection.
pub fn classify_vertices(x: &VertexSet, ca: &CliqueArrangement) -> Result<VertexClassification> {
    let xi = ca.index_of(x).ok_or(Error::Input(format!("{x} is not a clique intersection")))?;
    let mut tags = Vec::new();
    for v in x.iter() {
        let internal = ca.subsets[xi]
            .iter()
            .map(|&j| &ca.nodes[j])
            .find(|xp| xp.len() >= 2 && xp.contains(v))
            .cloned();
        if let Some(w) = internal {
            tags.push((v, VertexTag::InternallyConstrained { witness: w }));
            continue;
        }
        let mut sw = None;
        'outer: for &j1 in &ca.supersets[xi] {
            let x1 = &ca.nodes[j1];
            for x2 in &ca.nodes {
                let a = x.intersection(x2);
                if a.len() == 1 && a.contains(v) && x1.intersection(x2).len() > 1 {
                    sw = Some(VertexTag::Sandwiched { x1: x1.clone(), x2: x2.clone() });
                    break 'outer;
                }
            }
        }
        tags.push((v, sw.unwrap_or(VertexTag::Free)));
    }
    Ok(VertexClassification { x: x.clone(), tags })
}

/// Checks the four well-structuredness properties of a spanned subtree
/// against its free vertices. `dist` is the host distance, `host_degree` the
/// degree in the host tree.
pub(crate) fn free_vertex_properties_hold(
    sub: &[usize],
    free_nodes: &[usize],
    is_maximal_clique: bool,
    dist: &dyn Fn(usize, usize) -> usize,
    host_degree: &dyn Fn(usize) -> usize,
    is_real: &dyn Fn(usize) -> bool,
) -> bool {
    if sub.len() <= 1 {
        return !(is_maximal_clique && !free_nodes.is_empty());
    }
    let ecc: Vec<usize> = sub.iter().map(|&a| sub.iter().map(|&b| dist(a, b)).max().unwrap()).collect();
    let diam = *ecc.iter().max().unwrap();
    let rad = *ecc.iter().min().unwrap();
    let center: Vec<usize> = sub.iter().zip(&ecc).filter(|(_, &e)| e == rad).map(|(&a, _)| a).collect();
    if is_maximal_clique && !free_nodes.is_empty() && diam != 4 {
        return false;
    }
    for &f in free_nodes {
        let sub_deg = sub.iter().filter(|&&b| dist(f, b) == 1).count();
        let e = sub.iter().map(|&b| dist(f, b)).max().unwrap();
        if sub_deg != 1 || e != diam {
            return false;
        }
        // internal nodes of the path from the center to f
        let dc = center.iter().map(|&c| dist(f, c)).min().unwrap();
        let c0 = *center.iter().find(|&&c| dist(f, c) == dc).unwrap();
        for &w in sub {
            if w != f && !center.contains(&w) && dist(c0, w) + dist(w, f) == dc && (is_real(w) || host_degree(w) != 2) {
                return false;
            }
        }
    }
    let ok_center = center.iter().any(|&c| {
        free_nodes
            .iter()
            .filter(|&&f| dist(f, c) != center.iter().map(|&cc| dist(f, cc)).min().unwrap())
            .count()
            <= 1
    });
    ok_center
}

/// Whether every clique intersection's spanned subtree satisfies the
/// well-structuredness properties (free vertices are maximal-eccentricity
/// leaves, grouped on one center except maybe one, reached through degree-two
/// Steiner nodes, and maximal cliques with a free vertex have diameter 4).
/// The diameter-4 rule is not applied to complete graphs, whose single
/// clique is realized by any star.
pub fn is_well_structured(t: &SteinerTree, g: &Graph, ca: &CliqueArrangement) -> bool {
    if !verify_root(t, g, 4) {
        return false;
    }
    let d = t.all_distances();
    let rn = t.real_nodes();
    for (i, x) in ca.nodes.iter().enumerate() {
        let cls = match classify_vertices(x, ca) {
            Ok(c) => c,
            Err(_) => return false,
        };
        let targets: Vec<usize> = x.iter().map(|v| rn[&v]).collect();
        let sub = spanned_nodes(t, &targets);
        let free: Vec<usize> = cls.free().iter().map(|v| rn[&v]).collect();
        let ok = free_vertex_properties_hold(
            &sub,
            &free,
            ca.kinds[i] == CiKind::MaximalClique && ca.cliques.len() > 1,
            &|a, b| d[a][b],
            &|a| t.degree(a),
            &|a| t.label(a).is_real(),
        );
        if !ok {
            return false;
        }
    }
    true
}

/// Joins trees by Steiner paths of length `len` between their roots.
pub fn join_components(parts: &[SteinerTree], len: usize) -> SteinerTree {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        let base = out.len();
        for i in 0..p.len() {
            out.add_node(p.label(i));
        }
        for (a, b) in p.edges() {
            out.add_edge(base + a, base + b);
        }
        let mut prev = out.root();
        for _ in 0..len - 1 {
            let s = out.add_node(NodeLabel::Steiner);
            out.add_edge(prev, s);
            prev = s;
        }
        out.add_edge(prev, base + p.root());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::clique_arrangement;

    fn path_tree(labels: &[NodeLabel]) -> SteinerTree {
        let e: Vec<_> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        SteinerTree::from_edges(labels.to_vec(), &e, 0).unwrap()
    }

    fn steiner_star(leaves: usize) -> SteinerTree {
        let mut labels = vec![NodeLabel::Steiner];
        labels.extend((0..leaves).map(NodeLabel::Real));
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        SteinerTree::from_edges(labels, &e, 0).unwrap()
    }

    use NodeLabel::{Real as R, Steiner as S};

    #[test]
    fn power_examples() {
        assert_eq!(tree_power_graph(&path_tree(&[R(0), R(1)]), 4).unwrap(), Graph::complete(2));
        let far = path_tree(&[R(0), S, S, S, S, R(1)]);
        assert_eq!(tree_power_graph(&far, 4).unwrap().m(), 0);
        assert_eq!(tree_power_graph(&steiner_star(3), 4).unwrap(), Graph::complete(3));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_root(&steiner_star(3), &Graph::complete(3), 4));
        let t = path_tree(&[R(0), S, S, R(1), S, S, S, R(2)]);
        assert!(verify_root(&t, &Graph::path(3), 4));
        assert!(!verify_root(&path_tree(&[R(0), R(1), R(2)]), &Graph::path(3), 4));
    }

    #[test]
    fn verify_leaf_examples() {
        assert!(verify_leaf_root(&path_tree(&[R(0), S, R(1)]), &Graph::complete(2), 6));
        let internal = path_tree(&[R(0), S, R(1), S, S, S, S, R(2)]);
        assert!(verify_root(&internal, &Graph::path(3), 6));
        assert!(!verify_leaf_root(&internal, &Graph::path(3), 6));
        // spider: sigma center, hub 0 at 1, leaves 1..=3 at distance 4
        let mut t = SteinerTree::single(S);
        let h = t.add_node(R(0));
        t.add_edge(0, h);
        for leaf in 1..=3 {
            let mut prev = 0;
            for _ in 0..3 {
                let s = t.add_node(S);
                t.add_edge(prev, s);
                prev = s;
            }
            let l = t.add_node(R(leaf));
            t.add_edge(prev, l);
        }
        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        // hub is real and internal? no: hub hangs off sigma as a leaf
        assert!(verify_leaf_root(&t, &k13, 6));
    }

    #[test]
    fn spanned_examples() {
        let t = path_tree(&[R(0), S, R(1), S]);
        assert_eq!(spanned_subtree(&t, Target::Nodes(&[2])).unwrap().nodes, vec![2]);
        assert_eq!(spanned_subtree(&t, Target::Nodes(&[0, 2])).unwrap().nodes, vec![0, 1, 2]);
        let st = steiner_star(3);
        let all = VertexSet::from_vec(vec![0, 1, 2]);
        assert_eq!(spanned_subtree(&st, Target::Vertices(&all)).unwrap().nodes, vec![0, 1, 2, 3]);
        assert!(spanned_subtree(&st, Target::Vertices(&VertexSet::singleton(9))).is_err());
    }

    #[test]
    fn metrics_examples() {
        let m = tree_metrics(&SteinerTree::single(S), None);
        assert_eq!((m.diameter, m.radius, m.center.clone()), (0, 0, vec![0]));
        let p5 = path_tree(&[R(0), S, S, S, R(1)]);
        let m = tree_metrics(&p5, None);
        assert_eq!((m.diameter, m.radius, m.center.clone()), (4, 2, vec![2]));
        let p4 = path_tree(&[R(0), S, S, R(1)]);
        let m = tree_metrics(&p4, None);
        assert_eq!((m.diameter, m.center.clone()), (3, vec![1, 2]));
    }

    #[test]
    fn equivalence_examples() {
        let a = steiner_star(3);
        assert!(steiner_equivalent(&a, &a));
        // same star with nodes permuted
        let b = SteinerTree::from_edges(vec![R(2), R(0), S, R(1)], &[(0, 2), (1, 2), (3, 2)], 0).unwrap();
        assert!(steiner_equivalent(&a, &b));
        let real_center = SteinerTree::from_edges(vec![R(1), R(0), R(2)], &[(0, 1), (0, 2)], 0).unwrap();
        assert!(!steiner_equivalent(&a, &real_center));
    }

    #[test]
    fn text_roundtrip() {
        let t = path_tree(&[R(0), S, S, R(1), S, S, S, R(2)]);
        let txt = t.to_text();
        let u = SteinerTree::parse(&txt).unwrap();
        assert_eq!(u.to_text(), txt);
        assert!(SteinerTree::parse("2\n0 -1 s\n1 -1 s\n").is_err());
        assert!(SteinerTree::parse("2\n0 -1 r:0\n1 0 q\n").is_err());
    }

    fn fig3() -> (Graph, [usize; 12]) {
        // names: x1 x2 x3 u1 u2 u3 v1 v2 v3 y
        let (x1, x2, x3, u1, u2, u3, v1, v2, v3, y) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
        let cliques: Vec<Vec<usize>> = vec![
            vec![x1, x2, x3],
            vec![u1, u2, u3],
            vec![v1, v2, v3],
            vec![y, x1, x2, u1, v1, u3],
            vec![y, x1, x2, u1, v1, v3],
        ];
        let mut e = Vec::new();
        for c in &cliques {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    e.push((a, b));
                }
            }
        }
        (Graph::from_edges(10, &e).unwrap(), [x1, x2, x3, u1, u2, u3, v1, v2, v3, y, 0, 0])
    }

    #[test]
    fn classification_fig3() {
        let (g, [x1, x2, _, u1, _, _, v1, _, _, y, ..]) = fig3();
        let ca = clique_arrangement(&g).unwrap();
        let x = VertexSet::from_vec(vec![y, x1, x2, u1, v1]);
        let c = classify_vertices(&x, &ca).unwrap();
        assert!(matches!(c.tag(x1), Some(VertexTag::InternallyConstrained { .. })));
        assert!(matches!(c.tag(x2), Some(VertexTag::InternallyConstrained { .. })));
        assert!(matches!(c.tag(u1), Some(VertexTag::Sandwiched { .. })));
        assert!(matches!(c.tag(v1), Some(VertexTag::Sandwiched { .. })));
        assert_eq!(c.tag(y), Some(&VertexTag::Free));
        assert!(classify_vertices(&VertexSet::from_vec(vec![x1, u2()]), &ca).is_err());
        fn u2() -> usize {
            4
        }
    }

    #[test]
    fn classification_complete() {
        let g = Graph::complete(4);
        let ca = clique_arrangement(&g).unwrap();
        let c = classify_vertices(&(0..4).collect(), &ca).unwrap();
        assert_eq!(c.free().len(), 4);
    }

    #[test]
    fn well_structured_examples() {
        let g = Graph::complete(3);
        let ca = clique_arrangement(&g).unwrap();
        assert!(is_well_structured(&steiner_star(3), &g, &ca));
        let p = path_tree(&[R(0), R(1), R(2)]);
        assert!(!is_well_structured(&p, &g, &ca));
    }
}
