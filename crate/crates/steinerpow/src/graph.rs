//! Simple undirected graphs over dense vertex ids, plus the edge-list format.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Marker distance for unreachable vertices.
pub const INF: usize = usize::MAX;

/// Sorted, duplicate-free list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_vec(mut v: Vec<Vertex>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        VertexSet::from_vec(v)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        let b = &other.0;
        let mut j = 0;
        for &x in &self.0 {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j == b.len() || b[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn is_strict_subset(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range ids are
    /// errors; repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at {u}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for a in &mut g.adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut s = VertexSet(self.adj[v].clone());
        s.insert(v);
        s
    }

    pub fn is_clique(&self, s: &[Vertex]) -> bool {
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n() {
            return Err(Error::Input(format!("vertex {v} not in graph (n={})", self.n())));
        }
        Ok(())
    }

    /// Unweighted distances from `source`; unreachable vertices get [`INF`].
    pub fn bfs_distances(&self, source: Vertex) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        let mut dist = vec![INF; self.n()];
        dist[source] = 0;
        let mut q = VecDeque::from([source]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Components in order of their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            out.push(VertexSet::from_vec(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Subgraph induced on `s`; vertex `s[i]` becomes `i`. The returned map
    /// sends new ids back to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        let map: Vec<Vertex> = s.iter().collect();
        let mut back = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut g = Graph::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            g.adj[i] = self.adj[v].iter().filter(|&&w| back[w] != usize::MAX).map(|&w| back[w]).collect();
            g.adj[i].sort_unstable();
        }
        Ok((g, map))
    }

    /// Classes of vertices with equal closed neighborhoods, ordered by their
    /// smallest member.
    pub fn true_twin_classes(&self) -> Vec<VertexSet> {
        let mut by_nb: BTreeMap<VertexSet, Vec<Vertex>> = BTreeMap::new();
        for v in 0..self.n() {
            by_nb.entry(self.closed_neighborhood(v)).or_default().push(v);
        }
        let mut out: Vec<VertexSet> = by_nb.into_values().map(VertexSet::from_vec).collect();
        out.sort();
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse { line: lineno + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err("expected two integers"));
            }
            let a: usize = toks[0].parse().map_err(|_| parse_err("bad integer"))?;
            let b: usize = toks[1].parse().map_err(|_| parse_err("bad integer"))?;
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= n || b >= n {
                        return Err(parse_err("vertex id out of range"));
                    }
                    if a == b {
                        return Err(parse_err("self-loop"));
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_examples() {
        let p3 = Graph::path(3);
        assert_eq!(p3.bfs_distances(0).unwrap(), vec![0, 1, 2]);
        let k3 = Graph::complete(3);
        assert_eq!(k3.bfs_distances(1).unwrap(), vec![1, 0, 1]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = two.bfs_distances(0).unwrap();
        assert_eq!(d[2], INF);
        assert_eq!(d[3], INF);
        assert!(p3.bfs_distances(7).is_err());
    }

    #[test]
    fn components() {
        assert!(Graph::new(0).connected_components().is_empty());
        assert_eq!(Graph::complete(3).connected_components().len(), 1);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = two.connected_components();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn induced() {
        let c4 = Graph::cycle(4);
        let (g, map) = c4.induced_subgraph(&VertexSet::from_vec(vec![0, 1, 2])).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(map, vec![0, 1, 2]);
        let all: VertexSet = (0..4).collect();
        assert_eq!(c4.induced_subgraph(&all).unwrap().0, c4);
        let (k2, _) = Graph::complete(4).induced_subgraph(&VertexSet::from_vec(vec![1, 3])).unwrap();
        assert_eq!(k2, Graph::complete(2));
        assert!(c4.induced_subgraph(&VertexSet::from_vec(vec![9])).is_err());
    }

    #[test]
    fn twins() {
        assert_eq!(Graph::complete(3).true_twin_classes().len(), 1);
        assert_eq!(Graph::path(3).true_twin_classes().len(), 3);
        // K4 minus edge 0-1: vertices 2,3 are twins
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = g.true_twin_classes();
        assert_eq!(c, vec![VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::from_vec(vec![2, 3])]);
    }

    #[test]
    fn parse_roundtrip() {
        let g = Graph::parse_edge_list("# triangle\n3 3\n0 1\n\n1 2 # c\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        match Graph::parse_edge_list("3 1\n0 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(Graph::parse_edge_list("2 1\n0 0\n").is_err());
        assert!(Graph::parse_edge_list("2 2\n0 1\n").is_err());
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_vec(vec![3, 1, 2, 3]);
        let b = VertexSet::from_vec(vec![2, 5]);
        assert_eq!(a.as_slice(), &[1, 2, 3]);
        assert_eq!(a.intersection(&b).as_slice(), &[2]);
        assert_eq!(a.union(&b).as_slice(), &[1, 2, 3, 5]);
        assert_eq!(a.difference(&b).as_slice(), &[1, 3]);
        assert!(VertexSet::from_vec(vec![1, 3]).is_strict_subset(&a));
        assert!(!a.is_strict_subset(&a));
        assert!(a.is_subset(&a));
    }
}
