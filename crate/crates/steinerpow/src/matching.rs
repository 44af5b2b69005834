//! Exact maximum-weight bipartite matching (Hungarian method).

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

impl WeightedBipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(l, r, _) in &edges {
            if l >= left || r >= right {
                return Err(Error::Input(format!("edge ({l},{r}) out of range")));
            }
            if !seen.insert((l, r)) {
                return Err(Error::Input(format!("duplicate edge ({l},{r})")));
            }
        }
        Ok(WeightedBipartiteGraph { left, right, edges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// (left, right, weight), sorted by left.
    pub edges: Vec<(usize, usize, u64)>,
    pub total: u64,
}

/// Min-cost assignment of every row to a distinct column (rows <= cols).
fn hungarian(cost: &[Vec<i64>], rows: usize, cols: usize) -> Vec<usize> {
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=cols {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![usize::MAX; rows];
    for j in 1..=cols {
        if p[j] != 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

fn solve(g: &WeightedBipartiteGraph, weight: &dyn Fn(usize, u64) -> u64) -> Matching {
    let (l, r) = (g.left, g.right);
    if l == 0 || r == 0 || g.edges.is_empty() {
        return Matching { edges: Vec::new(), total: 0 };
    }
    let mut w = vec![vec![None; r]; l];
    let mut maxw = 0u64;
    for &(a, b, x) in &g.edges {
        let y = weight(a, x);
        w[a][b] = Some((x, y));
        maxw = maxw.max(y);
    }
    // square-ish: rows = smaller side
    let transpose = l > r;
    let (rows, cols) = if transpose { (r, l) } else { (l, r) };
    let mut cost = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let (a, b) = if transpose { (j, i) } else { (i, j) };
            let y = w[a][b].map_or(0, |e| e.1);
            cost[i][j] = maxw as i64 - y as i64;
        }
    }
    let assign = hungarian(&cost, rows, cols);
    let mut edges = Vec::new();
    for (i, &j) in assign.iter().enumerate() {
        let (a, b) = if transpose { (j, i) } else { (i, j) };
        if let Some((x, y)) = w[a][b] {
            if y > 0 {
                edges.push((a, b, x));
            }
        }
    }
    edges.sort();
    let total = edges.iter().map(|e| e.2).sum();
    Matching { edges, total }
}

pub fn max_weight_matching(g: &WeightedBipartiteGraph) -> Matching {
    solve(g, &|_, w| w)
}

/// Maximum-weight matching among those covering every left vertex in
/// `required_left`, or None when no matching covers them. Saturation is
/// enforced by adding a bonus larger than the sum of all weights to every edge
/// at a required left vertex.
pub fn saturating_matching(g: &WeightedBipartiteGraph, required_left: &[usize]) -> Option<Matching> {
    let mut req = vec![false; g.left];
    for &l in required_left {
        if l >= g.left {
            return None;
        }
        req[l] = true;
    }
    let bonus = g.edges.iter().map(|e| e.2).sum::<u64>() + 1;
    let m = solve(g, &|a, w| if req[a] { w + bonus } else { w });
    let covered = required_left.iter().all(|&l| m.edges.iter().any(|e| e.0 == l));
    if covered {
        Some(m)
    } else {
        None
    }
}

/// Exhaustive maximum over all matchings; for tests on small instances.
pub fn brute_force_max_weight(g: &WeightedBipartiteGraph) -> u64 {
    let mut w = vec![vec![None; g.right]; g.left];
    for &(a, b, x) in &g.edges {
        w[a][b] = Some(x);
    }
    fn go(i: usize, used: &mut Vec<bool>, w: &[Vec<Option<u64>>]) -> u64 {
        if i == w.len() {
            return 0;
        }
        let mut best = go(i + 1, used, w);
        for j in 0..used.len() {
            if !used[j] {
                if let Some(x) = w[i][j] {
                    used[j] = true;
                    best = best.max(x + go(i + 1, used, w));
                    used[j] = false;
                }
            }
        }
        best
    }
    go(0, &mut vec![false; g.right], &w)
}
