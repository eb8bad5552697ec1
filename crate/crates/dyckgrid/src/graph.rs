//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positional label `(ring or row, position or column)`, both 1-based.
pub type Label = (usize, usize);

/// Finite simple undirected graph.
///
/// Adjacency lists are kept sorted, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<Label>>,
}

/// JSON form `{n, edges: [[u, v], ...], labels?}`.
#[derive(Clone, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<[usize; 2]>>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels.map(|l| l.into_iter().map(|(a, b)| [a, b]).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(j.n, &edges)?;
        g.set_labels(j.labels.map(|l| l.into_iter().map(|[a, b]| (a, b)).collect()))?;
        Ok(g)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Malformed(format!("loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The `rows × cols` grid, vertex `(i, j)` at id `i * cols + j`, labelled 1-based.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::new(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if j + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if i + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        let labels = (0..rows * cols).map(|v| (v / cols + 1, v % cols + 1)).collect();
        g.labels = Some(labels);
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        if let Some(l) = self.labels.as_mut() {
            l.push((0, 0));
        }
        self.adj.len() - 1
    }

    /// Inserts `uv`; returns false if it was already present.
    ///
    /// Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(p) => {
                self.adj[u].insert(p, v);
                let q = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(q, u);
                self.m += 1;
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(p) => {
                self.adj[u].remove(p);
                let q = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(q);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn set_labels(&mut self, labels: Option<Vec<Label>>) -> Result<()> {
        if let Some(l) = &labels {
            if l.len() != self.n() {
                return Err(Error::Malformed(format!(
                    "{} labels for {} vertices",
                    l.len(),
                    self.n()
                )));
            }
        }
        self.labels = labels;
        Ok(())
    }

    /// Reverse label lookup. `None` when the graph is unlabelled.
    pub fn label_index(&self) -> Option<HashMap<Label, usize>> {
        self.labels
            .as_ref()
            .map(|l| l.iter().enumerate().map(|(v, &lab)| (lab, v)).collect())
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    h.add_edge(i, j);
                }
            }
        }
        if let Some(l) = &self.labels {
            h.labels = Some(vertices.iter().map(|&v| l[v]).collect());
        }
        h
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all = vec![true; self.n()];
        self.components_within(&all)
    }

    /// Components of the subgraph induced by `{v : allowed[v]}`.
    pub fn components_within(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !allowed[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether `set` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut inside = vec![false; self.n()];
        for &v in set {
            if v >= self.n() {
                return false;
            }
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components().len() == 1
    }

    /// Shortest path from any source to any target using only `allowed` vertices.
    pub fn bfs_path(&self, sources: &[usize], targets: &[bool], allowed: &[bool]) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n()];
        let mut seen = vec![false; self.n()];
        let mut q = VecDeque::new();
        for &s in sources {
            if allowed[s] && !seen[s] {
                seen[s] = true;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            if targets[v] {
                let mut path = vec![v];
                let mut x = v;
                while prev[x] != usize::MAX {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[v] {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    prev[w] = v;
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Copy with the listed vertices removed; returns the graph and the old ids kept.
    pub fn without_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        (self.induced(&keep), keep)
    }

    /// Disjoint union; the second graph's ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.labels = None;
        for _ in 0..other.n() {
            g.adj.push(Vec::new());
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }
}

/// Sorted, deduplicated copy of a vertex list.
pub fn normalized(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Boolean membership table for `set` over `n` vertices.
pub fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// A set of pairwise vertex-disjoint paths.
#[derive(Clone, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
}

impl Linkage {
    pub fn order(&self) -> usize {
        self.paths.len()
    }

    /// Checks adjacency along each path, no repeated vertex, and disjointness.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        for p in &self.paths {
            if p.is_empty() {
                return false;
            }
            for (i, &v) in p.iter().enumerate() {
                if v >= g.n() || used[v] {
                    return false;
                }
                used[v] = true;
                if i > 0 && !g.has_edge(p[i - 1], v) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_a_set() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = Graph::grid(3, 4);
        assert_eq!(g.n(), 12);
        assert_eq!(g.m(), 3 * 3 + 2 * 4);
        assert_eq!(g.label(5), Some((2, 2)));
    }

    #[test]
    fn connectivity_helpers() {
        let g = Graph::path(4);
        assert!(g.is_connected_set(&[1, 2]));
        assert!(!g.is_connected_set(&[0, 2]));
        assert!(!g.is_connected_set(&[]));
        let h = g.disjoint_union(&Graph::path(2));
        assert_eq!(h.components(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
    }

    #[test]
    fn linkage_validity() {
        let g = Graph::cycle(5);
        assert!(Linkage { paths: vec![vec![0, 1], vec![2, 3, 4]] }.is_valid(&g));
        assert!(!Linkage { paths: vec![vec![0, 2]] }.is_valid(&g));
        assert!(!Linkage { paths: vec![vec![0, 1], vec![1, 2]] }.is_valid(&g));
    }
}
