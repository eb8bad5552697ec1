//! Tree decompositions: validation, width, adhesion and torsos.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalized, Graph};

/// Tree decomposition with nodes `0..bags.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// The first condition a decomposition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NodeOutOfRange { edge: (usize, usize) },
    NotATree,
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { edge: (usize, usize) },
    NotSubtree { vertex: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NodeOutOfRange { edge } => write!(f, "tree edge {edge:?} names a missing node"),
            TdViolation::NotATree => write!(f, "decomposition tree is not a tree"),
            TdViolation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds vertex {vertex} outside the graph")
            }
            TdViolation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            TdViolation::EdgeUncovered { edge } => write!(f, "edge {edge:?} is in no bag"),
            TdViolation::NotSubtree { vertex } => {
                write!(f, "bags containing vertex {vertex} do not induce a subtree")
            }
        }
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition {
            bags: bags.iter().map(|b| normalized(b)).collect(),
            tree_edges,
        }
    }

    /// One node holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![(0..g.n()).collect()],
            tree_edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; `-1` for the empty decomposition of the empty graph.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// Largest intersection of the bags at the ends of a tree edge.
    pub fn adhesion(&self) -> usize {
        self.tree_edges
            .iter()
            .map(|&(s, t)| intersect(&self.bags[s], &self.bags[t]).len())
            .max()
            .unwrap_or(0)
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .tree_edges
            .iter()
            .filter_map(|&(s, t)| {
                if s == node {
                    Some(t)
                } else if t == node {
                    Some(s)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), TdViolation> {
        let k = self.bags.len();
        for &(s, t) in &self.tree_edges {
            if s >= k || t >= k || s == t {
                return Err(TdViolation::NodeOutOfRange { edge: (s, t) });
            }
        }
        let tree = Graph::from_edges(k, &self.tree_edges).map_err(|_| TdViolation::NotATree)?;
        let is_tree = if k == 0 {
            self.tree_edges.is_empty()
        } else {
            tree.m() == k - 1 && self.tree_edges.len() == k - 1 && tree.is_connected()
        };
        if !is_tree {
            return Err(TdViolation::NotATree);
        }
        let n = g.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(TdViolation::VertexOutOfRange { node, vertex: v });
                }
                holders[v].push(node);
            }
        }
        if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
            return Err(TdViolation::VertexUncovered { vertex: v });
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|node| self.bags[*node].binary_search(&v).is_ok()) {
                return Err(TdViolation::EdgeUncovered { edge: (u, v) });
            }
        }
        for (v, held) in holders.iter().enumerate() {
            if !tree.is_connected_set(held) {
                return Err(TdViolation::NotSubtree { vertex: v });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    /// Torso at `node`: `G[β(node)]` plus a clique on every adhesion set of the node.
    /// Vertex `i` of the result is the `i`-th smallest vertex of the bag.
    pub fn torso(&self, g: &Graph, node: usize) -> Result<Graph> {
        let bag = self
            .bags
            .get(node)
            .ok_or_else(|| Error::Precondition(format!("no decomposition node {node}")))?;
        let mut t = g.induced(bag);
        for other in self.neighbors(node) {
            let shared = intersect(bag, &self.bags[other]);
            let local: Vec<usize> = shared.iter().map(|v| bag.binary_search(v).unwrap()).collect();
            for i in 0..local.len() {
                for j in i + 1..local.len() {
                    t.add_edge(local[i], local[j]);
                }
            }
        }
        Ok(t)
    }

    /// Decomposition from an elimination ordering of all vertices.
    pub fn from_elimination(g: &Graph, order: &[usize]) -> Self {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition::default();
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut nbrs: Vec<std::collections::BTreeSet<usize>> =
            (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut bags = Vec::with_capacity(n);
        let mut parent_vertex = vec![None; n];
        for &v in order {
            let later: Vec<usize> = nbrs[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
            for i in 0..later.len() {
                for j in i + 1..later.len() {
                    nbrs[later[i]].insert(later[j]);
                    nbrs[later[j]].insert(later[i]);
                }
            }
            parent_vertex[v] = later.iter().copied().min_by_key(|&u| pos[u]);
            let mut bag = later;
            bag.push(v);
            bags.push(normalized(&bag));
        }
        let mut tree_edges = Vec::new();
        let mut roots = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            match parent_vertex[v] {
                Some(p) => tree_edges.push((i, pos[p])),
                None => roots.push(i),
            }
        }
        for w in roots.windows(2) {
            tree_edges.push((w[0], w[1]));
        }
        TreeDecomposition { bags, tree_edges }
    }
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

#[derive(Serialize, Deserialize)]
struct TdJson {
    nodes: Vec<usize>,
    tree_edges: Vec<[usize; 2]>,
    bags: Vec<Vec<usize>>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TdJson {
            nodes: (0..self.bags.len()).collect(),
            tree_edges: self.tree_edges.iter().map(|&(a, b)| [a, b]).collect(),
            bags: self.bags.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TdJson::deserialize(d)?;
        if raw.nodes.len() != raw.bags.len() || raw.nodes.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(serde::de::Error::custom("nodes must be 0..bags.len() in order"));
        }
        Ok(TreeDecomposition::new(
            raw.bags,
            raw.tree_edges.into_iter().map(|[a, b]| (a, b)).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_decomposition() {
        let g = Graph::path(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 1);
        assert_eq!(td.adhesion(), 1);
        let broken = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert_eq!(broken.validate(&g), Err(TdViolation::EdgeUncovered { edge: (1, 2) }));
    }

    #[test]
    fn trivial_and_subtree() {
        let g = Graph::complete(4);
        let td = TreeDecomposition::trivial(&g);
        assert!(td.is_valid(&g));
        assert_eq!(td.width(), 3);
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert_eq!(td.validate(&g), Err(TdViolation::NotSubtree { vertex: 1 }));
    }

    #[test]
    fn torsos() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 2], vec![0, 1, 2]], vec![(0, 1)]);
        assert!(td.is_valid(&g));
        let t = td.torso(&g, 0).unwrap();
        assert_eq!(t.n(), 2);
        assert!(t.has_edge(0, 1));
        let single = TreeDecomposition::trivial(&g);
        assert_eq!(single.torso(&g, 0).unwrap(), g);
        let with_empty = TreeDecomposition::new(vec![vec![0, 1, 2], vec![]], vec![(0, 1)]);
        assert_eq!(with_empty.torso(&g, 1).unwrap().n(), 0);
        assert!(td.torso(&g, 5).is_err());
    }

    #[test]
    fn elimination_builds_valid_decompositions() {
        let g = Graph::grid(3, 3);
        let order: Vec<usize> = (0..9).collect();
        let td = TreeDecomposition::from_elimination(&g, &order);
        assert!(td.is_valid(&g));
        let disconnected = Graph::path(2).disjoint_union(&Graph::path(3));
        let td = TreeDecomposition::from_elimination(&disconnected, &[4, 0, 2, 1, 3]);
        assert!(td.is_valid(&disconnected));
    }

    #[test]
    fn json_roundtrip() {
        let td = TreeDecomposition::new(vec![vec![1, 0], vec![1, 2]], vec![(0, 1)]);
        let s = serde_json::to_string(&td).unwrap();
        assert_eq!(s, r#"{"nodes":[0,1],"tree_edges":[[0,1]],"bags":[[0,1],[1,2]]}"#);
        let back: TreeDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, td);
    }
}
