//! Minor models: certificates that a pattern graph is a minor of a host graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::graph::{normalized, Graph};

/// Branch set `branch_sets[v]` in `host` for every pattern vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub pattern: Graph,
    pub host: Graph,
    pub branch_sets: Vec<Vec<usize>>,
}

/// The first invariant a model violates, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BranchSetCount { expected: usize, got: usize },
    EmptyBranchSet { pattern_vertex: usize },
    HostVertexOutOfRange { pattern_vertex: usize, host_vertex: usize },
    Overlap { host_vertex: usize, first: usize, second: usize },
    Disconnected { pattern_vertex: usize },
    MissingEdge { edge: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BranchSetCount { expected, got } => {
                write!(f, "expected {expected} branch sets, got {got}")
            }
            Violation::EmptyBranchSet { pattern_vertex } => {
                write!(f, "branch set of pattern vertex {pattern_vertex} is empty")
            }
            Violation::HostVertexOutOfRange {
                pattern_vertex,
                host_vertex,
            } => write!(
                f,
                "branch set of pattern vertex {pattern_vertex} names missing host vertex {host_vertex}"
            ),
            Violation::Overlap {
                host_vertex,
                first,
                second,
            } => write!(
                f,
                "host vertex {host_vertex} lies in the branch sets of {first} and {second}"
            ),
            Violation::Disconnected { pattern_vertex } => {
                write!(f, "branch set of pattern vertex {pattern_vertex} is disconnected")
            }
            Violation::MissingEdge { edge } => {
                write!(f, "no host edge realises pattern edge {edge:?}")
            }
        }
    }
}

impl MinorModel {
    pub fn new(pattern: Graph, host: Graph, branch_sets: Vec<Vec<usize>>) -> Self {
        MinorModel {
            pattern,
            host,
            branch_sets: branch_sets.iter().map(|b| normalized(b)).collect(),
        }
    }

    /// The identity model of `g` in itself.
    pub fn identity(g: &Graph) -> Self {
        MinorModel {
            pattern: g.clone(),
            host: g.clone(),
            branch_sets: (0..g.n()).map(|v| vec![v]).collect(),
        }
    }

    pub fn verify(&self) -> std::result::Result<(), Violation> {
        verify_branch_sets(&self.pattern, &self.host, &self.branch_sets)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// Host vertex to pattern vertex, `None` for unused host vertices.
    pub fn owner(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.host.n()];
        for (v, set) in self.branch_sets.iter().enumerate() {
            for &x in set {
                if x < owner.len() {
                    owner[x] = Some(v);
                }
            }
        }
        owner
    }

    /// Total number of host vertices used.
    pub fn size(&self) -> usize {
        self.branch_sets.iter().map(Vec::len).sum()
    }
}

/// Checks disjointness, connectivity of each branch set and an edge between the
/// branch sets of every pattern edge, in that order.
pub fn verify_minor_model(m: &MinorModel) -> std::result::Result<(), Violation> {
    m.verify()
}

pub fn verify_branch_sets(pattern: &Graph, host: &Graph, sets: &[Vec<usize>]) -> std::result::Result<(), Violation> {
    if sets.len() != pattern.n() {
        return Err(Violation::BranchSetCount {
            expected: pattern.n(),
            got: sets.len(),
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; host.n()];
    for (v, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Violation::EmptyBranchSet { pattern_vertex: v });
        }
        for &x in set {
            if x >= host.n() {
                return Err(Violation::HostVertexOutOfRange {
                    pattern_vertex: v,
                    host_vertex: x,
                });
            }
            match owner[x] {
                Some(w) => {
                    return Err(Violation::Overlap {
                        host_vertex: x,
                        first: w.min(v),
                        second: w.max(v),
                    })
                }
                None => owner[x] = Some(v),
            }
        }
    }
    for (v, set) in sets.iter().enumerate() {
        if !host.is_connected_set(set) {
            return Err(Violation::Disconnected { pattern_vertex: v });
        }
    }
    for (a, b) in pattern.edges() {
        let touches = sets[a]
            .iter()
            .any(|&x| host.neighbors(x).iter().any(|&y| owner[y] == Some(b)));
        if !touches {
            return Err(Violation::MissingEdge { edge: (a, b) });
        }
    }
    Ok(())
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && a.edges().all(|(u, v)| b.has_edge(u, v))
}

/// Chains `H <= G` and `G <= F` into `H <= F`.
pub fn compose_models(inner: &MinorModel, outer: &MinorModel) -> Result<MinorModel> {
    if !same_graph(&inner.host, &outer.pattern) {
        return pre("host of the first model differs from the pattern of the second");
    }
    if let Err(v) = inner.verify() {
        return Err(Error::Precondition(format!("first model invalid: {v}")));
    }
    if let Err(v) = outer.verify() {
        return Err(Error::Precondition(format!("second model invalid: {v}")));
    }
    Ok(compose_unchecked(inner, outer))
}

/// Composition without re-verifying the inputs.
pub(crate) fn compose_unchecked(inner: &MinorModel, outer: &MinorModel) -> MinorModel {
    let branch_sets = inner
        .branch_sets
        .iter()
        .map(|set| {
            let mut out: Vec<usize> = set.iter().flat_map(|&x| outer.branch_sets[x].iter().copied()).collect();
            out.sort_unstable();
            out
        })
        .collect();
    MinorModel {
        pattern: inner.pattern.clone(),
        host: outer.host.clone(),
        branch_sets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_in_square() {
        let k3 = Graph::complete(3);
        let c4 = Graph::cycle(4);
        let good = MinorModel::new(k3.clone(), c4.clone(), vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(good.verify(), Ok(()));
        let bad = MinorModel::new(k3, c4, vec![vec![0], vec![1], vec![3]]);
        assert_eq!(bad.verify(), Err(Violation::MissingEdge { edge: (1, 2) }));
    }

    #[test]
    fn violations_in_order() {
        let p = Graph::path(2);
        let h = Graph::path(4);
        let m = MinorModel::new(p.clone(), h.clone(), vec![vec![0, 1], vec![1]]);
        assert_eq!(
            m.verify(),
            Err(Violation::Overlap {
                host_vertex: 1,
                first: 0,
                second: 1
            })
        );
        let m = MinorModel::new(p.clone(), h.clone(), vec![vec![0, 2], vec![3]]);
        assert_eq!(m.verify(), Err(Violation::Disconnected { pattern_vertex: 0 }));
        let m = MinorModel::new(p.clone(), h.clone(), vec![vec![0]]);
        assert!(matches!(m.verify(), Err(Violation::BranchSetCount { .. })));
        let m = MinorModel::new(p, h, vec![vec![0], vec![9]]);
        assert!(matches!(m.verify(), Err(Violation::HostVertexOutOfRange { .. })));
        assert!(MinorModel::identity(&Graph::grid(3, 3)).is_valid());
    }

    #[test]
    fn composition() {
        let k3 = Graph::complete(3);
        let c4 = Graph::cycle(4);
        let mut c5 = Graph::cycle(4);
        c5.remove_edge(3, 0);
        let s = c5.add_vertex();
        c5.add_edge(3, s);
        c5.add_edge(s, 0);
        let m1 = MinorModel::new(k3, c4.clone(), vec![vec![0], vec![1], vec![2, 3]]);
        let m2 = MinorModel::new(c4.clone(), c5, vec![vec![0], vec![1], vec![2], vec![3, 4]]);
        let m = compose_models(&m1, &m2).unwrap();
        assert!(m.is_valid());
        assert_eq!(m.branch_sets, vec![vec![0], vec![1], vec![2, 3, 4]]);
        assert_eq!(compose_models(&m1, &MinorModel::identity(&c4)).unwrap(), m1);
        assert!(compose_models(&m2, &m1).is_err());
    }
}
