//! Vertex-disjoint paths and minimum vertex cuts by unit-capacity flow on the
//! vertex-split graph.

use std::collections::VecDeque;

use crate::graph::{normalized, Graph, Linkage};
use crate::separation::Separation;

const INF: i32 = i32::MAX / 4;

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = prev[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        false
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &e in &self.head[v] {
                // e is v -> u; its partner u -> v has residual capacity cap[e ^ 1].
                let u = self.to[e];
                if self.cap[e ^ 1] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Flow state after a maximum flow from `X` to `Y`.
struct Solved {
    net: Network,
    n: usize,
    flow: usize,
}

fn inn(v: usize) -> usize {
    2 * v
}
fn out(v: usize) -> usize {
    2 * v + 1
}

fn solve(g: &Graph, x: &[usize], y: &[usize]) -> Solved {
    let n = g.n();
    let s = 2 * n;
    let t = 2 * n + 1;
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        net.arc(inn(v), out(v), 1);
    }
    for (u, v) in g.edges() {
        net.arc(out(u), inn(v), INF);
        net.arc(out(v), inn(u), INF);
    }
    for &v in &normalized(x) {
        net.arc(s, inn(v), INF);
    }
    for &v in &normalized(y) {
        net.arc(out(v), t, INF);
    }
    let mut flow = 0;
    while net.augment(s, t) {
        flow += 1;
    }
    Solved { net, n, flow }
}

impl Solved {
    fn paths(&self, x: &[usize], y: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n;
        let s = 2 * n;
        let t = 2 * n + 1;
        let in_x = crate::graph::membership(n, x);
        let in_y = crate::graph::membership(n, y);
        // Flow on a forward arc equals the residual capacity of its partner.
        let used = |e: usize| e.is_multiple_of(2) && self.net.cap[e ^ 1] > 0;
        let mut out_paths = Vec::new();
        for &e in &self.net.head[s] {
            if !used(e) {
                continue;
            }
            let mut path = Vec::new();
            let mut node = self.net.to[e];
            loop {
                if node == t {
                    break;
                }
                if node.is_multiple_of(2) {
                    path.push(node / 2);
                }
                let next = self.net.head[node]
                    .iter()
                    .copied()
                    .find(|&f| used(f))
                    .expect("flow conservation");
                node = self.net.to[next];
            }
            let last_x = path.iter().rposition(|&v| in_x[v]).expect("path starts in X");
            let first_y = last_x + path[last_x..].iter().position(|&v| in_y[v]).expect("path ends in Y");
            out_paths.push(path[last_x..=first_y].to_vec());
        }
        out_paths.sort();
        out_paths
    }

    fn min_cut(&self) -> Vec<usize> {
        let r = self.net.reachable_from(2 * self.n);
        (0..self.n).filter(|&v| r[inn(v)] && !r[out(v)]).collect()
    }
}

/// A minimum set of vertices meeting every `X`–`Y` path, with a maximum family of
/// vertex-disjoint `X`–`Y` paths of the same size.
///
/// Every returned path meets `X` only in its first vertex and `Y` only in its last.
/// A vertex of `X ∩ Y` is a trivial one-vertex path and always lies in the cut.
pub fn min_vertex_cut(g: &Graph, x: &[usize], y: &[usize]) -> (Vec<usize>, Linkage) {
    let solved = solve(g, x, y);
    let cut = solved.min_cut();
    let paths = solved.paths(x, y);
    debug_assert_eq!(cut.len(), solved.flow);
    (cut, Linkage { paths })
}

/// Maximum number of vertex-disjoint `X`–`Y` paths.
pub fn max_disjoint_paths(g: &Graph, x: &[usize], y: &[usize]) -> usize {
    solve(g, x, y).flow
}

/// Which minimum separation to return when several exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `A` as small as possible.
    NearX,
    /// `A` as large as possible.
    NearY,
}

/// A separation `(A, B)` of minimum order with `X ⊆ A` and `Y ⊆ B`.
pub fn min_separation(g: &Graph, x: &[usize], y: &[usize], side: Side) -> Separation {
    let solved = solve(g, x, y);
    let n = g.n();
    let (a, b): (Vec<usize>, Vec<usize>) = match side {
        Side::NearX => {
            let r = solved.net.reachable_from(2 * n);
            let a: Vec<usize> = (0..n).filter(|&v| r[inn(v)]).collect();
            let b: Vec<usize> = (0..n).filter(|&v| !r[out(v)]).collect();
            (a, b)
        }
        Side::NearY => {
            let r = solved.net.reaching(2 * n + 1);
            let a: Vec<usize> = (0..n).filter(|&v| !r[inn(v)]).collect();
            let b: Vec<usize> = (0..n).filter(|&v| r[out(v)]).collect();
            (a, b)
        }
    };
    let sep = Separation::new(&a, &b);
    debug_assert_eq!(sep.order(), solved.flow);
    sep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::is_separation;

    #[test]
    fn grid_columns() {
        let g = Graph::grid(3, 3);
        let (cut, link) = min_vertex_cut(&g, &[0, 3, 6], &[2, 5, 8]);
        assert_eq!(cut.len(), 3);
        assert_eq!(link.order(), 3);
        assert!(link.is_valid(&g));
    }

    #[test]
    fn disconnected_and_shared() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        let (cut, link) = min_vertex_cut(&g, &[0], &[3]);
        assert!(cut.is_empty());
        assert!(link.paths.is_empty());
        let (cut, link) = min_vertex_cut(&g, &[1], &[1]);
        assert_eq!(cut, vec![1]);
        assert_eq!(link.paths, vec![vec![1]]);
    }

    #[test]
    fn separation_sides() {
        let g = Graph::path(5);
        let near_x = min_separation(&g, &[0], &[4], Side::NearX);
        let near_y = min_separation(&g, &[0], &[4], Side::NearY);
        assert_eq!(near_x, Separation::new(&[0], &[0, 1, 2, 3, 4]));
        assert_eq!(near_y, Separation::new(&[0, 1, 2, 3, 4], &[4]));
        for s in [&near_x, &near_y] {
            assert!(is_separation(&g, &s.a, &s.b));
        }
    }

    #[test]
    fn trimmed_paths() {
        let g = Graph::path(4);
        let (_, link) = min_vertex_cut(&g, &[0, 1], &[2, 3]);
        assert_eq!(link.paths, vec![vec![1, 2]]);
    }
}
