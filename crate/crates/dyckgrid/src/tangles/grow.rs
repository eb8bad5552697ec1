//! Finding a wall as a topological minor and growing it against a well-linked set.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{pre, Error, Result};
use crate::flow::{min_separation, min_vertex_cut, Side};
use crate::graph::{Graph, Linkage};
use crate::separation::Separation;
use crate::wall::{elementary_wall, WallStructure};
use crate::Scalar;

use super::linked::{build_s_free_set_with, WellLinkedWitness};
use super::oracle::TangleOracle;
use super::push::{push_or_delete_with, PushOutcome};

const UNSET: usize = usize::MAX;

struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    max_len: usize,
    budget: usize,
    nodes: usize,
    img: Vec<usize>,
    used: Vec<bool>,
    paths: HashMap<(usize, usize), Vec<usize>>,
}

impl Embedder<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded {
                what: "wall search nodes",
                limit: self.budget,
                got: self.nodes,
            });
        }
        Ok(())
    }

    /// Simple paths from `from` of at most `max_len` edges whose interior is
    /// unused, ending at an unused vertex accepted by `end`.
    fn paths_from(&self, from: usize, end: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        let mut on = vec![false; self.host.n()];
        on[from] = true;
        self.extend(&mut stack, &mut on, end, &mut out);
        out
    }

    fn extend(&self, stack: &mut Vec<usize>, on: &mut [bool], end: &dyn Fn(usize) -> bool, out: &mut Vec<Vec<usize>>) {
        let cur = *stack.last().expect("non-empty");
        for &w in self.host.neighbors(cur) {
            if on[w] || self.used[w] {
                continue;
            }
            stack.push(w);
            if end(w) {
                out.push(stack.clone());
            }
            if stack.len() <= self.max_len {
                on[w] = true;
                self.extend(stack, on, end, out);
                on[w] = false;
            }
            stack.pop();
        }
    }

    fn place(&mut self, i: usize) -> Result<bool> {
        self.tick()?;
        if i == self.order.len() {
            return Ok(true);
        }
        let p = self.order[i];
        let need = self.pattern.degree(p);
        let placed: Vec<usize> = self
            .pattern
            .neighbors(p)
            .iter()
            .copied()
            .filter(|&q| self.img[q] != UNSET)
            .collect();
        let candidates: Vec<Vec<usize>> = match placed.first() {
            None => (0..self.host.n())
                .filter(|&h| !self.used[h] && self.host.degree(h) >= need)
                .map(|h| vec![h])
                .collect(),
            Some(&q) => {
                let host = self.host;
                self.paths_from(self.img[q], &|h| host.degree(h) >= need)
            }
        };
        for path in candidates {
            let h = *path.last().expect("non-empty");
            self.img[p] = h;
            let fresh = if placed.is_empty() { 0 } else { 1 };
            for &v in &path[fresh..] {
                self.used[v] = true;
            }
            if let Some(&q) = placed.first() {
                self.paths.insert((q, p), path.clone());
            }
            if self.connect(p, &placed[placed.len().min(1)..], i)? {
                return Ok(true);
            }
            if let Some(&q) = placed.first() {
                self.paths.remove(&(q, p));
            }
            for &v in &path[fresh..] {
                self.used[v] = false;
            }
            self.img[p] = UNSET;
        }
        Ok(false)
    }

    /// Routes the remaining edges from placed neighbours to `p`, then places
    /// the next pattern vertex.
    fn connect(&mut self, p: usize, rest: &[usize], i: usize) -> Result<bool> {
        let Some((&q, rest)) = rest.split_first() else {
            return self.place(i + 1);
        };
        self.tick()?;
        let target = self.img[p];
        self.used[target] = false;
        let paths = self.paths_from(self.img[q], &|h| h == target);
        self.used[target] = true;
        for path in paths {
            for &v in &path[1..path.len() - 1] {
                self.used[v] = true;
            }
            self.paths.insert((q, p), path.clone());
            if self.connect(p, rest, i)? {
                return Ok(true);
            }
            self.paths.remove(&(q, p));
            for &v in &path[1..path.len() - 1] {
                self.used[v] = false;
            }
        }
        Ok(false)
    }
}

/// Breadth-first order of the pattern from a corner, so that every vertex
/// after the first has a placed neighbour.
fn pattern_order(p: &Graph) -> Vec<usize> {
    let start = (0..p.n()).min_by_key(|&v| (p.degree(v), v)).unwrap_or(0);
    let mut seen = vec![false; p.n()];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in p.neighbors(v) {
            if !std::mem::replace(&mut seen[w], true) {
                order.push(w);
            }
        }
    }
    order
}

/// Searches `g` for a subdivision of the elementary `k`-wall in which every
/// wall edge becomes a path of at most `max_subdivision` edges. Path lengths
/// are deepened one at a time. The wall is returned in the ids of `g`; its
/// graph has `g.n()` vertices and only the wall edges.
pub fn find_wall(g: &Graph, k: usize, max_subdivision: usize, caps: &Caps) -> Result<Option<WallStructure>> {
    let pattern = elementary_wall(k)?;
    if max_subdivision == 0 {
        return pre("max_subdivision must be positive");
    }
    if pattern.graph.n() > g.n() {
        return Ok(None);
    }
    let order = pattern_order(&pattern.graph);
    for max_len in 1..=max_subdivision {
        let mut e = Embedder {
            host: g,
            pattern: &pattern.graph,
            order: order.clone(),
            max_len,
            budget: caps.exhaustive_candidates,
            nodes: 0,
            img: vec![UNSET; pattern.graph.n()],
            used: vec![false; g.n()],
            paths: HashMap::new(),
        };
        if e.place(0)? {
            return Ok(Some(lift(g, &pattern, &e.img, &e.paths)));
        }
    }
    Ok(None)
}

fn lift(
    g: &Graph,
    pattern: &WallStructure,
    img: &[usize],
    paths: &HashMap<(usize, usize), Vec<usize>>,
) -> WallStructure {
    let segment = |a: usize, b: usize| -> Vec<usize> {
        if let Some(p) = paths.get(&(a, b)) {
            p.clone()
        } else {
            let mut p = paths[&(b, a)].clone();
            p.reverse();
            p
        }
    };
    let expand = |walk: &[usize], closed: bool| -> Vec<usize> {
        let mut out = vec![img[walk[0]]];
        let mut steps: Vec<(usize, usize)> = walk.windows(2).map(|w| (w[0], w[1])).collect();
        if closed {
            steps.push((walk[walk.len() - 1], walk[0]));
        }
        for (a, b) in steps {
            out.extend_from_slice(&segment(a, b)[1..]);
        }
        if closed {
            out.pop();
        }
        out
    };
    let mut graph = Graph::new(g.n());
    for (a, b) in pattern.graph.edges() {
        for w in segment(a, b).windows(2) {
            graph.add_edge(w[0], w[1]);
        }
    }
    WallStructure {
        k: pattern.k,
        rows: pattern.rows.iter().map(|r| expand(r, false)).collect(),
        columns: pattern.columns.iter().map(|c| expand(c, false)).collect(),
        perimeter: expand(&pattern.perimeter, true),
        branch_vertices: pattern.branch_vertices.iter().map(|&v| img[v]).collect(),
        graph,
    }
}

/// One vertex per row, taken along the first column from the top.
pub fn wall_representatives(w: &WallStructure) -> Vec<usize> {
    let Some(col) = w.columns.first() else {
        return Vec::new();
    };
    w.rows
        .iter()
        .filter_map(|r| col.iter().copied().find(|v| r.contains(v)))
        .collect()
}

/// Working constants of the growing procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallConstants {
    /// The free set is built with this parameter, so it has one vertex fewer.
    pub free_set_order: usize,
    /// Number of disjoint paths required from the free set to the wall.
    pub linkage: usize,
    pub max_subdivision: usize,
}

impl WallConstants {
    /// Constants sized for small examples: a free set and a linkage of size `k`.
    pub fn small(k: usize) -> Self {
        WallConstants {
            free_set_order: k + 1,
            linkage: k,
            max_subdivision: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationCheck {
    Verified,
    Failed(Separation),
    /// The exhaustive check did not fit the caps.
    Unchecked(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrownWall {
    pub wall: WallStructure,
    pub free_set: Vec<usize>,
    pub representatives: Vec<usize>,
    pub linkage: Linkage,
    /// Edges removed before the final wall was found.
    pub deleted_edges: Vec<(usize, usize)>,
    pub pushes: usize,
    pub truncation: TruncationCheck,
}

/// Builds an `S`-free set `F`, finds a `k`-wall, and links `F` to one vertex
/// of each row. While the linkage is too small, the separation is pushed or
/// an edge is deleted and the wall is searched for again. Finally checks that
/// the wall tangle is a truncation of the tangle of `S` in `g`.
pub fn grow_wall<T: Scalar + Send + Sync + 'static>(
    g: &Graph,
    s: &WellLinkedWitness<T>,
    k: usize,
    constants: WallConstants,
    caps: &Caps,
) -> Result<GrownWall> {
    if constants.linkage == 0 || constants.linkage > k {
        return pre(format!("linkage {} must lie in 1..={k}", constants.linkage));
    }
    let free_set = build_s_free_set_with(g, &s.s, s.alpha, constants.free_set_order, caps)?;
    if free_set.len() < constants.linkage {
        return pre(format!(
            "free set {:?} is smaller than the linkage {}",
            free_set, constants.linkage
        ));
    }
    let mut h = g.clone();
    let mut deleted_edges = Vec::new();
    let mut pushes = 0;
    loop {
        let wall = find_wall(&h, k, constants.max_subdivision, caps)?
            .ok_or_else(|| Error::Exhausted(format!("no {k}-wall with subdivisions of length <= {}", constants.max_subdivision)))?;
        let reps = wall_representatives(&wall);
        let (_, linkage) = min_vertex_cut(&h, &free_set, &reps);
        if linkage.order() >= constants.linkage {
            let linkage = Linkage {
                paths: linkage.paths.into_iter().take(constants.linkage).collect(),
            };
            let truncation = check_truncation(g, &wall, s, caps)?;
            return Ok(GrownWall {
                wall,
                free_set,
                representatives: reps,
                linkage,
                deleted_edges,
                pushes,
                truncation,
            });
        }
        let mut sep = min_separation(&h, &free_set, &reps, Side::NearX);
        loop {
            let outcome = push_or_delete_with(&h, &free_set, &reps, constants.linkage, &sep, caps)
                .map_err(|e| match e {
                    Error::Precondition(m) => Error::Exhausted(format!("working constants too small: {m}")),
                    other => other,
                })?;
            match outcome {
                PushOutcome::Paths(_) => break,
                PushOutcome::Pushed(next) => {
                    sep = next;
                    pushes += 1;
                }
                PushOutcome::Deletable(e) => {
                    h.remove_edge(e.0, e.1);
                    deleted_edges.push(e);
                    break;
                }
            }
        }
    }
}

fn check_truncation<T: Scalar + Send + Sync + 'static>(
    g: &Graph,
    wall: &WallStructure,
    s: &WellLinkedWitness<T>,
    caps: &Caps,
) -> Result<TruncationCheck> {
    let inner = TangleOracle::from_wall(wall);
    let outer = TangleOracle::from_well_linked(s);
    if inner.order > outer.order {
        return Ok(TruncationCheck::Unchecked(format!(
            "wall order {} exceeds the tangle order {}",
            inner.order, outer.order
        )));
    }
    match super::oracle::truncation_violation(&inner, &outer, g, caps) {
        Ok(None) => Ok(TruncationCheck::Verified),
        Ok(Some(sep)) => Ok(TruncationCheck::Failed(sep)),
        Err(e @ Error::CapExceeded { .. }) => Ok(TruncationCheck::Unchecked(e.to_string())),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walls_in_grids() {
        let caps = Caps::default();
        let w = find_wall(&Graph::grid(3, 6), 3, 1, &caps).unwrap().unwrap();
        assert!(w.check());
        assert_eq!(w.branch_vertices.len(), elementary_wall(3).unwrap().branch_vertices.len());
        assert_eq!(wall_representatives(&w).len(), 3);
        let w = find_wall(&Graph::grid(4, 4), 3, 2, &caps).unwrap();
        assert!(w.is_none_or(|w| w.check()));
        assert!(find_wall(&Graph::path(20), 3, 3, &caps).unwrap().is_none());
    }

    #[test]
    fn grows_in_grid() {
        let caps = Caps::default();
        let g = Graph::grid(6, 6);
        let s: Vec<usize> = (0..36).collect();
        let w = WellLinkedWitness::verified(&g, &s, 2, crate::Rational::new(2, 3), &caps).unwrap();
        let grown = grow_wall(&g, &w, 3, WallConstants::small(3), &caps).unwrap();
        assert!(grown.wall.check());
        assert_eq!(grown.truncation, TruncationCheck::Verified);
        assert_eq!(grown.linkage.order(), 3);
        assert!(grown.wall.graph.edges().all(|(u, v)| g.has_edge(u, v)));

        let tree = Graph::path(12);
        let w = WellLinkedWitness::assumed(&(0..12).collect::<Vec<_>>(), 2, crate::Rational::new(2, 3)).unwrap();
        assert!(grow_wall(&tree, &w, 3, WallConstants::small(3), &caps).is_err());
    }
}
