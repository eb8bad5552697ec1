//! Exact treewidth for small graphs.
//!
//! For a connected set `S` let `N(S)` be its neighbourhood. Then `tw(G) <= k`
//! for connected `G` exactly when `V(G)` is *feasible*, where `S` is feasible if
//! `|N(S)| <= k` and either `|S| = 1` or some `v` in `S` leaves only feasible
//! components in `S - v`. The vertex `v` is eliminated last within `S`, so a
//! successful search yields an elimination ordering of width at most `k`.

use std::collections::HashMap;

use crate::config::Caps;
use crate::error::{cap, Result};
use crate::graph::Graph;
use crate::mask::{self, Mask};
use crate::treedec::TreeDecomposition;

/// Treewidth with an optimal decomposition. Errors above the configured vertex cap.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_with(g, &Caps::default())
}

pub fn exact_treewidth_with(g: &Graph, caps: &Caps) -> Result<(usize, TreeDecomposition)> {
    cap("vertices for exact treewidth", caps.treewidth_vertices, g.n())?;
    let adj = mask::adjacency(g)?;
    let comps = mask::components(&adj, mask::full(g.n()));
    let mut width = 0;
    let mut order = Vec::with_capacity(g.n());
    for c in comps {
        let (w, o) = component_treewidth(&adj, c);
        width = width.max(w);
        order.extend(o);
    }
    let td = TreeDecomposition::from_elimination(g, &order);
    debug_assert!(td.is_valid(g));
    debug_assert!(g.n() == 0 || td.width() as usize == width);
    Ok((width, td))
}

/// A decomposition of width at most `k`, or `None` when `tw(G) > k`.
pub fn treewidth_at_most(g: &Graph, k: usize, caps: &Caps) -> Result<Option<TreeDecomposition>> {
    cap("vertices for exact treewidth", caps.treewidth_vertices, g.n())?;
    let adj = mask::adjacency(g)?;
    let mut order = Vec::with_capacity(g.n());
    for c in mask::components(&adj, mask::full(g.n())) {
        let mut search = Search::new(&adj, k);
        if !search.feasible(c) {
            return Ok(None);
        }
        search.order(c, &mut order);
    }
    Ok(Some(TreeDecomposition::from_elimination(g, &order)))
}

fn component_treewidth(adj: &[Mask], comp: Mask) -> (usize, Vec<usize>) {
    if mask::len(comp) == 1 {
        return (0, mask::to_vec(comp));
    }
    let (upper, upper_order) = min_fill(adj, comp);
    let mut k = contraction_lower_bound(adj, comp);
    while k < upper {
        let mut search = Search::new(adj, k);
        if search.feasible(comp) {
            let mut order = Vec::new();
            search.order(comp, &mut order);
            return (k, order);
        }
        k += 1;
    }
    (upper, upper_order)
}

struct Search<'a> {
    adj: &'a [Mask],
    k: usize,
    memo: HashMap<Mask, Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Mask], k: usize) -> Self {
        Search {
            adj,
            k,
            memo: HashMap::new(),
        }
    }

    /// Whether `s` is feasible; remembers the last vertex that works.
    fn feasible(&mut self, s: Mask) -> bool {
        if let Some(r) = self.memo.get(&s) {
            return r.is_some();
        }
        let result = self.decide(s);
        self.memo.insert(s, result);
        result.is_some()
    }

    fn decide(&mut self, s: Mask) -> Option<usize> {
        if mask::len(mask::neighborhood(self.adj, s)) > self.k {
            return None;
        }
        if mask::len(s) == 1 {
            return Some(s.trailing_zeros() as usize);
        }
        'outer: for v in mask::iter(s) {
            let comps = mask::components(self.adj, s & !mask::bit(v));
            // Cheap pass first: every component's boundary must be small.
            for &c in &comps {
                if mask::len(mask::neighborhood(self.adj, c)) > self.k {
                    continue 'outer;
                }
            }
            for c in comps {
                if !self.feasible(c) {
                    continue 'outer;
                }
            }
            return Some(v);
        }
        None
    }

    fn order(&mut self, s: Mask, out: &mut Vec<usize>) {
        let v = self.memo[&s].expect("feasible set");
        for c in mask::components(self.adj, s & !mask::bit(v)) {
            self.order(c, out);
        }
        out.push(v);
    }
}

/// Minor-min-width: contract a minimum-degree vertex into its neighbour of least degree.
fn contraction_lower_bound(adj: &[Mask], comp: Mask) -> usize {
    let mut adj: Vec<Mask> = adj.iter().map(|&m| m & comp).collect();
    let mut alive = comp;
    let mut lb = 0;
    while mask::len(alive) > 1 {
        let v = mask::iter(alive).min_by_key(|&v| mask::len(adj[v])).unwrap();
        lb = lb.max(mask::len(adj[v]));
        let Some(u) = mask::iter(adj[v]).min_by_key(|&u| mask::len(adj[u] & adj[v])) else {
            alive &= !mask::bit(v);
            continue;
        };
        let merged = (adj[u] | adj[v]) & !mask::bit(u) & !mask::bit(v);
        for w in mask::iter(adj[v]) {
            adj[w] &= !mask::bit(v);
        }
        for w in mask::iter(merged) {
            adj[w] |= mask::bit(u);
        }
        adj[u] = merged;
        adj[v] = 0;
        alive &= !mask::bit(v);
    }
    lb
}

/// Greedy min-fill elimination; returns its width and ordering.
fn min_fill(adj: &[Mask], comp: Mask) -> (usize, Vec<usize>) {
    let mut adj: Vec<Mask> = adj.iter().map(|&m| m & comp).collect();
    let mut alive = comp;
    let mut width = 0;
    let mut order = Vec::new();
    while alive != 0 {
        let fill = |v: usize, adj: &[Mask]| -> usize {
            let nb = adj[v];
            mask::iter(nb).map(|u| mask::len(nb & !adj[u] & !mask::bit(u))).sum::<usize>() / 2
        };
        let v = mask::iter(alive).min_by_key(|&v| (fill(v, &adj), mask::len(adj[v]))).unwrap();
        let nb = adj[v];
        width = width.max(mask::len(nb));
        for u in mask::iter(nb) {
            adj[u] = (adj[u] | nb) & !mask::bit(u) & !mask::bit(v);
        }
        adj[v] = 0;
        alive &= !mask::bit(v);
        order.push(v);
    }
    (width, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(exact_treewidth(&Graph::path(6)).unwrap().0, 1);
        assert_eq!(exact_treewidth(&Graph::cycle(6)).unwrap().0, 2);
        assert_eq!(exact_treewidth(&Graph::complete(5)).unwrap().0, 4);
        assert_eq!(exact_treewidth(&Graph::grid(3, 3)).unwrap().0, 3);
        assert_eq!(exact_treewidth(&Graph::grid(4, 4)).unwrap().0, 4);
        assert_eq!(exact_treewidth(&Graph::complete_bipartite(3, 3)).unwrap().0, 3);
        assert_eq!(exact_treewidth(&Graph::new(3)).unwrap().0, 0);
    }

    #[test]
    fn decomposition_matches_width() {
        for g in [Graph::grid(3, 4), Graph::complete(4).disjoint_union(&Graph::cycle(5))] {
            let (w, td) = exact_treewidth(&g).unwrap();
            assert!(td.is_valid(&g));
            assert_eq!(td.width(), w as isize);
        }
    }

    #[test]
    fn decision_version() {
        let caps = Caps::default();
        let g = Graph::grid(3, 5);
        assert!(treewidth_at_most(&g, 2, &caps).unwrap().is_none());
        let td = treewidth_at_most(&g, 3, &caps).unwrap().unwrap();
        assert!(td.is_valid(&g) && td.width() <= 3);
    }

    #[test]
    fn cap() {
        assert!(exact_treewidth(&Graph::path(21)).is_err());
        let caps = Caps {
            treewidth_vertices: 40,
            ..Caps::default()
        };
        assert_eq!(exact_treewidth_with(&Graph::grid(6, 6), &caps).unwrap().0, 6);
    }
}
