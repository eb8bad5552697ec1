//! Exhaustive minor search for small patterns and hosts.

use crate::config::Caps;
use crate::error::{cap, Result};
use crate::graph::Graph;
use crate::mask::{self, Mask};
use crate::minors::MinorModel;
use crate::planarity::is_planar;

/// A model of `h` in `g`, or `None` when no model exists.
///
/// Branch sets are assigned one pattern vertex at a time, highest degree first
/// and then by adjacency to the assigned ones. The total size of all branch sets
/// is deepened one vertex at a time, so the first model found uses as few host
/// vertices as possible.
pub fn find_minor_bruteforce(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    find_minor_bruteforce_with(g, h, &Caps::default())
}

pub fn find_minor_bruteforce_with(g: &Graph, h: &Graph, caps: &Caps) -> Result<Option<MinorModel>> {
    cap("pattern vertices for minor search", caps.minor_pattern, h.n())?;
    cap("host vertices for minor search", caps.minor_host, g.n())?;
    if h.n() == 0 {
        return Ok(Some(MinorModel::new(h.clone(), g.clone(), Vec::new())));
    }
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(None);
    }
    if h.n() > 4 && is_planar(g) && !is_planar(h) {
        return Ok(None);
    }
    let adj = mask::adjacency(g)?;
    let order = pattern_order(h);
    let mut pos = vec![0; h.n()];
    for (i, &p) in order.iter().enumerate() {
        pos[p] = i;
    }
    let searcher = Searcher {
        adj: &adj,
        h,
        order: &order,
        pos: &pos,
        all: mask::full(g.n()),
    };
    for total in h.n()..=g.n() {
        let mut sets = vec![0 as Mask; h.n()];
        if searcher.place(0, 0, total, &mut sets) {
            let branch_sets = sets.iter().map(|&s| mask::to_vec(s)).collect();
            let model = MinorModel::new(h.clone(), g.clone(), branch_sets);
            debug_assert!(model.is_valid());
            return Ok(Some(model));
        }
    }
    Ok(None)
}

/// Highest degree first, then the vertex with most already-ordered neighbours.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, h.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Searcher<'a> {
    adj: &'a [Mask],
    h: &'a Graph,
    order: &'a [usize],
    pos: &'a [usize],
    all: Mask,
}

impl Searcher<'_> {
    fn place(&self, i: usize, used: Mask, budget: usize, sets: &mut [Mask]) -> bool {
        let remaining = self.order.len() - i;
        if remaining == 0 {
            return budget == 0;
        }
        if budget < remaining {
            return false;
        }
        let p = self.order[i];
        let free = self.all & !used;
        let placed_nbrs: Vec<usize> = self.h.neighbors(p).iter().copied().filter(|&q| self.pos[q] < i).collect();
        let unplaced = self.h.degree(p) - placed_nbrs.len();
        let max_size = budget - (remaining - 1);
        let exact = if remaining == 1 { Some(budget) } else { None };
        let seeds: Vec<usize> = match placed_nbrs.first() {
            Some(&q) => mask::to_vec(mask::neighborhood(self.adj, sets[q]) & free),
            None => mask::to_vec(free),
        };
        let mut excluded: Mask = 0;
        for s in seeds {
            let allowed = free & !excluded;
            let mut found = false;
            self.connected_sets(mask::bit(s), ext_of(self.adj, mask::bit(s), allowed), 0, allowed, max_size, &mut |x| {
                if exact.is_some_and(|e| mask::len(x) != e) {
                    return false;
                }
                let nb = mask::neighborhood(self.adj, x);
                if mask::len(nb & free & !x) < unplaced {
                    return false;
                }
                if placed_nbrs.iter().any(|&q| nb & sets[q] == 0) {
                    return false;
                }
                sets[p] = x;
                if self.place(i + 1, used | x, budget - mask::len(x), sets) {
                    found = true;
                    return true;
                }
                sets[p] = 0;
                false
            });
            if found {
                return true;
            }
            excluded |= mask::bit(s);
        }
        false
    }

    /// Enumerates each connected set that contains `x`, lies in `allowed`, avoids
    /// `excl` and has at most `limit` vertices. Stops when `f` returns true.
    fn connected_sets(
        &self,
        x: Mask,
        ext: Mask,
        excl: Mask,
        allowed: Mask,
        limit: usize,
        f: &mut dyn FnMut(Mask) -> bool,
    ) -> bool {
        if f(x) {
            return true;
        }
        if mask::len(x) == limit {
            return false;
        }
        let mut ext = ext;
        let mut excl = excl;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= !mask::bit(w);
            let grown = x | mask::bit(w);
            let new_ext = ext | (self.adj[w] & allowed & !grown & !excl);
            if self.connected_sets(grown, new_ext, excl, allowed, limit, f) {
                return true;
            }
            excl |= mask::bit(w);
        }
        false
    }
}

fn ext_of(adj: &[Mask], x: Mask, allowed: Mask) -> Mask {
    mask::neighborhood(adj, x) & allowed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = find_minor_bruteforce(&Graph::grid(3, 3), &Graph::complete(4)).unwrap().unwrap();
        assert!(m.is_valid());
        assert!(find_minor_bruteforce(&Graph::grid(4, 4), &Graph::complete(5)).unwrap().is_none());
        assert!(find_minor_bruteforce(&Graph::cycle(3), &Graph::cycle(4)).unwrap().is_none());
        let k33 = find_minor_bruteforce(&Graph::complete(6), &Graph::complete_bipartite(3, 3)).unwrap();
        assert!(k33.unwrap().is_valid());
    }

    #[test]
    fn smallest_model_first() {
        let mut c6 = Graph::cycle(6);
        c6.add_edge(0, 3);
        let m = find_minor_bruteforce(&c6, &Graph::cycle(3)).unwrap().unwrap();
        assert_eq!(m.size(), 4);
        let m = find_minor_bruteforce(&Graph::cycle(7), &Graph::cycle(3)).unwrap().unwrap();
        assert_eq!(m.size(), 7);
    }

    #[test]
    fn caps_apply() {
        assert!(find_minor_bruteforce(&Graph::path(19), &Graph::path(2)).is_err());
        assert!(find_minor_bruteforce(&Graph::path(10), &Graph::path(9)).is_err());
    }
}
