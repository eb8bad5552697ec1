//! `u128` vertex sets for the exhaustive routines (graphs of at most 128 vertices).

use crate::error::{cap, Result};
use crate::graph::Graph;

pub type Mask = u128;

pub const MAX_MASK_VERTICES: usize = 128;

pub fn bit(v: usize) -> Mask {
    1u128 << v
}

pub fn full(n: usize) -> Mask {
    if n == 128 {
        !0
    } else {
        (1u128 << n) - 1
    }
}

pub fn from_slice(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

pub fn to_vec(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

pub fn iter(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub fn len(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Adjacency rows as masks; errors beyond 128 vertices.
pub fn adjacency(g: &Graph) -> Result<Vec<Mask>> {
    cap("vertices for bitset routines", MAX_MASK_VERTICES, g.n())?;
    Ok((0..g.n()).map(|v| from_slice(g.neighbors(v))).collect())
}

/// Vertices reachable from `start` inside `allowed` (start included if allowed).
pub fn reach(adj: &[Mask], start: Mask, allowed: Mask) -> Mask {
    let mut seen = start & allowed;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in iter(frontier) {
            next |= adj[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components of `allowed`, ordered by lowest vertex.
pub fn components(adj: &[Mask], mut allowed: Mask) -> Vec<Mask> {
    let mut out = Vec::new();
    while allowed != 0 {
        let s = allowed & allowed.wrapping_neg();
        let c = reach(adj, s, allowed);
        out.push(c);
        allowed &= !c;
    }
    out
}

/// Open neighbourhood of a set.
pub fn neighborhood(adj: &[Mask], set: Mask) -> Mask {
    let mut n = 0;
    for v in iter(set) {
        n |= adj[v];
    }
    n & !set
}

/// Calls `f` on every subset of `0..n` of size at most `k`, in order of size.
pub fn for_each_subset_upto(n: usize, k: usize, mut f: impl FnMut(Mask) -> bool) {
    fn rec(start: usize, n: usize, left: usize, cur: Mask, f: &mut dyn FnMut(Mask) -> bool) -> bool {
        if left == 0 {
            return f(cur);
        }
        for v in start..n {
            if !rec(v + 1, n, left - 1, cur | bit(v), f) {
                return false;
            }
        }
        true
    }
    for size in 0..=k.min(n) {
        if !rec(0, n, size, 0, &mut f) {
            return;
        }
    }
}

/// Number of subsets of an `n`-set of size at most `k`, saturating.
pub fn count_subsets_upto(n: usize, k: usize) -> usize {
    let mut total: usize = 0;
    let mut c: u128 = 1;
    for i in 0..=k.min(n) {
        if i > 0 {
            c = c * (n - i + 1) as u128 / i as u128;
        }
        total = total.saturating_add(c.min(usize::MAX as u128) as usize);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_components() {
        let g = Graph::path(5);
        let adj = adjacency(&g).unwrap();
        assert_eq!(to_vec(from_slice(&[4, 1, 3])), vec![1, 3, 4]);
        let comps = components(&adj, full(5) & !bit(2));
        assert_eq!(comps, vec![from_slice(&[0, 1]), from_slice(&[3, 4])]);
        assert_eq!(neighborhood(&adj, from_slice(&[0, 1])), bit(2));
    }

    #[test]
    fn subset_counts() {
        let mut count = 0;
        for_each_subset_upto(6, 2, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1 + 6 + 15);
        assert_eq!(count_subsets_upto(6, 2), 22);
    }
}
