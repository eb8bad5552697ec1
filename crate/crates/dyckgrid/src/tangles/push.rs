//! Pushing a separation towards `Y`, or finding an edge whose deletion keeps
//! `X` strongly linked.

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{pre, Error, Result};
use crate::flow::min_vertex_cut;
use crate::graph::{membership, normalized, Graph, Linkage};
use crate::separation::{is_separation, Separation};

use super::linked::strong_linkedness_violation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PushOutcome {
    /// `k` vertex-disjoint `X`–`Y` paths.
    Paths(Linkage),
    /// A separation `(A', B')` of order `< k` with `X ⊆ A'`, `|Y ∩ B'| >= k`,
    /// `A ⊆ A'` and `B'` a proper subset of `B`.
    Pushed(Separation),
    /// An edge of `G[B]` whose deletion leaves `X` strongly linked.
    Deletable((usize, usize)),
}

fn count_in(set: &[usize], of: &[bool]) -> usize {
    set.iter().filter(|&&v| of[v]).count()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

pub fn push_or_delete(g: &Graph, x: &[usize], y: &[usize], k: usize, sep: &Separation) -> Result<PushOutcome> {
    push_or_delete_with(g, x, y, k, sep, &Caps::default())
}

/// One round of the push-or-delete step for strongly linked `X` and `Y` with
/// `|X| >= k` and `|Y| >= 3k`, given a separation of order `< k` with `X ⊆ A`
/// and `|Y ∩ B| >= k`.
///
/// Edges of `G[B]` are tried in increasing order. For an edge `xy` whose
/// deletion breaks the strong linkedness of `X`, the witness `(L, R)` of
/// `G - xy` (oriented so that `x ∈ L`) yields the candidates
/// `(A ∪ L, (B ∩ R) + x)` and `(A ∪ R, (B ∩ L) + y)`.
pub fn push_or_delete_with(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    k: usize,
    sep: &Separation,
    caps: &Caps,
) -> Result<PushOutcome> {
    let x = normalized(x);
    let y = normalized(y);
    if x.len() < k || y.len() < 3 * k {
        return pre(format!("need |X| >= {k} and |Y| >= {}, got {} and {}", 3 * k, x.len(), y.len()));
    }
    if !is_separation(g, &sep.a, &sep.b) || sep.order() >= k {
        return pre(format!("({:?}, {:?}) is not a separation of order < {k}", sep.a, sep.b));
    }
    let in_a = membership(g.n(), &sep.a);
    let in_b = membership(g.n(), &sep.b);
    let in_y = membership(g.n(), &y);
    if x.iter().any(|&v| !in_a[v]) || count_in(&y, &in_b) < k {
        return pre("X must lie in A and B must hold at least k vertices of Y");
    }
    for (name, set) in [("X", &x), ("Y", &y)] {
        if strong_linkedness_violation(g, set, caps)?.is_some() {
            return pre(format!("{name} is not strongly linked"));
        }
    }
    let (_, linkage) = min_vertex_cut(g, &x, &y);
    if linkage.order() >= k {
        return Ok(PushOutcome::Paths(Linkage {
            paths: linkage.paths.into_iter().take(k).collect(),
        }));
    }
    let edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| in_b[u] && in_b[v]).collect();
    for (u, v) in edges {
        let mut h = g.clone();
        h.remove_edge(u, v);
        let Some(w) = strong_linkedness_violation(&h, &x, caps)? else {
            return Ok(PushOutcome::Deletable((u, v)));
        };
        let (l, r) = (w.separation.a, w.separation.b);
        let (l, r, ex, ey) = if l.binary_search(&u).is_ok() && r.binary_search(&u).is_err() {
            (l, r, u, v)
        } else {
            (l, r, v, u)
        };
        for (left, right, end) in [(&l, &r, ex), (&r, &l, ey)] {
            let a2 = union(&sep.a, left);
            let b2 = union(&intersect(&sep.b, right), &[end]);
            let cand = Separation::new(&a2, &b2);
            if is_separation(g, &cand.a, &cand.b)
                && cand.order() < k
                && cand.b.len() < sep.b.len()
                && cand.b.iter().all(|&v| in_b[v])
                && count_in(&cand.b, &in_y) >= k
            {
                return Ok(PushOutcome::Pushed(cand));
            }
        }
    }
    Err(Error::Exhausted(
        "no edge of G[B] can be deleted and no push applies; the preconditions do not hold".into(),
    ))
}
