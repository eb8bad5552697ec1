//! Balanced separators, well-linked, free and strongly linked sets.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{cap, pre, Error, Result};
use crate::flow::{min_separation, Side};
use crate::graph::{membership, normalized, Graph};
use crate::mask::{self, Mask};
use crate::separation::{check_exhaustive, for_each_separation_mask, SeparationKind, Separation};
use crate::Scalar;

/// `count > alpha * total`, evaluated exactly in `T`.
pub(crate) fn exceeds<T: Scalar>(count: usize, alpha: T, total: usize) -> bool {
    let c = T::from_usize(count).expect("count fits the scalar type");
    let t = T::from_usize(total).expect("count fits the scalar type");
    c > alpha * t
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    let two_thirds = T::from_usize(2).unwrap() / T::from_usize(3).unwrap();
    if alpha < two_thirds || alpha >= T::one() {
        return pre(format!("alpha must lie in [2/3, 1), got {alpha:?}"));
    }
    Ok(())
}

/// Every component of `G - X` meets `S` in at most `alpha |S|` vertices.
pub fn is_balanced_separator<T: Scalar>(g: &Graph, s: &[usize], x: &[usize], alpha: T) -> bool {
    let s = normalized(s);
    let removed = membership(g.n(), x);
    let allowed: Vec<bool> = removed.iter().map(|r| !r).collect();
    let in_s = membership(g.n(), &s);
    g.components_within(&allowed)
        .iter()
        .all(|c| !exceeds(c.iter().filter(|&&v| in_s[v]).count(), alpha, s.len()))
}

/// An `alpha`-balanced separator for `S` of size at most `q`, smallest first.
pub fn find_balanced_separator<T: Scalar>(
    g: &Graph,
    s: &[usize],
    q: usize,
    alpha: T,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    check_alpha(alpha)?;
    let adj = check_exhaustive(g, q + 1, caps)?;
    let s_mask = mask::from_slice(&normalized(s));
    let total = mask::len(s_mask);
    let all = mask::full(g.n());
    let mut found = None;
    mask::for_each_subset_upto(g.n(), q, |x| {
        let balanced = mask::components(&adj, all & !x)
            .iter()
            .all(|&c| !exceeds(mask::len(c & s_mask), alpha, total));
        if balanced {
            found = Some(mask::to_vec(x));
        }
        !balanced
    });
    Ok(found)
}

/// No `alpha`-balanced separator of size at most `q` exists. Exhaustive.
pub fn is_well_linked<T: Scalar>(g: &Graph, s: &[usize], q: usize, alpha: T) -> Result<bool> {
    is_well_linked_with(g, s, q, alpha, &Caps::default())
}

pub fn is_well_linked_with<T: Scalar>(g: &Graph, s: &[usize], q: usize, alpha: T, caps: &Caps) -> Result<bool> {
    Ok(find_balanced_separator(g, s, q, alpha, caps)?.is_none())
}

/// The largest `q` for which `S` is `(q, alpha)`-well-linked, or `None` if
/// already the empty set is balanced.
pub fn well_linked_order<T: Scalar>(g: &Graph, s: &[usize], alpha: T, caps: &Caps) -> Result<Option<usize>> {
    let mut best = None;
    for q in 0..=g.n() {
        if find_balanced_separator(g, s, q, alpha, caps)?.is_some() {
            return Ok(best);
        }
        best = Some(q);
    }
    Ok(best)
}

/// A set `S` claimed to be `(q, alpha)`-well-linked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellLinkedWitness<T> {
    pub s: Vec<usize>,
    pub q: usize,
    pub alpha: T,
    /// Whether the claim was verified exhaustively.
    pub checked: bool,
}

impl<T: Scalar> WellLinkedWitness<T> {
    /// Verifies the claim; errors if `S` has a small balanced separator.
    pub fn verified(g: &Graph, s: &[usize], q: usize, alpha: T, caps: &Caps) -> Result<Self> {
        if let Some(x) = find_balanced_separator(g, s, q, alpha, caps)? {
            return pre(format!("{x:?} is an alpha-balanced separator of size at most {q}"));
        }
        Ok(WellLinkedWitness {
            s: normalized(s),
            q,
            alpha,
            checked: true,
        })
    }

    /// Records the claim without checking it.
    pub fn assumed(s: &[usize], q: usize, alpha: T) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(WellLinkedWitness {
            s: normalized(s),
            q,
            alpha,
            checked: false,
        })
    }
}

/// A separation of order `< |F|` with `F` inside a side that meets `S` in at
/// most `alpha |S|` vertices.
pub fn free_set_violation<T: Scalar>(
    g: &Graph,
    s: &[usize],
    f: &[usize],
    alpha: T,
    caps: &Caps,
) -> Result<Option<Separation>> {
    let f = normalized(f);
    let adj = check_exhaustive(g, f.len(), caps)?;
    let s_mask = mask::from_slice(&normalized(s));
    let f_mask = mask::from_slice(&f);
    let total = mask::len(s_mask);
    let mut witness = None;
    for_each_separation_mask(&adj, g.n(), f.len(), SeparationKind::All, caps, |a, b| {
        for (x, y) in [(a, b), (b, a)] {
            if f_mask & !x == 0 && !exceeds(mask::len(x & s_mask), alpha, total) {
                witness = Some(Separation::from_masks(x, y));
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(witness)
}

/// Exhaustive check that `F` is `S`-free.
pub fn is_s_free<T: Scalar>(g: &Graph, s: &[usize], f: &[usize], alpha: T) -> Result<bool> {
    Ok(free_set_violation(g, s, f, alpha, &Caps::default())?.is_none())
}

/// An `S`-free set of size `k - 1` (a single vertex when `k = 1`).
///
/// Starts from the lowest vertex of a component holding more than `alpha |S|`
/// vertices of `S`. Each round takes a separation `(A, B)` of order `|F|` with
/// `F` in `A`, more than `alpha |S|` vertices of `S` in `B` and `|B|` minimum,
/// and adds the lowest vertex of `B \ A`. The new set is checked to be free
/// before the next round.
pub fn build_s_free_set<T: Scalar>(g: &Graph, s: &[usize], alpha: T, k: usize) -> Result<Vec<usize>> {
    build_s_free_set_with(g, s, alpha, k, &Caps::default())
}

pub fn build_s_free_set_with<T: Scalar>(
    g: &Graph,
    s: &[usize],
    alpha: T,
    k: usize,
    caps: &Caps,
) -> Result<Vec<usize>> {
    check_alpha(alpha)?;
    if k == 0 {
        return pre("k must be positive");
    }
    let s = normalized(s);
    if s.is_empty() {
        return pre("S is empty");
    }
    let target = (k - 1).max(1);
    let adj = check_exhaustive(g, target, caps)?;
    let s_mask = mask::from_slice(&s);
    let total = s.len();
    let comps = mask::components(&adj, mask::full(g.n()));
    let start = comps
        .iter()
        .find(|&&c| exceeds(mask::len(c & s_mask), alpha, total))
        .ok_or_else(|| Error::Precondition("no component holds more than alpha |S| vertices of S; S is not well-linked".into()))?;
    let mut f: Mask = start & start.wrapping_neg();
    while mask::len(f) < target {
        let order = mask::len(f);
        let mut best: Option<(usize, Mask, Mask)> = None;
        for_each_separation_mask(&adj, g.n(), order + 1, SeparationKind::All, caps, |a, b| {
            for (x, y) in [(a, b), (b, a)] {
                if f & !x == 0 && exceeds(mask::len(y & s_mask), alpha, total) {
                    let key = (mask::len(y), y);
                    if best.is_none_or(|(l, by, _)| key < (l, by)) {
                        best = Some((key.0, y, x));
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        let (_, b, a) = best.ok_or_else(|| Error::Internal("(F, V) should qualify".into()))?;
        let rest = b & !a;
        if rest == 0 {
            return Err(Error::Precondition(
                "minimal separation has empty B \\ A; S is not well-linked enough".into(),
            ));
        }
        f |= rest & rest.wrapping_neg();
        if let Some(sep) = free_set_violation(g, &s, &mask::to_vec(f), alpha, caps)? {
            return Err(Error::Precondition(format!(
                "F = {:?} is not S-free (witness {:?}); S is not well-linked",
                mask::to_vec(f),
                sep
            )));
        }
    }
    Ok(mask::to_vec(f))
}

/// A partition `{S_1, S_2}` of `S` with a separation of order below
/// `min(|S_1|, |S_2|)` separating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkednessWitness {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub separation: Separation,
}

/// Searches all bipartitions of `S` for a witness against strong linkedness.
pub fn strong_linkedness_violation(g: &Graph, s: &[usize], caps: &Caps) -> Result<Option<LinkednessWitness>> {
    let s = normalized(s);
    cap("set size for strong linkedness", caps.linked_set, s.len())?;
    if s.len() < 2 {
        return Ok(None);
    }
    let last = s.len() - 1;
    // The last element always lies in S_2, so each unordered partition appears once.
    for bits in 1u64..(1u64 << last) {
        let (s1, s2): (Vec<usize>, Vec<usize>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &v) in s.iter().enumerate() {
                if i < last && bits >> i & 1 == 1 {
                    a.push(v);
                } else {
                    b.push(v);
                }
            }
            (a, b)
        };
        let need = s1.len().min(s2.len());
        let sep = min_separation(g, &s1, &s2, Side::NearX);
        if sep.order() < need {
            return Ok(Some(LinkednessWitness {
                s1,
                s2,
                separation: sep,
            }));
        }
    }
    Ok(None)
}

pub fn is_strongly_linked(g: &Graph, s: &[usize]) -> Result<bool> {
    is_strongly_linked_with(g, s, &Caps::default())
}

pub fn is_strongly_linked_with(g: &Graph, s: &[usize], caps: &Caps) -> Result<bool> {
    Ok(strong_linkedness_violation(g, s, caps)?.is_none())
}

/// For a strongly linked `F` of size `3k`, checks `tw(G) >= k` with exact treewidth.
pub fn treewidth_bound_check(g: &Graph, f: &[usize], caps: &Caps) -> Result<bool> {
    let f = normalized(f);
    if f.is_empty() || !f.len().is_multiple_of(3) {
        return pre(format!("|F| = {} is not a positive multiple of 3", f.len()));
    }
    if let Some(w) = strong_linkedness_violation(g, &f, caps)? {
        return pre(format!("F is not strongly linked: {:?} | {:?}", w.s1, w.s2));
    }
    let (tw, _) = crate::treewidth::exact_treewidth_with(g, caps)?;
    Ok(tw >= f.len() / 3)
}
