//! Separations, their enumeration on small graphs, and quasi-4-connectivity.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{cap, Error, Result};
use crate::graph::{normalized, Graph};
use crate::mask::{self, Mask};

/// A pair `(A, B)` of vertex sets, each kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Separation {
    pub fn new(a: &[usize], b: &[usize]) -> Self {
        Separation {
            a: normalized(a),
            b: normalized(b),
        }
    }

    pub fn order(&self) -> usize {
        let mut i = 0;
        let mut j = 0;
        let mut c = 0;
        while i < self.a.len() && j < self.b.len() {
            match self.a[i].cmp(&self.b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn separator(&self) -> Vec<usize> {
        self.a.iter().copied().filter(|v| self.b.binary_search(v).is_ok()).collect()
    }

    pub fn swapped(&self) -> Self {
        Separation {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Canonical form: the lexicographically smaller side first.
    pub fn canonical(self) -> Self {
        if self.a <= self.b {
            self
        } else {
            self.swapped()
        }
    }

    pub(crate) fn from_masks(a: Mask, b: Mask) -> Self {
        Separation {
            a: mask::to_vec(a),
            b: mask::to_vec(b),
        }
    }
}

/// Whether `(A, B)` is a separation of `g`.
pub fn is_separation(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let n = g.n();
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in a {
        if v >= n {
            return false;
        }
        in_a[v] = true;
    }
    for &v in b {
        if v >= n {
            return false;
        }
        in_b[v] = true;
    }
    if (0..n).any(|v| !in_a[v] && !in_b[v]) {
        return false;
    }
    !g.edges().any(|(u, v)| {
        let a_only = |x: usize| in_a[x] && !in_b[x];
        let b_only = |x: usize| in_b[x] && !in_a[x];
        (a_only(u) && b_only(v)) || (a_only(v) && b_only(u))
    })
}

/// Which separations an enumeration emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationKind {
    /// Both `A \ B` and `B \ A` nonempty.
    Proper,
    /// Also the separations with one side contained in the other, such as `(Z, V)`.
    All,
}

/// Visits each separation of order `< max_order` once up to swapping the sides.
///
/// Separations are produced from a separator `Z` and a split of the components
/// of `G - Z`. The callback receives the two sides as masks.
pub(crate) fn for_each_separation_mask(
    adj: &[Mask],
    n: usize,
    max_order: usize,
    kind: SeparationKind,
    caps: &Caps,
    mut f: impl FnMut(Mask, Mask) -> ControlFlow<()>,
) -> Result<()> {
    let all = mask::full(n);
    let mut visited: usize = 0;
    let mut err = None;
    let limit = caps.exhaustive_candidates;
    let k = max_order.saturating_sub(1);
    mask::for_each_subset_upto(n, k, |z| {
        let comps = mask::components(adj, all & !z);
        let r = comps.len();
        if r == 0 {
            if kind == SeparationKind::All {
                visited += 1;
                return f(all, all).is_continue();
            }
            return true;
        }
        if r > 40 {
            err = Some(Error::CapExceeded {
                what: "components after removing a separator",
                limit: 40,
                got: r,
            });
            return false;
        }
        let splits: u64 = 1u64 << (r - 1);
        for t in 0..splits {
            visited += 1;
            if visited > limit {
                err = Some(Error::CapExceeded {
                    what: "separations visited",
                    limit,
                    got: visited,
                });
                return false;
            }
            let mut x = comps[0];
            let mut y = 0;
            for (i, &c) in comps.iter().enumerate().skip(1) {
                if t >> (i - 1) & 1 == 1 {
                    x |= c;
                } else {
                    y |= c;
                }
            }
            let flow = if y == 0 {
                if kind == SeparationKind::All {
                    f(z, all)
                } else {
                    ControlFlow::Continue(())
                }
            } else {
                f(z | x, z | y)
            };
            if flow.is_break() {
                return false;
            }
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub(crate) fn check_exhaustive(g: &Graph, max_order: usize, caps: &Caps) -> Result<Vec<Mask>> {
    cap("vertices for separation enumeration", caps.exhaustive_vertices, g.n())?;
    let adj = mask::adjacency(g)?;
    let candidates = mask::count_subsets_upto(g.n(), max_order.saturating_sub(1));
    cap("separator candidates", caps.exhaustive_candidates, candidates)?;
    Ok(adj)
}

/// All proper separations of order `< max_order`, each once, in canonical form.
pub fn enumerate_separations(g: &Graph, max_order: usize) -> Result<Vec<Separation>> {
    enumerate_separations_with(g, max_order, SeparationKind::Proper, &Caps::default())
}

pub fn enumerate_separations_with(
    g: &Graph,
    max_order: usize,
    kind: SeparationKind,
    caps: &Caps,
) -> Result<Vec<Separation>> {
    let adj = check_exhaustive(g, max_order, caps)?;
    let mut out = Vec::new();
    for_each_separation_mask(&adj, g.n(), max_order, kind, caps, |a, b| {
        out.push(Separation::from_masks(a, b).canonical());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Every separation of order at most three has exactly one side with at most
/// one private vertex.
pub fn is_quasi_4_connected(g: &Graph) -> Result<bool> {
    is_quasi_4_connected_with(g, &Caps::default())
}

pub fn is_quasi_4_connected_with(g: &Graph, caps: &Caps) -> Result<bool> {
    let adj = check_exhaustive(g, 4, caps)?;
    let mut ok = true;
    for_each_separation_mask(&adj, g.n(), 4, SeparationKind::All, caps, |a, b| {
        let small_a = mask::len(a & !b) <= 1;
        let small_b = mask::len(b & !a) <= 1;
        if small_a == small_b {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(ok)
}
