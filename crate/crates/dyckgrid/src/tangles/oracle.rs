//! Tangle oracles and exhaustive checks of the tangle axioms.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{pre, Result};
use crate::graph::{normalized, Graph};
use crate::mask::{self, Mask};
use crate::separation::{check_exhaustive, for_each_separation_mask, SeparationKind, Separation};
use crate::wall::{DyckWall, WallStructure};
use crate::Scalar;

use super::linked::{exceeds, WellLinkedWitness};

/// The side an oracle declares big.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BigSide {
    First,
    Second,
}

/// Where an oracle comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    WellLinked { s: Vec<usize>, q: usize, alpha: String },
    FreeSet { f: Vec<usize> },
    Wall { k: usize },
    DyckWall { t: usize },
    Custom,
}

type SideFn = dyn Fn(&dyn Fn(usize) -> bool, &dyn Fn(usize) -> bool) -> Option<BigSide> + Send + Sync;

/// An orientation of the separations of order `< order`.
#[derive(Clone)]
pub struct TangleOracle {
    pub order: usize,
    pub provenance: Provenance,
    rule: Arc<SideFn>,
}

impl fmt::Debug for TangleOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TangleOracle")
            .field("order", &self.order)
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// Vertex sets contained in `B \ A`.
fn inside_private(sets: &[Vec<usize>], in_a: &dyn Fn(usize) -> bool, in_b: &dyn Fn(usize) -> bool) -> bool {
    sets.iter().any(|set| set.iter().all(|&v| in_b(v) && !in_a(v)))
}

fn majority(first: &[Vec<usize>], second: &[Vec<usize>]) -> Arc<SideFn> {
    let first = first.to_vec();
    let second = second.to_vec();
    Arc::new(move |in_a: &dyn Fn(usize) -> bool, in_b: &dyn Fn(usize) -> bool| {
        let b_big = inside_private(&first, in_a, in_b) && inside_private(&second, in_a, in_b);
        let a_big = inside_private(&first, in_b, in_a) && inside_private(&second, in_b, in_a);
        match (a_big, b_big) {
            (true, false) => Some(BigSide::First),
            (false, true) => Some(BigSide::Second),
            _ => None,
        }
    })
}

impl TangleOracle {
    /// An oracle from an arbitrary rule; the rule sees membership tests for `A` and `B`.
    pub fn custom(
        order: usize,
        rule: impl Fn(&dyn Fn(usize) -> bool, &dyn Fn(usize) -> bool) -> Option<BigSide> + Send + Sync + 'static,
    ) -> Self {
        TangleOracle {
            order,
            provenance: Provenance::Custom,
            rule: Arc::new(rule),
        }
    }

    /// `T_S`: `B` is big when it holds more than `alpha |S|` vertices of `S`.
    /// Orients the separations of order at most `q`.
    pub fn from_well_linked<T: Scalar + Send + Sync + 'static>(w: &WellLinkedWitness<T>) -> Self {
        let s = normalized(&w.s);
        let alpha = w.alpha;
        let provenance = Provenance::WellLinked {
            s: s.clone(),
            q: w.q,
            alpha: format!("{alpha:?}"),
        };
        let rule = move |in_a: &dyn Fn(usize) -> bool, in_b: &dyn Fn(usize) -> bool| {
            let a = exceeds(s.iter().filter(|&&v| in_a(v)).count(), alpha, s.len());
            let b = exceeds(s.iter().filter(|&&v| in_b(v)).count(), alpha, s.len());
            match (a, b) {
                (true, false) => Some(BigSide::First),
                (false, true) => Some(BigSide::Second),
                _ => None,
            }
        };
        TangleOracle {
            order: w.q + 1,
            provenance,
            rule: Arc::new(rule),
        }
    }

    /// `T_F` for `|F| = 3k`: `B` is big when `|B ∩ F| > 2k`. Order `k`.
    pub fn from_free_set(f: &[usize]) -> Result<Self> {
        let f = normalized(f);
        if f.is_empty() || !f.len().is_multiple_of(3) {
            return pre(format!("|F| = {} is not a positive multiple of 3", f.len()));
        }
        let k = f.len() / 3;
        let provenance = Provenance::FreeSet { f: f.clone() };
        let rule = move |in_a: &dyn Fn(usize) -> bool, in_b: &dyn Fn(usize) -> bool| {
            let a = f.iter().filter(|&&v| in_a(v)).count() > 2 * k;
            let b = f.iter().filter(|&&v| in_b(v)).count() > 2 * k;
            match (a, b) {
                (true, false) => Some(BigSide::First),
                (false, true) => Some(BigSide::Second),
                _ => None,
            }
        };
        Ok(TangleOracle {
            order: k,
            provenance,
            rule: Arc::new(rule),
        })
    }

    /// `T_W`: the big side contains a whole row and a whole column of `W`
    /// outside the separator. Order `k`.
    pub fn from_wall(w: &WallStructure) -> Self {
        TangleOracle {
            order: w.k,
            provenance: Provenance::Wall { k: w.k },
            rule: majority(&w.rows, &w.columns),
        }
    }

    /// `T_D`: the big side contains a whole cycle and a whole column of the
    /// annulus wall. Order `t`.
    pub fn from_dyck_wall(d: &DyckWall) -> Self {
        TangleOracle {
            order: d.spec.t,
            provenance: Provenance::DyckWall { t: d.spec.t },
            rule: majority(&d.cycles, &d.columns),
        }
    }

    fn decide(&self, in_a: &dyn Fn(usize) -> bool, in_b: &dyn Fn(usize) -> bool) -> Option<BigSide> {
        (self.rule)(in_a, in_b)
    }

    fn decide_masks(&self, a: Mask, b: Mask) -> Option<BigSide> {
        self.decide(&|v| v < 128 && a >> v & 1 == 1, &|v| v < 128 && b >> v & 1 == 1)
    }

    /// The big side of `sep`. Errors when the order is too large or the rule
    /// cannot decide.
    pub fn orient(&self, sep: &Separation) -> Result<BigSide> {
        if sep.order() >= self.order {
            return pre(format!(
                "separation of order {} is outside the domain of an order-{} tangle",
                sep.order(),
                self.order
            ));
        }
        let in_a = |v: usize| sep.a.binary_search(&v).is_ok();
        let in_b = |v: usize| sep.b.binary_search(&v).is_ok();
        self.decide(&in_a, &in_b).ok_or_else(|| {
            crate::Error::Precondition(format!("neither side of {sep:?} qualifies as the big side"))
        })
    }

    /// The small side of `sep`.
    pub fn small_side<'a>(&self, sep: &'a Separation) -> Result<&'a [usize]> {
        Ok(match self.orient(sep)? {
            BigSide::First => &sep.b,
            BigSide::Second => &sep.a,
        })
    }
}

/// The first failure of the tangle axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomViolation {
    /// Neither side, or both sides, declared big.
    NotOriented(Separation),
    /// Orienting `(B, A)` does not mirror orienting `(A, B)`.
    NotAntisymmetric(Separation),
    /// Three small sides covering every vertex and edge.
    Covered([Vec<usize>; 3]),
}

/// Small sides of every separation of order `< order`, keeping only the
/// inclusion-maximal ones.
fn small_sides(oracle: &TangleOracle, adj: &[Mask], n: usize, caps: &Caps) -> Result<std::result::Result<Vec<Mask>, AxiomViolation>> {
    let mut sides: Vec<Mask> = Vec::new();
    let mut bad = None;
    for_each_separation_mask(adj, n, oracle.order, SeparationKind::All, caps, |a, b| {
        let forward = oracle.decide_masks(a, b);
        let backward = oracle.decide_masks(b, a);
        let sep = || Separation::from_masks(a, b);
        match (forward, backward) {
            (None, _) | (_, None) => {
                bad = Some(AxiomViolation::NotOriented(sep()));
                return ControlFlow::Break(());
            }
            (Some(x), Some(y)) if x == y => {
                bad = Some(AxiomViolation::NotAntisymmetric(sep()));
                return ControlFlow::Break(());
            }
            (Some(BigSide::First), _) => sides.push(b),
            (Some(BigSide::Second), _) => sides.push(a),
        }
        ControlFlow::Continue(())
    })?;
    if let Some(v) = bad {
        return Ok(Err(v));
    }
    sides.sort_unstable_by_key(|&s| std::cmp::Reverse(mask::len(s)));
    sides.dedup();
    let mut maximal: Vec<Mask> = Vec::new();
    for s in sides {
        if !maximal.iter().any(|&m| s & !m == 0) {
            maximal.push(s);
        }
    }
    Ok(Ok(maximal))
}

/// Exhaustive check of totality, antisymmetry and the three-cover axiom.
pub fn tangle_axiom_violation(oracle: &TangleOracle, g: &Graph, caps: &Caps) -> Result<Option<AxiomViolation>> {
    let adj = check_exhaustive(g, oracle.order, caps)?;
    let n = g.n();
    let sides = match small_sides(oracle, &adj, n, caps)? {
        Ok(s) => s,
        Err(v) => return Ok(Some(v)),
    };
    let all = mask::full(n);
    let edges: Vec<Mask> = g.edges().map(|(u, v)| mask::bit(u) | mask::bit(v)).collect();
    for i in 0..sides.len() {
        for j in i..sides.len() {
            let (a1, a2) = (sides[i], sides[j]);
            let mut need = all & !(a1 | a2);
            for &e in &edges {
                if e & !a1 != 0 && e & !a2 != 0 {
                    need |= e;
                }
            }
            if let Some(&a3) = sides.iter().find(|&&a3| need & !a3 == 0) {
                return Ok(Some(AxiomViolation::Covered([
                    mask::to_vec(a1),
                    mask::to_vec(a2),
                    mask::to_vec(a3),
                ])));
            }
        }
    }
    Ok(None)
}

pub fn check_tangle_axioms(oracle: &TangleOracle, g: &Graph) -> Result<bool> {
    Ok(tangle_axiom_violation(oracle, g, &Caps::default())?.is_none())
}

/// A separation oriented by `inner` but not oriented the same way by `outer`.
pub fn truncation_violation(
    inner: &TangleOracle,
    outer: &TangleOracle,
    g: &Graph,
    caps: &Caps,
) -> Result<Option<Separation>> {
    if inner.order > outer.order {
        return pre(format!(
            "inner order {} exceeds outer order {}",
            inner.order, outer.order
        ));
    }
    let adj = check_exhaustive(g, inner.order, caps)?;
    let mut witness = None;
    for_each_separation_mask(&adj, g.n(), inner.order, SeparationKind::All, caps, |a, b| {
        let x = inner.decide_masks(a, b);
        if x.is_some() && x != outer.decide_masks(a, b) {
            witness = Some(Separation::from_masks(a, b));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(witness)
}

/// Every separation `inner` orients is oriented the same way by `outer`.
pub fn is_truncation(inner: &TangleOracle, outer: &TangleOracle, g: &Graph) -> Result<bool> {
    Ok(truncation_violation(inner, outer, g, &Caps::default())?.is_none())
}
