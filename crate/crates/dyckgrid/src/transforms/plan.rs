//! Step plans between mixed surface grids and Dyck-grids.

use crate::error::{pre, Error, Result};
use crate::grids::{mixed_surface_grid, Block, DyckGridSpec, MixedSurfaceGridSpec};
use crate::minors::{compose_unchecked, MinorModel};

use super::{StepKind, TransformStep};

/// Counts `(h_0, c_0)` such that a grid with `c` crosscaps normalises to the
/// Dyck-grid with `h + h_0` handles and `c_0` crosscaps.
pub fn normalize_target(c: usize) -> (usize, usize) {
    if c == 0 {
        return (0, 0);
    }
    let h0 = c.div_ceil(2) - 1;
    (h0, c - 2 * h0)
}

/// `162^(2g) k`, or `None` on overflow.
pub fn uniform_order_bound(g: u32, k: usize) -> Option<u128> {
    162u128.checked_pow(2 * g)?.checked_mul(k as u128)
}

fn word_spec(k: usize, word: &[Block]) -> Result<MixedSurfaceGridSpec> {
    MixedSurfaceGridSpec::from_word(k, word)
}

/// Plans `moves` on `word`, then assigns orders so the last target has order `k`.
fn materialise(word: Vec<Block>, moves: &[(StepKind, usize)], k: usize) -> Result<Vec<TransformStep>> {
    let product: usize = moves.iter().try_fold(1usize, |acc, (kind, _)| acc.checked_mul(kind.blowup()))
        .ok_or_else(|| Error::Precondition("order product overflows".into()))?;
    let mut order = k
        .checked_mul(product)
        .ok_or_else(|| Error::Precondition("order product overflows".into()))?;
    let mut spec = word_spec(order, &word)?;
    let mut steps = Vec::with_capacity(moves.len());
    for &(kind, pos) in moves {
        let step = TransformStep::plan(kind, &spec, pos)?;
        order /= kind.blowup();
        spec = step.target_spec.clone();
        debug_assert_eq!(spec.k, order);
        steps.push(step);
    }
    Ok(steps)
}

fn apply_move(word: &mut Vec<Block>, kind: StepKind, pos: usize) {
    let s = pos - 2;
    let len = kind.source_word().len();
    word.splice(s..s + len, kind.target_word().iter().copied());
}

/// Handles are bubbled to the front with swaps, leftmost first; then crosscap
/// triples directly after the handles are merged until at most two remain.
pub fn plan_normalization(source: &MixedSurfaceGridSpec, k_target: usize) -> Result<Vec<TransformStep>> {
    source.validate()?;
    let start = source.word();
    let mut word = start.clone();
    let mut moves = Vec::new();
    while let Some(j) = word.windows(2).position(|w| w == [Block::Crosscap, Block::Handle]) {
        moves.push((StepKind::SwapRight, j + 2));
        apply_move(&mut word, StepKind::SwapRight, j + 2);
    }
    let h = source.h();
    let mut c = source.c();
    let mut pos = h + 2;
    while c >= 3 {
        moves.push((StepKind::Merge3, pos));
        apply_move(&mut word, StepKind::Merge3, pos);
        pos += 1;
        c -= 2;
    }
    let steps = materialise(start, &moves, k_target)?;
    let needed = steps.first().map_or(k_target, |s| s.source_spec.k);
    if needed != source.k {
        return pre(format!(
            "the plan needs source order {needed} for target order {k_target}, got {}",
            source.k
        ));
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub steps: Vec<TransformStep>,
    pub target: DyckGridSpec,
    pub model: MinorModel,
}

fn run(steps: &[TransformStep], source: &MixedSurfaceGridSpec) -> Result<MinorModel> {
    let mut acc = MinorModel::identity(&mixed_surface_grid(source)?);
    for step in steps {
        let next = step.execute()?;
        acc = compose_unchecked(&next, &acc);
    }
    acc.verify()
        .map_err(|v| Error::Internal(format!("composed certificate: {v}")))?;
    Ok(acc)
}

/// Executes the normalisation plan and composes the step certificates.
pub fn normalize_to_dyck(source: &MixedSurfaceGridSpec, k_target: usize) -> Result<Normalization> {
    let steps = plan_normalization(source, k_target)?;
    let (h0, c0) = normalize_target(source.c());
    let target = DyckGridSpec::new((source.h() + h0) as i64, c0, k_target)?;
    let last = steps.last().map_or_else(|| source.clone(), |s| s.target_spec.clone());
    if last != target.to_mixed()? {
        return Err(Error::Internal(format!("plan ends at {last:?}, not at the Dyck-grid")));
    }
    let model = run(&steps, source)?;
    Ok(Normalization { steps, target, model })
}

/// Splits or merges behind the handles to reach the target crosscap count, then
/// moves each crosscap left into place with swaps.
pub fn plan_dyck_to_mixed(dyck: &DyckGridSpec, target: &MixedSurfaceGridSpec) -> Result<Vec<TransformStep>> {
    target.validate()?;
    let (h, c) = dyck.effective()?;
    let g = dyck.euler_genus()?;
    if g != target.euler_genus() {
        return pre(format!(
            "Euler genus {g} of the Dyck-grid differs from {} of the target",
            target.euler_genus()
        ));
    }
    if c == 0 && target.c() > 0 {
        return pre(
            "a Dyck-grid without crosscaps contains no grid with crosscaps: D_t^(0,1) is not a minor of D_k^(t-1,0)",
        );
    }
    if c > 0 && target.c() == 0 {
        return pre("a Dyck-grid with crosscaps does not contain a grid without crosscaps of the same Euler genus");
    }
    let start: Vec<Block> = std::iter::repeat_n(Block::Handle, h)
        .chain(std::iter::repeat_n(Block::Crosscap, c))
        .collect();
    let mut word = start.clone();
    let mut moves = Vec::new();
    let (mut hc, mut cc) = (h, c);
    while cc < target.c() {
        moves.push((StepKind::Split, hc + 1));
        apply_move(&mut word, StepKind::Split, hc + 1);
        hc -= 1;
        cc += 2;
    }
    while cc > target.c() {
        moves.push((StepKind::Merge3, hc + 2));
        apply_move(&mut word, StepKind::Merge3, hc + 2);
        hc += 1;
        cc -= 2;
    }
    let want = target.word();
    for idx in 0..want.len() {
        if want[idx] == Block::Crosscap && word[idx] == Block::Handle {
            let j = (idx + 1..word.len())
                .find(|&j| word[j] == Block::Crosscap)
                .ok_or_else(|| Error::Internal("no crosscap left to move".into()))?;
            for p in (idx..j).rev() {
                moves.push((StepKind::SwapLeft, p + 2));
                apply_move(&mut word, StepKind::SwapLeft, p + 2);
            }
        }
    }
    if word != want {
        return Err(Error::Internal("reordering did not reach the target word".into()));
    }
    let steps = materialise(start, &moves, target.k)?;
    let needed = steps.first().map_or(target.k, |s| s.source_spec.k);
    if needed != dyck.k {
        return pre(format!(
            "the plan needs Dyck order {needed} for target order {}, got {}",
            target.k, dyck.k
        ));
    }
    Ok(steps)
}

/// A certified model of `target` in the Dyck-grid `dyck`.
pub fn dyck_contains_mixed(dyck: &DyckGridSpec, target: &MixedSurfaceGridSpec) -> Result<MinorModel> {
    let steps = plan_dyck_to_mixed(dyck, target)?;
    run(&steps, &dyck.to_mixed()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        assert_eq!(normalize_target(0), (0, 0));
        assert_eq!(normalize_target(1), (0, 1));
        assert_eq!(normalize_target(2), (0, 2));
        assert_eq!(normalize_target(3), (1, 1));
        assert_eq!(normalize_target(4), (1, 2));
        assert_eq!(normalize_target(7), (3, 1));
        assert_eq!(uniform_order_bound(1, 3), Some(162 * 162 * 3));
        assert_eq!(uniform_order_bound(40, 3), None);
    }

    #[test]
    fn plans() {
        let s = MixedSurfaceGridSpec::new(3 * 9 * 9 * 9, [3, 5], [2, 4]).unwrap();
        let steps = plan_normalization(&s, 3).unwrap();
        let kinds: Vec<(StepKind, usize)> = steps.iter().map(|s| (s.kind, s.position)).collect();
        assert_eq!(kinds, vec![(StepKind::SwapRight, 2), (StepKind::SwapRight, 4), (StepKind::SwapRight, 3)]);
        assert!(plan_normalization(&s.with_order(81), 3).is_err());
        let s = MixedSurfaceGridSpec::new(3 * 18 * 18, [], [2, 3, 4, 5, 6]).unwrap();
        let steps = plan_normalization(&s, 3).unwrap();
        assert_eq!(steps.last().unwrap().target_spec, DyckGridSpec::new(2, 1, 3).unwrap().to_mixed().unwrap());

        let d = DyckGridSpec::new(1, 2, 3 * 9 * 9).unwrap();
        let t = MixedSurfaceGridSpec::new(3, [], [2, 3, 4, 5]).unwrap();
        assert!(plan_dyck_to_mixed(&d, &t).is_err());
        let t = MixedSurfaceGridSpec::new(3, [4], [2, 3]).unwrap();
        let steps = plan_dyck_to_mixed(&d, &t).unwrap();
        let kinds: Vec<(StepKind, usize)> = steps.iter().map(|s| (s.kind, s.position)).collect();
        assert_eq!(kinds, vec![(StepKind::SwapLeft, 2), (StepKind::SwapLeft, 3)]);
    }

    #[test]
    fn dyck_errors() {
        let d = DyckGridSpec::new(2, 0, 54).unwrap();
        let t = MixedSurfaceGridSpec::new(3, [3], [2, 4]).unwrap();
        assert!(dyck_contains_mixed(&d, &t).is_err());
        let t = MixedSurfaceGridSpec::new(3, [2], []).unwrap();
        assert!(dyck_contains_mixed(&d, &t).is_err());
    }

    #[test]
    fn identity_normalisation() {
        let s = MixedSurfaceGridSpec::new(3, [2], [3]).unwrap();
        let n = normalize_to_dyck(&s, 3).unwrap();
        assert!(n.steps.is_empty());
        assert_eq!(n.model, MinorModel::identity(&mixed_surface_grid(&s).unwrap()));
    }
}
