//! Certified transformations between mixed surface grids.
//!
//! Each step turns a grid of order `blowup * k` into a model of a grid of order
//! `k` whose word differs at one or two adjacent positions. Target vertex
//! `(r, t)` becomes a horizontal run of ring `R + r` of the source, where
//! `R = (blowup - 1) k`; rings `1..=R` carry the paths that realise the target's
//! handle and crosscap edges.

mod plan;
mod routing;
mod slides;

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::grids::{crosscap_columns, cyl_id, handle_columns, mixed_surface_grid, Block, MixedSurfaceGridSpec};
use crate::minors::MinorModel;

pub use plan::{
    dyck_contains_mixed, normalize_target, normalize_to_dyck, plan_dyck_to_mixed, plan_normalization, uniform_order_bound,
    Normalization,
};

use routing::{Band, Problem};
use slides::{End, Slide, SlideState, MERGE, SPLIT, SWAP_LEFT, SWAP_RIGHT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Crosscap at `i`, handle at `i + 1` become handle, crosscap.
    SwapRight,
    /// Handle at `i`, crosscap at `i + 1` become crosscap, handle.
    SwapLeft,
    /// Crosscaps at `i, i + 1, i + 2` become a handle at `i` and a crosscap at `i + 1`.
    Merge3,
    /// Handle at `i`, crosscap at `i + 1` become crosscaps at `i, i + 1, i + 2`.
    Split,
}

impl StepKind {
    pub fn blowup(self) -> usize {
        match self {
            StepKind::SwapRight | StepKind::SwapLeft => 9,
            StepKind::Merge3 | StepKind::Split => 18,
        }
    }

    fn source_word(self) -> &'static [Block] {
        use Block::{Crosscap as X, Handle as H};
        match self {
            StepKind::SwapRight => &[X, H],
            StepKind::SwapLeft | StepKind::Split => &[H, X],
            StepKind::Merge3 => &[X, X, X],
        }
    }

    fn target_word(self) -> &'static [Block] {
        use Block::{Crosscap as X, Handle as H};
        match self {
            StepKind::SwapRight | StepKind::Merge3 => &[H, X],
            StepKind::SwapLeft => &[X, H],
            StepKind::Split => &[X, X, X],
        }
    }

    fn slides(self) -> &'static [Slide] {
        match self {
            StepKind::SwapRight => &SWAP_RIGHT,
            StepKind::SwapLeft => &SWAP_LEFT,
            StepKind::Merge3 => &MERGE,
            StepKind::Split => &SPLIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformStep {
    pub kind: StepKind,
    pub source_spec: MixedSurfaceGridSpec,
    pub target_spec: MixedSurfaceGridSpec,
    pub position: usize,
    pub blowup: usize,
}

impl TransformStep {
    /// Checks kinds, positions and divisibility and computes the target spec.
    pub fn plan(kind: StepKind, source: &MixedSurfaceGridSpec, position: usize) -> Result<Self> {
        source.validate()?;
        let blowup = kind.blowup();
        if !source.k.is_multiple_of(blowup) || source.k / blowup < 3 {
            return pre(format!(
                "order {} is not {blowup}k with k >= 3",
                source.k
            ));
        }
        let want = kind.source_word();
        let word = source.word();
        let start = position.checked_sub(2).filter(|&s| s + want.len() <= word.len());
        match start {
            Some(s) if &word[s..s + want.len()] == want => {
                let mut new_word = word[..s].to_vec();
                new_word.extend_from_slice(kind.target_word());
                new_word.extend_from_slice(&word[s + want.len()..]);
                let target_spec = MixedSurfaceGridSpec::from_word(source.k / blowup, &new_word)?;
                Ok(TransformStep {
                    kind,
                    source_spec: source.clone(),
                    target_spec,
                    position,
                    blowup,
                })
            }
            _ => pre(format!(
                "{kind:?} needs {want:?} starting at position {position}, found {:?}",
                word
            )),
        }
    }

    /// Target position `p` lies outside the affected range; its source position.
    fn source_position(&self, p: usize) -> usize {
        if p < self.position {
            p
        } else {
            p + self.kind.source_word().len() - self.kind.target_word().len()
        }
    }

    /// Builds and verifies the model of the target grid in the source grid.
    pub fn execute(&self) -> Result<MinorModel> {
        let big = self.source_spec.k;
        let k = self.target_spec.k;
        let rows = big - k;
        let ns = self.source_spec.cycle_length();
        let nt = self.target_spec.cycle_length();
        let mut col = vec![0usize; nt + 2];
        let mut nets: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        let affected = self.position..self.position + self.kind.target_word().len();
        let mut chords: Vec<(usize, usize)> = Vec::new();
        for p in 1..=self.target_spec.positions() {
            if affected.contains(&p) {
                continue;
            }
            let (ot, os) = (4 * k * (p - 1), 4 * big * (self.source_position(p) - 1));
            for j in 1..=4 * k {
                col[ot + j] = os
                    + match self.target_spec.block(p) {
                        Block::Plain => j,
                        Block::Crosscap if j <= 2 * k => j,
                        Block::Crosscap => 2 * big + j - 2 * k,
                        Block::Handle if j <= k => j,
                        Block::Handle if j <= 2 * k => big + j - k,
                        Block::Handle if j <= 3 * k => 3 * big - k + j - 2 * k,
                        Block::Handle => 4 * big - k + j - 3 * k,
                    };
            }
            match self.target_spec.block(p) {
                Block::Plain => {}
                Block::Handle => chords.extend(handle_columns(k, p)),
                Block::Crosscap => chords.extend(crosscap_columns(k, p)),
            }
        }
        let routed = self.route()?;
        for (&t, &s) in &routed.col_map {
            col[t] = s;
        }
        col[nt + 1] = ns + 1;
        if (1..=nt).any(|t| col[t] == 0) || col[1..=nt + 1].windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Internal("column map is not increasing".into()));
        }
        for (a, b) in chords {
            let mut cells: Vec<(usize, usize)> = (1..=rows).map(|r| (r, col[a])).collect();
            cells.extend((1..=rows).map(|r| (r, col[b])));
            nets.push((a, cells));
        }
        nets.extend(routed.nets);

        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k * nt];
        for r in 1..=k {
            for t in 1..=nt {
                sets[cyl_id(nt, r, t)] = (col[t]..col[t + 1]).map(|c| cyl_id(ns, rows + r, c)).collect();
            }
        }
        for (t, cells) in nets {
            sets[cyl_id(nt, 1, t)].extend(cells.into_iter().map(|(r, c)| cyl_id(ns, r, c)));
        }
        let model = MinorModel::new(
            mixed_surface_grid(&self.target_spec)?,
            mixed_surface_grid(&self.source_spec)?,
            sets,
        );
        model
            .verify()
            .map_err(|v| Error::Internal(format!("{:?} at position {}: {v}", self.kind, self.position)))?;
        Ok(model)
    }

    fn route(&self) -> Result<routing::Routing> {
        let source = bands(self.kind.source_word(), self.position, self.source_spec.k);
        let target = bands(self.kind.target_word(), self.position, self.target_spec.k);
        let mut ends: Vec<(usize, usize, End)> = Vec::new();
        for (i, b) in source.iter().enumerate() {
            ends.push((b.s_base, i, End::S));
            ends.push((b.e_base, i, End::E));
        }
        ends.sort();
        let twists: Vec<bool> = source.iter().map(|b| b.twisted).collect();
        let word = ends.iter().map(|&(_, i, e)| (i, e)).collect();
        let st = SlideState::new(&twists, word).run(self.kind.slides())?;
        routing::route(&Problem {
            source: &source,
            target: &target,
            composites: &st.composites,
            word: &st.word,
            rows: self.source_spec.k - self.target_spec.k,
        })
    }
}

/// Chord bundles of the blocks `word` placed from position `first` on, in order
/// of their S ends.
fn bands(word: &[Block], first: usize, m: usize) -> Vec<Band> {
    let mut out = Vec::new();
    for (idx, b) in word.iter().enumerate() {
        let o = 4 * m * (first + idx - 1);
        match b {
            Block::Crosscap => out.push(Band {
                s_base: o + 1,
                e_base: o + 2 * m + 1,
                width: 2 * m,
                twisted: true,
            }),
            Block::Handle => {
                for (s, e) in [(o + 1, o + 2 * m + 1), (o + m + 1, o + 3 * m + 1)] {
                    out.push(Band {
                        s_base: s,
                        e_base: e,
                        width: m,
                        twisted: false,
                    });
                }
            }
            Block::Plain => {}
        }
    }
    out
}

fn apply(kind: StepKind, source: &MixedSurfaceGridSpec, position: usize) -> Result<(MixedSurfaceGridSpec, MinorModel)> {
    let step = TransformStep::plan(kind, source, position)?;
    let model = step.execute()?;
    Ok((step.target_spec, model))
}

/// Exchanges the crosscap and handle at positions `i` and `i + 1`. The source
/// order must be `9k`; the result has order `k`.
pub fn swap_handle_crosscap(source: &MixedSurfaceGridSpec, i: usize) -> Result<(MixedSurfaceGridSpec, MinorModel)> {
    let kind = match (source.block(i), source.block(i + 1)) {
        (Block::Crosscap, Block::Handle) => StepKind::SwapRight,
        (Block::Handle, Block::Crosscap) => StepKind::SwapLeft,
        (a, b) => return pre(format!("positions {i}, {} hold {a:?}, {b:?}, not a handle and a crosscap", i + 1)),
    };
    apply(kind, source, i)
}

/// Turns crosscaps at `i, i + 1, i + 2` into a handle at `i` and a crosscap at
/// `i + 1`. Without `i` the triple must be unique. Source order `18k`.
pub fn merge_three_crosscaps(source: &MixedSurfaceGridSpec, i: Option<usize>) -> Result<(MixedSurfaceGridSpec, MinorModel)> {
    let i = match i {
        Some(i) => i,
        None => {
            let word = source.word();
            let starts: Vec<usize> = (0..word.len().saturating_sub(2))
                .filter(|&s| word[s..s + 3].iter().all(|&b| b == Block::Crosscap))
                .map(|s| s + 2)
                .collect();
            match starts.as_slice() {
                [] => return pre("no three consecutive crosscaps"),
                [i] => *i,
                _ => return pre(format!("crosscap triples start at {starts:?}; give a position")),
            }
        }
    };
    apply(StepKind::Merge3, source, i)
}

/// Turns a handle at `i` followed by a crosscap into three crosscaps. Source order `18k`.
pub fn split_handle_to_crosscaps(source: &MixedSurfaceGridSpec, i: usize) -> Result<(MixedSurfaceGridSpec, MinorModel)> {
    apply(StepKind::Split, source, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planning_errors() {
        let two_handles = MixedSurfaceGridSpec::new(27, [2, 3], []).unwrap();
        assert!(swap_handle_crosscap(&two_handles, 2).is_err());
        let s = MixedSurfaceGridSpec::new(10, [3], [2]).unwrap();
        assert!(swap_handle_crosscap(&s, 2).is_err());
        let s = MixedSurfaceGridSpec::new(54, [], [2, 3]).unwrap();
        assert!(merge_three_crosscaps(&s, None).is_err());
        let s = MixedSurfaceGridSpec::new(54, [], [2, 3, 4, 5]).unwrap();
        assert!(merge_three_crosscaps(&s, None).is_err());
        let s = MixedSurfaceGridSpec::new(54, [], [2, 3, 4]).unwrap();
        assert!(split_handle_to_crosscaps(&s, 2).is_err());
    }

    #[test]
    fn step_arithmetic() {
        let s = MixedSurfaceGridSpec::new(54, [4], [2, 3, 5, 6, 7]).unwrap();
        let st = TransformStep::plan(StepKind::Merge3, &s, 5).unwrap();
        assert_eq!(st.target_spec, MixedSurfaceGridSpec::new(3, [4, 5], [2, 3, 6]).unwrap());
        let st = TransformStep::plan(StepKind::Split, &s, 4).unwrap();
        assert_eq!(st.target_spec, MixedSurfaceGridSpec::new(3, [], [2, 3, 4, 5, 6, 7, 8]).unwrap());
        let st = TransformStep::plan(StepKind::SwapLeft, &MixedSurfaceGridSpec::new(27, [2], [3]).unwrap(), 2).unwrap();
        assert_eq!(st.target_spec, MixedSurfaceGridSpec::new(3, [3], [2]).unwrap());
    }

    #[test]
    fn swaps_verify() {
        let s = MixedSurfaceGridSpec::new(27, [3], [2]).unwrap();
        let (t, m) = swap_handle_crosscap(&s, 2).unwrap();
        assert_eq!(t, MixedSurfaceGridSpec::new(3, [2], [3]).unwrap());
        assert!(m.is_valid());
        let (t, m) = swap_handle_crosscap(&MixedSurfaceGridSpec::new(27, [2], [3]).unwrap(), 2).unwrap();
        assert_eq!(t, MixedSurfaceGridSpec::new(3, [3], [2]).unwrap());
        assert!(m.is_valid());
    }

    #[test]
    fn swap_with_neighbours() {
        let s = MixedSurfaceGridSpec::new(27, [2, 4], [3]).unwrap();
        let (t, m) = swap_handle_crosscap(&s, 3).unwrap();
        assert_eq!(t, MixedSurfaceGridSpec::new(3, [2, 3], [4]).unwrap());
        assert!(m.is_valid());
    }

    #[test]
    fn merge_and_split_verify() {
        let s = MixedSurfaceGridSpec::new(54, [], [2, 3, 4]).unwrap();
        let (t, m) = merge_three_crosscaps(&s, None).unwrap();
        assert_eq!(t, MixedSurfaceGridSpec::new(3, [2], [3]).unwrap());
        assert!(m.is_valid());
        let s = MixedSurfaceGridSpec::new(54, [2], [3]).unwrap();
        let (t, m) = split_handle_to_crosscaps(&s, 2).unwrap();
        assert_eq!(t, MixedSurfaceGridSpec::new(3, [], [2, 3, 4]).unwrap());
        assert!(m.is_valid());
    }
}
