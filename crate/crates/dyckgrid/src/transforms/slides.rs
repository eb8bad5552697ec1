//! Band slides on ring 1.
//!
//! The affected positions of a step are described as a word of band ends. A
//! *composite* is a bundle that starts as one source band and grows by sliding
//! one of its ends along a neighbouring bundle. Sliding along an untwisted
//! bundle lands the end on the opposite side of the far end; along a twisted
//! bundle it lands on the same side. The final word must read as the target
//! pattern, and each composite's path says which bands its paths traverse.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    S,
    E,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::S => End::E,
            End::E => End::S,
        }
    }
}

/// Direction in which a band is traversed: `F` from its S end to its E end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    F,
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::F => Dir::R,
            Dir::R => Dir::F,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub path: Vec<(usize, Dir)>,
    pub twisted: bool,
}

impl Composite {
    fn traversed(&self, dir: Dir) -> Vec<(usize, Dir)> {
        match dir {
            Dir::F => self.path.clone(),
            Dir::R => self.path.iter().rev().map(|&(b, d)| (b, d.flip())).collect(),
        }
    }

    pub fn reversed(&self) -> Composite {
        Composite {
            path: self.traversed(Dir::R),
            twisted: self.twisted,
        }
    }
}

/// One slide: end `end` of composite `c` moves along composite `d`, starting at
/// the end `d_end` it is adjacent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slide {
    pub c: usize,
    pub end: End,
    pub d: usize,
    pub d_end: End,
}

pub const fn slide(c: usize, end: End, d: usize, d_end: End) -> Slide {
    Slide { c, end, d, d_end }
}

#[derive(Clone, Debug)]
pub struct SlideState {
    pub word: Vec<(usize, End)>,
    pub composites: Vec<Composite>,
}

impl SlideState {
    /// Composites `0..twists.len()` are single bands; `word` lists their ends.
    pub fn new(twists: &[bool], word: Vec<(usize, End)>) -> Self {
        SlideState {
            word,
            composites: twists
                .iter()
                .enumerate()
                .map(|(b, &t)| Composite {
                    path: vec![(b, Dir::F)],
                    twisted: t,
                })
                .collect(),
        }
    }

    fn index(&self, c: usize, e: End) -> Result<usize> {
        self.word
            .iter()
            .position(|&x| x == (c, e))
            .ok_or_else(|| Error::Internal(format!("end {e:?} of composite {c} missing from word")))
    }

    pub fn apply(&mut self, s: Slide) -> Result<()> {
        let ip = self.index(s.c, s.end)?;
        let iq = self.index(s.d, s.d_end)?;
        if ip.abs_diff(iq) != 1 {
            return Err(Error::Internal(format!("slide {s:?}: ends are not adjacent")));
        }
        let d = self.composites[s.d].clone();
        let c = &mut self.composites[s.c];
        match s.end {
            End::E => {
                let dir = if s.d_end == End::S { Dir::F } else { Dir::R };
                c.path.extend(d.traversed(dir));
            }
            End::S => {
                let dir = if s.d_end == End::E { Dir::F } else { Dir::R };
                let mut p = d.traversed(dir);
                p.extend(c.path.iter().copied());
                c.path = p;
            }
        }
        c.twisted ^= d.twisted;
        let before = ip < iq;
        self.word.remove(ip);
        let iq2 = self.index(s.d, s.d_end.other())?;
        let insert_before = before == d.twisted;
        let at = if insert_before { iq2 } else { iq2 + 1 };
        self.word.insert(at, (s.c, s.end));
        Ok(())
    }

    pub fn run(mut self, slides: &[Slide]) -> Result<Self> {
        for &s in slides {
            self.apply(s)?;
        }
        Ok(self)
    }
}

use End::{E, S};

/// Crosscap then handle, into handle then crosscap. Bands: 0 = X, 1 = A, 2 = B.
pub const SWAP_RIGHT: [Slide; 8] = [
    slide(0, E, 1, S),
    slide(0, E, 2, E),
    slide(0, E, 1, E),
    slide(0, E, 2, S),
    slide(0, S, 1, S),
    slide(0, S, 2, E),
    slide(0, S, 1, E),
    slide(0, S, 2, S),
];

/// Handle then crosscap, into crosscap then handle. Bands: 0 = A, 1 = B, 2 = X.
pub const SWAP_LEFT: [Slide; 8] = [
    slide(2, S, 1, E),
    slide(2, S, 0, S),
    slide(2, S, 1, S),
    slide(2, S, 0, E),
    slide(2, E, 1, E),
    slide(2, E, 0, S),
    slide(2, E, 1, S),
    slide(2, E, 0, E),
];

/// Three crosscaps into a handle and a crosscap. Bands: 0, 1, 2 = X.
pub const MERGE: [Slide; 5] = [
    slide(0, E, 1, S),
    slide(1, E, 2, S),
    slide(2, S, 1, E),
    slide(2, S, 0, E),
    slide(2, S, 1, S),
];

/// Handle and crosscap into three crosscaps. Bands: 0 = A, 1 = B, 2 = X.
pub const SPLIT: [Slide; 5] = [
    slide(2, S, 1, E),
    slide(2, S, 0, S),
    slide(2, S, 1, S),
    slide(1, E, 2, E),
    slide(0, E, 1, E),
];

#[cfg(test)]
mod tests {
    use super::*;
    use Dir::{F, R};

    fn handle_then_cross() -> Vec<(usize, End)> {
        vec![(0, S), (1, S), (0, E), (1, E), (2, S), (2, E)]
    }

    #[test]
    fn swap_right() {
        let word = vec![(0, S), (0, E), (1, S), (2, S), (1, E), (2, E)];
        let st = SlideState::new(&[true, false, false], word).run(&SWAP_RIGHT).unwrap();
        assert_eq!(st.word, vec![(1, S), (2, S), (1, E), (2, E), (0, S), (0, E)]);
        assert_eq!(
            st.composites[0].path,
            vec![(2, R), (1, F), (2, F), (1, R), (0, F), (1, F), (2, R), (1, R), (2, F)]
        );
        assert!(st.composites[0].twisted);
    }

    #[test]
    fn swap_left() {
        let st = SlideState::new(&[false, false, true], handle_then_cross()).run(&SWAP_LEFT).unwrap();
        assert_eq!(st.word, vec![(2, S), (2, E), (0, S), (1, S), (0, E), (1, E)]);
        assert_eq!(
            st.composites[2].path,
            vec![(0, F), (1, R), (0, R), (1, F), (2, F), (1, R), (0, F), (1, F), (0, R)]
        );
    }

    #[test]
    fn merge() {
        let word = vec![(0, S), (0, E), (1, S), (1, E), (2, S), (2, E)];
        let st = SlideState::new(&[true; 3], word).run(&MERGE).unwrap();
        assert_eq!(st.word, handle_then_cross());
        assert_eq!(st.composites[0].path, vec![(0, F), (1, F)]);
        assert_eq!(st.composites[1].path, vec![(1, F), (2, F)]);
        assert_eq!(
            st.composites[2].path,
            vec![(2, R), (1, R), (0, F), (1, F), (1, F), (2, F), (2, F)]
        );
        assert_eq!(
            st.composites.iter().map(|c| c.twisted).collect::<Vec<_>>(),
            vec![false, false, true]
        );
    }

    #[test]
    fn split() {
        let st = SlideState::new(&[false, false, true], handle_then_cross()).run(&SPLIT).unwrap();
        assert_eq!(st.word, vec![(0, S), (0, E), (1, S), (1, E), (2, S), (2, E)]);
        assert!(st.composites.iter().all(|c| c.twisted));
        assert_eq!(st.composites[2].path, vec![(1, R), (0, R), (1, F), (2, F)]);
        assert_eq!(st.composites[1].path, vec![(1, F), (2, R), (1, R), (0, F), (1, F)]);
        assert_eq!(
            st.composites[0].path,
            vec![(0, F), (1, R), (0, R), (1, F), (2, F), (1, R)]
        );
    }

    #[test]
    fn non_adjacent_slide_fails() {
        let word = vec![(0, S), (0, E), (1, S), (1, E)];
        let mut st = SlideState::new(&[true, true], word);
        assert!(st.apply(slide(0, S, 1, E)).is_err());
    }
}
