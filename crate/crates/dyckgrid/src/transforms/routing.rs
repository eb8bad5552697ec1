//! Realising composites as disjoint paths below ring `R` of the source grid.
//!
//! Every traversal of a band by a composite occupies a contiguous block of that
//! band's chords. Consecutive traversals are joined by a ribbon of nested
//! U-shaped paths that rise from ring 1 and turn at some ring; the first and last
//! blocks of a composite are joined to ring `R` by straight vertical paths.
//! A layout is feasible when the ribbons are laminar, no vertical path sits
//! under a ribbon, and the terminal blocks appear in target order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::transforms::slides::{Composite, Dir, End};

/// A bundle of parallel ring-1 chords: S end columns `s_base..s_base+width`,
/// E end columns `e_base..e_base+width`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Band {
    pub s_base: usize,
    pub e_base: usize,
    pub width: usize,
    pub twisted: bool,
}

impl Band {
    pub fn base(&self, end: End) -> usize {
        match end {
            End::S => self.s_base,
            End::E => self.e_base,
        }
    }

    /// Index on the opposite end joined by the chord at index `x`.
    pub fn partner(&self, x: usize) -> usize {
        if self.twisted {
            x
        } else {
            self.width - 1 - x
        }
    }
}

/// A contiguous run of `w` columns starting at `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Block {
    start: usize,
    w: usize,
}

impl Block {
    fn end(&self) -> usize {
        self.start + self.w - 1
    }
}

#[derive(Clone, Copy, Debug)]
struct Ribbon {
    left: Block,
    right: Block,
}

impl Ribbon {
    fn new(a: Block, b: Block) -> Self {
        if a.start < b.start {
            Ribbon { left: a, right: b }
        } else {
            Ribbon { left: b, right: a }
        }
    }
    fn lo(&self) -> usize {
        self.left.start
    }
    fn hi(&self) -> usize {
        self.right.end()
    }
    /// `other` lies strictly between the two blocks.
    fn holds(&self, other: &Ribbon) -> bool {
        self.left.end() < other.lo() && other.hi() < self.right.start
    }
    fn laminar_with(&self, other: &Ribbon) -> bool {
        self.holds(other) || other.holds(self) || self.hi() < other.lo() || other.hi() < self.lo()
    }
    fn covers(&self, b: &Block) -> bool {
        !(b.end() < self.lo() || self.hi() < b.start)
    }
}

/// The routed affected region.
#[derive(Clone, Debug)]
pub struct Routing {
    /// Target column to source column, for every affected target column.
    pub col_map: BTreeMap<usize, usize>,
    /// Target S-end column of each affected target chord and its path, as `(ring, column)` cells.
    pub nets: Vec<(usize, Vec<(usize, usize)>)>,
}

pub struct Problem<'a> {
    pub source: &'a [Band],
    pub target: &'a [Band],
    pub composites: &'a [Composite],
    /// Ends of composites in ring order after the slides.
    pub word: &'a [(usize, End)],
    /// Rings available for routing, `1..=rows`.
    pub rows: usize,
}

struct Prepared {
    comps: Vec<Composite>,
    /// Composite to target band.
    tband: Vec<usize>,
    width: Vec<usize>,
    /// Traversals `(composite, step)` of each source band.
    uses: Vec<Vec<(usize, usize)>>,
    /// Expected terminal order: `(composite, end)` by ring position.
    expected: Vec<(usize, End)>,
}

fn prepare(p: &Problem) -> Result<Prepared> {
    let mut tends: Vec<(usize, usize, End)> = Vec::new();
    for (i, b) in p.target.iter().enumerate() {
        tends.push((b.s_base, i, End::S));
        tends.push((b.e_base, i, End::E));
    }
    tends.sort();
    if tends.len() != p.word.len() {
        return Err(Error::Internal("slide word does not match the target pattern length".into()));
    }
    let nc = p.composites.len();
    let mut tband = vec![usize::MAX; nc];
    let mut flip = vec![None; nc];
    for (&(c, ce), &(_, tb, te)) in p.word.iter().zip(&tends) {
        let f = ce != te;
        if (tband[c] != usize::MAX && tband[c] != tb) || flip[c].is_some_and(|x| x != f) {
            return Err(Error::Internal(format!("composite {c} does not land on one target band")));
        }
        tband[c] = tb;
        flip[c] = Some(f);
    }
    let comps: Vec<Composite> = p
        .composites
        .iter()
        .enumerate()
        .map(|(c, comp)| if flip[c] == Some(true) { comp.reversed() } else { comp.clone() })
        .collect();
    for (c, comp) in comps.iter().enumerate() {
        if comp.twisted != p.target[tband[c]].twisted {
            return Err(Error::Internal(format!("composite {c} has the wrong twist")));
        }
    }
    let width: Vec<usize> = tband.iter().map(|&tb| p.target[tb].width).collect();
    let mut uses = vec![Vec::new(); p.source.len()];
    for (c, comp) in comps.iter().enumerate() {
        for (j, &(b, _)) in comp.path.iter().enumerate() {
            uses[b].push((c, j));
        }
    }
    for (b, u) in uses.iter().enumerate() {
        let total: usize = u.iter().map(|&(c, _)| width[c]).sum();
        if total > p.source[b].width {
            return Err(Error::Precondition(format!(
                "band {b} needs {total} chords but has {}",
                p.source[b].width
            )));
        }
    }
    let expected = tends
        .iter()
        .map(|&(_, tb, te)| {
            let c = tband.iter().position(|&x| x == tb).unwrap();
            (c, te)
        })
        .collect();
    Ok(Prepared {
        comps,
        tband,
        width,
        uses,
        expected,
    })
}

/// Block positions of every traversal under the given per-band orders.
struct Layout {
    /// `blocks[c][j]` = (entry block, exit block) of step `j` of composite `c`.
    blocks: Vec<Vec<Option<(Block, Block)>>>,
}

fn layout(p: &Problem, prep: &Prepared, orders: &[Vec<usize>]) -> Layout {
    let mut blocks: Vec<Vec<Option<(Block, Block)>>> =
        prep.comps.iter().map(|c| vec![None; c.path.len()]).collect();
    for (b, order) in orders.iter().enumerate() {
        let band = &p.source[b];
        let mut off = 0;
        for &u in order {
            let (c, j) = prep.uses[b][u];
            let w = prep.width[c];
            let s = Block {
                start: band.s_base + off,
                w,
            };
            let e_off = if band.twisted { off } else { band.width - off - w };
            let e = Block {
                start: band.e_base + e_off,
                w,
            };
            blocks[c][j] = Some(match prep.comps[c].path[j].1 {
                Dir::F => (s, e),
                Dir::R => (e, s),
            });
            off += w;
        }
    }
    Layout { blocks }
}

impl Layout {
    fn ribbons(&self) -> Vec<(usize, Ribbon)> {
        let mut out = Vec::new();
        for (c, steps) in self.blocks.iter().enumerate() {
            for j in 0..steps.len().saturating_sub(1) {
                if let (Some((_, exit)), Some((entry, _))) = (steps[j], steps[j + 1]) {
                    out.push((c, Ribbon::new(exit, entry)));
                }
            }
        }
        out
    }

    fn terminals(&self) -> Vec<(usize, End, Block)> {
        let mut out = Vec::new();
        for (c, steps) in self.blocks.iter().enumerate() {
            if let Some(Some((entry, _))) = steps.first() {
                out.push((c, End::S, *entry));
            }
            if let Some(Some((_, exit))) = steps.last() {
                out.push((c, End::E, *exit));
            }
        }
        out
    }

    fn feasible(&self) -> bool {
        let ribbons = self.ribbons();
        for i in 0..ribbons.len() {
            for j in i + 1..ribbons.len() {
                if !ribbons[i].1.laminar_with(&ribbons[j].1) {
                    return false;
                }
            }
        }
        let terms = self.terminals();
        !terms
            .iter()
            .any(|(_, _, t)| ribbons.iter().any(|(_, r)| r.covers(t)))
    }

    /// Level of the innermost path of each ribbon, and the overall maximum level.
    fn levels(&self, width: &[usize]) -> (Vec<(usize, Ribbon, usize)>, usize) {
        let mut ribbons = self.ribbons();
        ribbons.sort_by_key(|(_, r)| r.hi() - r.lo());
        let mut placed: Vec<(usize, Ribbon, usize)> = Vec::new();
        let mut max = 0;
        for (c, r) in ribbons {
            let inner = 1 + placed
                .iter()
                .filter(|(_, q, _)| r.holds(q))
                .map(|(qc, _, lv)| lv + width[*qc] - 1)
                .max()
                .unwrap_or(0);
            max = max.max(inner + width[c] - 1);
            placed.push((c, r, inner));
        }
        (placed, max)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Searches block orders for a feasible layout with the fewest rows, then
/// builds the paths.
pub fn route(p: &Problem) -> Result<Routing> {
    let prep = prepare(p)?;
    let perms: Vec<Vec<Vec<usize>>> = prep.uses.iter().map(|u| permutations(u.len())).collect();
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut orders: Vec<Vec<usize>> = vec![Vec::new(); p.source.len()];
    search(p, &prep, &perms, 0, &mut orders, &mut best);
    let (max_level, orders) =
        best.ok_or_else(|| Error::Internal("no laminar layout of the composites exists".into()))?;
    if max_level + 1 > p.rows {
        return Err(Error::Precondition(format!(
            "routing needs {} rings below the target, only {} available",
            max_level + 1,
            p.rows
        )));
    }
    build(p, &prep, &orders)
}

fn search(
    p: &Problem,
    prep: &Prepared,
    perms: &[Vec<Vec<usize>>],
    b: usize,
    orders: &mut Vec<Vec<usize>>,
    best: &mut Option<(usize, Vec<Vec<usize>>)>,
) {
    if b == perms.len() {
        let lay = layout(p, prep, orders);
        if !lay.feasible() {
            return;
        }
        let mut terms = lay.terminals();
        terms.sort_by_key(|t| t.2.start);
        let order: Vec<(usize, End)> = terms.iter().map(|t| (t.0, t.1)).collect();
        if order != prep.expected {
            return;
        }
        let (_, level) = lay.levels(&prep.width);
        if best.as_ref().is_none_or(|(l, _)| level < *l) {
            *best = Some((level, orders.clone()));
        }
        return;
    }
    for perm in &perms[b] {
        orders[b] = perm.clone();
        let partial: Vec<Vec<usize>> = (0..perms.len())
            .map(|x| if x <= b { orders[x].clone() } else { Vec::new() })
            .collect();
        if layout(p, prep, &partial).feasible() {
            search(p, prep, perms, b + 1, orders, best);
        }
    }
    orders[b] = Vec::new();
}

fn vertical(out: &mut Vec<(usize, usize)>, col: usize, top: usize) {
    out.extend((1..=top).map(|r| (r, col)));
}

fn build(p: &Problem, prep: &Prepared, orders: &[Vec<usize>]) -> Result<Routing> {
    let lay = layout(p, prep, orders);
    let (levels, _) = lay.levels(&prep.width);
    let level_of = |c: usize, r: &Ribbon| -> usize {
        levels
            .iter()
            .find(|(qc, q, _)| *qc == c && q.lo() == r.lo() && q.hi() == r.hi())
            .map(|x| x.2)
            .expect("ribbon has a level")
    };
    let mut col_map = BTreeMap::new();
    let mut nets = Vec::new();
    for (c, comp) in prep.comps.iter().enumerate() {
        let w = prep.width[c];
        let tb = p.target[prep.tband[c]];
        let steps: Vec<(Block, Block)> = lay.blocks[c].iter().map(|b| b.expect("complete layout")).collect();
        let first = steps[0].0;
        let last = steps[steps.len() - 1].1;
        for s in 0..w {
            let mut cells = Vec::new();
            let mut col = first.start + s;
            vertical(&mut cells, col, p.rows);
            for (j, &(band_idx, dir)) in comp.path.iter().enumerate() {
                let band = &p.source[band_idx];
                let (from, to) = match dir {
                    Dir::F => (End::S, End::E),
                    Dir::R => (End::E, End::S),
                };
                let exit = band.base(to) + band.partner(col - band.base(from));
                if j + 1 == comp.path.len() {
                    col = exit;
                    break;
                }
                let (exit_block, entry_block) = (steps[j].1, steps[j + 1].0);
                let rank = exit - exit_block.start;
                let entry = entry_block.start + (w - 1 - rank);
                let ribbon = Ribbon::new(exit_block, entry_block);
                let inner = level_of(c, &ribbon);
                let left_rank = if exit_block.start < entry_block.start { rank } else { w - 1 - rank };
                let row = inner + (w - 1 - left_rank) + 1;
                let (a, b) = (exit.min(entry), exit.max(entry));
                vertical(&mut cells, a, row);
                vertical(&mut cells, b, row);
                cells.extend((a + 1..b).map(|x| (row, x)));
                col = entry;
            }
            vertical(&mut cells, col, p.rows);
            let e_rank = col - last.start;
            let want = tb.partner(s);
            if e_rank != want {
                return Err(Error::Internal(format!(
                    "composite {c}: path {s} ends at rank {e_rank}, expected {want}"
                )));
            }
            cells.sort_unstable();
            cells.dedup();
            nets.push((tb.s_base + s, cells));
        }
        for s in 0..w {
            col_map.insert(tb.s_base + s, first.start + s);
            col_map.insert(tb.e_base + s, last.start + s);
        }
    }
    let ordered: Vec<usize> = col_map.values().copied().collect();
    if ordered.windows(2).any(|x| x[0] >= x[1]) {
        return Err(Error::Internal("terminal columns out of order".into()));
    }
    Ok(Routing {
        col_map,
        nets,
    })
}
