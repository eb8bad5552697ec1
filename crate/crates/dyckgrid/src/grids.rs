//! Cylindrical grids, handles, crosscaps, mixed surface grids and Dyck-grids.
//!
//! Vertex `v^i_j` (ring `i`, column `j`, both 1-based) of an `(m, n)`-cylindrical
//! grid has id `(i - 1) * n + (j - 1)` and carries the label `(i, j)`. Ring 1 is
//! the cycle that receives handle and crosscap edges; ring `m` is the outermost.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::graph::Graph;

/// Id of `v^ring_col` in an `(m, n)`-cylindrical grid.
pub fn cyl_id(n: usize, ring: usize, col: usize) -> usize {
    (ring - 1) * n + (col - 1)
}

/// The `(m, n)`-cylindrical grid: `m` concentric cycles of length `n`.
pub fn cylindrical_grid(m: usize, n: usize) -> Result<Graph> {
    if m < 3 || n < 3 {
        return pre(format!("cylindrical grid needs m, n >= 3, got ({m}, {n})"));
    }
    Ok(cylinder_unchecked(m, n))
}

pub(crate) fn cylinder_unchecked(m: usize, n: usize) -> Graph {
    let mut g = Graph::new(m * n);
    for i in 1..=m {
        for j in 1..=n {
            g.add_edge(cyl_id(n, i, j), cyl_id(n, i, j % n + 1));
            if i < m {
                g.add_edge(cyl_id(n, i, j), cyl_id(n, i + 1, j));
            }
        }
    }
    let labels = (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    g.set_labels(Some(labels)).expect("label count matches");
    g
}

/// Ring count and cycle length read from the labels of a cylindrical grid.
pub fn cylinder_shape(g: &Graph) -> Result<(usize, usize)> {
    let labels = g
        .labels()
        .ok_or_else(|| Error::Precondition("graph carries no cylinder labels".into()))?;
    let m = labels.iter().map(|l| l.0).max().unwrap_or(0);
    let n = labels.iter().map(|l| l.1).max().unwrap_or(0);
    if m * n != g.n() || labels.iter().enumerate().any(|(v, &(i, j))| i == 0 || j == 0 || cyl_id(n, i, j) != v) {
        return pre("labels do not describe a cylindrical grid");
    }
    Ok((m, n))
}

/// The `2m` handle edges at position `i` of an `(m, 4m n)` cylinder, as column pairs on ring 1.
pub fn handle_columns(m: usize, i: usize) -> Vec<(usize, usize)> {
    let o = 4 * m * (i - 1);
    let mut out: Vec<(usize, usize)> = (1..=m).map(|j| (o + j, o + 3 * m - j + 1)).collect();
    out.extend((1..=m).map(|j| (o + m + j, o + 4 * m - j + 1)));
    out
}

/// The `2m` crosscap edges at position `i`, as column pairs on ring 1.
pub fn crosscap_columns(m: usize, i: usize) -> Vec<(usize, usize)> {
    let o = 4 * m * (i - 1);
    (1..=2 * m).map(|j| (o + j, o + 2 * m + j)).collect()
}

fn add_transaction(g: &Graph, i: usize, pairs: impl Fn(usize, usize) -> Vec<(usize, usize)>) -> Result<Graph> {
    let (m, len) = cylinder_shape(g)?;
    if len % (4 * m) != 0 {
        return pre(format!("cycle length {len} is not a multiple of 4m = {}", 4 * m));
    }
    let positions = len / (4 * m);
    if i == 0 || i > positions {
        return pre(format!("position {i} outside [1, {positions}]"));
    }
    let mut out = g.clone();
    for (a, b) in pairs(m, i) {
        let (u, v) = (cyl_id(len, 1, a), cyl_id(len, 1, b));
        // A ring-1 vertex of the bare cylinder has degree 3.
        if out.degree(u) > 3 || out.degree(v) > 3 {
            return pre(format!("position {i} already carries a handle or crosscap"));
        }
        out.add_edge(u, v);
    }
    Ok(out)
}

/// Adds a handle at position `i` of a labelled `(m, 4m n)`-cylindrical grid.
pub fn add_handle(g: &Graph, i: usize) -> Result<Graph> {
    add_transaction(g, i, handle_columns)
}

/// Adds a crosscap at position `i` of a labelled `(m, 4m n)`-cylindrical grid.
pub fn add_crosscap(g: &Graph, i: usize) -> Result<Graph> {
    add_transaction(g, i, crosscap_columns)
}

/// What sits at one position of a surface grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    Plain,
    Handle,
    Crosscap,
}

/// Mixed surface grid of order `k` with handles and crosscaps at the given positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedSurfaceGridSpec {
    pub k: usize,
    pub handles: BTreeSet<usize>,
    pub crosscaps: BTreeSet<usize>,
}

impl MixedSurfaceGridSpec {
    pub fn new(k: usize, handles: impl IntoIterator<Item = usize>, crosscaps: impl IntoIterator<Item = usize>) -> Result<Self> {
        let spec = MixedSurfaceGridSpec {
            k,
            handles: handles.into_iter().collect(),
            crosscaps: crosscaps.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds the spec from the blocks at positions `2, 3, ...`.
    pub fn from_word(k: usize, word: &[Block]) -> Result<Self> {
        let mut handles = BTreeSet::new();
        let mut crosscaps = BTreeSet::new();
        for (idx, b) in word.iter().enumerate() {
            match b {
                Block::Handle => {
                    handles.insert(idx + 2);
                }
                Block::Crosscap => {
                    crosscaps.insert(idx + 2);
                }
                Block::Plain => return pre("only handles and crosscaps may follow position 1"),
            }
        }
        MixedSurfaceGridSpec::new(k, handles, crosscaps)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return pre(format!("order must be at least 3, got {}", self.k));
        }
        if !self.handles.is_disjoint(&self.crosscaps) {
            return pre("handle and crosscap positions overlap");
        }
        let total = self.h() + self.c();
        let all: BTreeSet<usize> = self.handles.union(&self.crosscaps).copied().collect();
        if all != (2..=total + 1).collect() {
            return pre(format!("positions must partition [2, {}]", total + 1));
        }
        Ok(())
    }

    pub fn h(&self) -> usize {
        self.handles.len()
    }

    pub fn c(&self) -> usize {
        self.crosscaps.len()
    }

    pub fn euler_genus(&self) -> usize {
        2 * self.h() + self.c()
    }

    pub fn positions(&self) -> usize {
        self.h() + self.c() + 1
    }

    /// Block type at 1-based position `p`.
    pub fn block(&self, p: usize) -> Block {
        if self.handles.contains(&p) {
            Block::Handle
        } else if self.crosscaps.contains(&p) {
            Block::Crosscap
        } else {
            Block::Plain
        }
    }

    /// Blocks at positions `2..=h+c+1`.
    pub fn word(&self) -> Vec<Block> {
        (2..=self.positions()).map(|p| self.block(p)).collect()
    }

    /// Cycle length `4(h+c+1)k`.
    pub fn cycle_length(&self) -> usize {
        4 * self.positions() * self.k
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.positions() * self.k * self.k
    }

    pub fn edge_count(&self) -> usize {
        4 * self.positions() * self.k * (2 * self.k - 1) + 2 * self.k * (self.h() + self.c())
    }

    pub fn with_order(&self, k: usize) -> Self {
        MixedSurfaceGridSpec { k, ..self.clone() }
    }
}

/// The `(h, c)`-Dyck-grid of order `k`: handles first, then crosscaps.
/// `(h, c) = (-1, 2)` denotes the same grid as `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyckGridSpec {
    pub h: i64,
    pub c: usize,
    pub k: usize,
}

impl DyckGridSpec {
    pub fn new(h: i64, c: usize, k: usize) -> Result<Self> {
        let spec = DyckGridSpec { h, c, k };
        spec.to_mixed()?;
        Ok(spec)
    }

    /// Handle and crosscap counts after applying the `(-1, 2)` convention.
    pub fn effective(&self) -> Result<(usize, usize)> {
        match (self.h, self.c) {
            (-1, 2) => Ok((0, 0)),
            (h, c) if h >= 0 => Ok((h as usize, c)),
            (h, c) => pre(format!("no Dyck-grid with (h, c) = ({h}, {c})")),
        }
    }

    pub fn to_mixed(&self) -> Result<MixedSurfaceGridSpec> {
        let (h, c) = self.effective()?;
        MixedSurfaceGridSpec::new(self.k, 2..h + 2, h + 2..h + c + 2)
    }

    pub fn euler_genus(&self) -> Result<usize> {
        let (h, c) = self.effective()?;
        Ok(2 * h + c)
    }
}

/// Builds the mixed surface grid named by `spec`.
pub fn mixed_surface_grid(spec: &MixedSurfaceGridSpec) -> Result<Graph> {
    spec.validate()?;
    let k = spec.k;
    let len = spec.cycle_length();
    let mut g = cylinder_unchecked(k, len);
    for p in 2..=spec.positions() {
        let pairs = match spec.block(p) {
            Block::Handle => handle_columns(k, p),
            Block::Crosscap => crosscap_columns(k, p),
            Block::Plain => unreachable!("validated spec"),
        };
        for (a, b) in pairs {
            g.add_edge(cyl_id(len, 1, a), cyl_id(len, 1, b));
        }
    }
    Ok(g)
}

/// Builds the Dyck-grid named by `spec`.
pub fn dyck_grid(spec: &DyckGridSpec) -> Result<Graph> {
    mixed_surface_grid(&spec.to_mixed()?)
}

/// The cycles `C_{k-b+1}, ..., C_k`, each as its vertices in column order.
pub fn outermost_cycles(g: &Graph, b: usize) -> Result<Vec<Vec<usize>>> {
    let (k, n) = cylinder_shape(g)?;
    if b >= k {
        return pre(format!("b = {b} must be smaller than the order {k}"));
    }
    Ok((k - b + 1..=k)
        .map(|i| (1..=n).map(|j| cyl_id(n, i, j)).collect())
        .collect())
}
