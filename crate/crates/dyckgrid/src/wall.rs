//! Elementary walls and elementary Dyck-walls.

use serde::{Deserialize, Serialize};

use crate::error::{pre, Result};
use crate::graph::Graph;
use crate::grids::{crosscap_columns, cyl_id, handle_columns, DyckGridSpec};

/// An elementary wall with its rows, columns and perimeter.
///
/// Vertices keep the label `(i, j)` of the grid vertex they come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallStructure {
    pub k: usize,
    pub graph: Graph,
    /// Row `i` as a path, left to right.
    pub rows: Vec<Vec<usize>>,
    /// Column `j` (grid columns `2j - 1` and `2j`) as a path, top to bottom.
    pub columns: Vec<Vec<usize>>,
    /// The perimeter cycle in traversal order.
    pub perimeter: Vec<usize>,
    pub branch_vertices: Vec<usize>,
}

impl WallStructure {
    /// Checks the structural invariants: disjoint rows, disjoint columns,
    /// every row meets every column, branch vertices of degree three.
    pub fn check(&self) -> bool {
        let g = &self.graph;
        let disjoint = |paths: &[Vec<usize>]| {
            let mut seen = vec![false; g.n()];
            paths.iter().flatten().all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        let is_path = |p: &[usize]| p.windows(2).all(|w| g.has_edge(w[0], w[1]));
        disjoint(&self.rows)
            && disjoint(&self.columns)
            && self.rows.iter().all(|r| is_path(r))
            && self.columns.iter().all(|c| is_path(c))
            && self
                .rows
                .iter()
                .all(|r| self.columns.iter().all(|c| r.iter().any(|v| c.contains(v))))
            && self.branch_vertices.iter().all(|&v| g.degree(v) == 3)
            && g.max_degree() <= 3
    }
}

/// Orders the vertices of `set` along the path they induce, starting at the
/// endpoint with the smaller `key`.
fn path_order(g: &Graph, set: &[usize], key: impl Fn(usize) -> (usize, usize)) -> Option<Vec<usize>> {
    let inside = crate::graph::membership(g.n(), set);
    let deg = |v: usize| g.neighbors(v).iter().filter(|&&w| inside[w]).count();
    if set.len() == 1 {
        return Some(set.to_vec());
    }
    let start = set.iter().copied().filter(|&v| deg(v) == 1).min_by_key(|&v| key(v))?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).iter().copied().find(|&w| inside[w] && w != prev);
        match next {
            Some(w) if w != start && order.len() < set.len() => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    (order.len() == set.len()).then_some(order)
}

fn cycle_order(g: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    let inside = crate::graph::membership(g.n(), set);
    let nb = |v: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&w| inside[w]).collect() };
    if set.len() < 3 || set.iter().any(|&v| nb(v).len() != 2) {
        return None;
    }
    let start = *set.iter().min()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nb(start)[0];
    while cur != start {
        order.push(cur);
        let n = nb(cur);
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == set.len()).then_some(order)
}

/// The elementary `k`-wall, from the `k x 2k` grid.
pub fn elementary_wall(k: usize) -> Result<WallStructure> {
    if k < 3 {
        return pre(format!("wall order must be at least 3, got {k}"));
    }
    let cols = 2 * k;
    let mut g = Graph::grid(k, cols);
    let id = |i: usize, j: usize| (i - 1) * cols + (j - 1);
    for j in 1..=cols {
        for i in 1..k {
            if i % 2 == j % 2 {
                g.remove_edge(id(i, j), id(i + 1, j));
            }
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) != 1).collect();
    let g = g.induced(&keep);
    let label = |v: usize| g.label(v).expect("grid labels");
    let rows = (1..=k)
        .map(|i| {
            let mut r: Vec<usize> = (0..g.n()).filter(|&v| label(v).0 == i).collect();
            r.sort_by_key(|&v| label(v).1);
            r
        })
        .collect();
    let columns = (1..=k)
        .map(|j| {
            let set: Vec<usize> = (0..g.n())
                .filter(|&v| label(v).1 == 2 * j - 1 || label(v).1 == 2 * j)
                .collect();
            path_order(&g, &set, label).expect("wall column is a path")
        })
        .collect();
    let per: Vec<usize> = (0..g.n())
        .filter(|&v| {
            let (i, j) = label(v);
            [1, 2, cols - 1, cols].contains(&j) || i == 1 || i == k
        })
        .collect();
    let perimeter = cycle_order(&g, &per).expect("wall perimeter is a cycle");
    let branch_vertices = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    Ok(WallStructure {
        k,
        graph: g,
        rows,
        columns,
        perimeter,
        branch_vertices,
    })
}

/// Elementary `(h, c; t)`-Dyck-wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyckWallSpec {
    pub h: usize,
    pub c: usize,
    pub t: usize,
}

impl DyckWallSpec {
    pub fn new(h: usize, c: usize, t: usize) -> Result<Self> {
        if c > 2 {
            return pre(format!("Dyck-walls take c in [0, 2], got {c}"));
        }
        if t < 3 {
            return pre(format!("Dyck-wall order must be at least 3, got {t}"));
        }
        Ok(DyckWallSpec { h, c, t })
    }

    /// Cycle length of the underlying grid of order `2t`.
    pub fn cycle_length(&self) -> usize {
        8 * self.t * (self.h + self.c + 1)
    }

    pub fn euler_genus(&self) -> usize {
        2 * self.h + self.c
    }
}

/// An elementary Dyck-wall together with its cycles and annulus-wall columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckWall {
    pub spec: DyckWallSpec,
    pub graph: Graph,
    /// `C_1, ..., C_t` in column order.
    pub cycles: Vec<Vec<usize>>,
    /// Column `p` of the annulus wall: grid columns `2p - 1` and `2p` on every ring.
    pub columns: Vec<Vec<usize>>,
}

/// Builds the elementary Dyck-wall from `D^{(h,c)}_{2t}`.
///
/// Rings `t + 1, ..., 2t` are dropped and the radial edge `v^i_j v^{i+1}_j` is
/// removed when `i` and `j` have equal parity. Of the crosscap edges only those
/// between odd columns survive. Every handle edge joins an odd and an even
/// column, so handles keep the edges with odd index in the defining formula and
/// lose the radial edge at their even endpoint instead.
pub fn dyck_wall(spec: &DyckWallSpec) -> Result<Graph> {
    Ok(dyck_wall_structure(spec)?.graph)
}

pub fn dyck_wall_structure(spec: &DyckWallSpec) -> Result<DyckWall> {
    let spec = DyckWallSpec::new(spec.h, spec.c, spec.t)?;
    let grid = DyckGridSpec::new(spec.h as i64, spec.c, 2 * spec.t)?.to_mixed()?;
    let t = spec.t;
    let m = 2 * t;
    let n = grid.cycle_length();
    let mut g = Graph::new(t * n);
    for i in 1..=t {
        for j in 1..=n {
            g.add_edge(cyl_id(n, i, j), cyl_id(n, i, j % n + 1));
            if i < t && i % 2 != j % 2 {
                g.add_edge(cyl_id(n, i, j), cyl_id(n, i + 1, j));
            }
        }
    }
    for p in 2..=grid.positions() {
        match grid.block(p) {
            crate::grids::Block::Crosscap => {
                for (a, b) in crosscap_columns(m, p) {
                    if a % 2 == 1 {
                        g.add_edge(cyl_id(n, 1, a), cyl_id(n, 1, b));
                    }
                }
            }
            crate::grids::Block::Handle => {
                for (idx, (a, b)) in handle_columns(m, p).into_iter().enumerate() {
                    if (idx % m) % 2 == 0 {
                        g.add_edge(cyl_id(n, 1, a), cyl_id(n, 1, b));
                        let even = if a % 2 == 0 { a } else { b };
                        g.remove_edge(cyl_id(n, 1, even), cyl_id(n, 2, even));
                    }
                }
            }
            crate::grids::Block::Plain => {}
        }
    }
    let labels = (1..=t).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    g.set_labels(Some(labels))?;
    let cycles = (1..=t).map(|i| (1..=n).map(|j| cyl_id(n, i, j)).collect()).collect();
    let columns = (1..=n / 2)
        .map(|p| {
            let mut col: Vec<usize> = (1..=t)
                .flat_map(|i| [cyl_id(n, i, 2 * p - 1), cyl_id(n, i, 2 * p)])
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(DyckWall {
        spec,
        graph: g,
        cycles,
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_three() {
        let w = elementary_wall(3).unwrap();
        assert_eq!(w.graph.n(), 16);
        assert_eq!(w.graph.m(), 19);
        assert!(w.check());
        assert_eq!(w.rows.len(), 3);
        assert_eq!(w.columns.len(), 3);
        assert!(elementary_wall(2).is_err());
    }

    #[test]
    fn walls_are_subcubic() {
        for k in 3..=8 {
            let w = elementary_wall(k).unwrap();
            assert_eq!(w.graph.max_degree(), 3);
            assert!(w.check(), "k = {k}");
            assert!(w.graph.is_connected());
        }
    }

    #[test]
    fn dyck_walls() {
        for h in 0..=3 {
            for c in 0..=2usize.min(3 - h) {
                for t in 3..=6 {
                    let spec = DyckWallSpec::new(h, c, t).unwrap();
                    let g = dyck_wall(&spec).unwrap();
                    assert!(g.max_degree() <= 3, "{spec:?}");
                    assert!(g.is_connected(), "{spec:?}");
                }
            }
        }
        assert!(DyckWallSpec::new(0, 3, 3).is_err());
        let d = dyck_wall_structure(&DyckWallSpec::new(0, 0, 3).unwrap()).unwrap();
        assert!(d.cycles[0].windows(2).all(|w| d.graph.has_edge(w[0], w[1])));
        assert_eq!(d.columns.len(), 12);
    }
}
