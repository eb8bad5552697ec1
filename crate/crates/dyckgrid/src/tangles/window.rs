//! Halving search for a subgraph whose treewidth lies in `(t, 2t]`.

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{pre, Result};
use crate::graph::Graph;
use crate::treewidth::{exact_treewidth_with, treewidth_at_most};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// Vertices of `G'` in `G`, sorted.
    pub vertices: Vec<usize>,
    pub graph: Graph,
    pub treewidth: usize,
    pub rounds: usize,
}

fn tw_at_most(g: &Graph, set: &[usize], k: usize, caps: &Caps) -> Result<bool> {
    Ok(treewidth_at_most(&g.induced(set), k, caps)?.is_some())
}

fn merged(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out
}

/// Maintains `A` and `F` with `tw(G[F]) < 2t` and `tw(G[A ∪ F]) > t`. Each
/// round takes the lower half `S` of `A`; if `tw(G[F ∪ S]) < 2t` the half moves
/// to `F`, otherwise `A` shrinks to `S`. Stops once `tw(G[A ∪ F]) <= 2t`.
pub fn treewidth_window_search(g: &Graph, t: usize, caps: &Caps) -> Result<Window> {
    if t == 0 {
        return pre("t must be positive");
    }
    let (tw, _) = exact_treewidth_with(g, caps)?;
    if tw <= t {
        return pre(format!("treewidth {tw} is at most t = {t}"));
    }
    let mut a: Vec<usize> = (0..g.n()).collect();
    let mut f: Vec<usize> = Vec::new();
    let mut rounds = 0;
    let mut current_tw = tw;
    while current_tw > 2 * t {
        rounds += 1;
        let half = a.len().div_ceil(2);
        let s: Vec<usize> = a[..half].to_vec();
        let fs = merged(&f, &s);
        if tw_at_most(g, &fs, 2 * t - 1, caps)? {
            f = fs;
            a.drain(..half);
        } else {
            a = s;
        }
        let union = merged(&a, &f);
        if tw_at_most(g, &union, 2 * t, caps)? {
            let graph = g.induced(&union);
            let (w, _) = exact_treewidth_with(&graph, caps)?;
            current_tw = w;
        }
    }
    let vertices = merged(&a, &f);
    let graph = g.induced(&vertices);
    let (treewidth, _) = exact_treewidth_with(&graph, caps)?;
    debug_assert!(t < treewidth && treewidth <= 2 * t);
    Ok(Window {
        vertices,
        graph,
        treewidth,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        let caps = Caps::default().with_overrides("treewidth=40").unwrap();
        let g = Graph::grid(3, 3);
        let w = treewidth_window_search(&g, 2, &caps).unwrap();
        assert_eq!((w.vertices.len(), w.rounds), (9, 0));
        let g = Graph::grid(5, 5);
        let w = treewidth_window_search(&g, 2, &caps).unwrap();
        assert!(w.treewidth > 2 && w.treewidth <= 4);
        assert!(w.rounds > 0);
        assert!(treewidth_window_search(&Graph::path(6), 1, &caps).is_err());
    }
}
