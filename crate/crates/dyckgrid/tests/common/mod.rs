#![allow(dead_code)]

use dyckgrid::societies::Society;
use dyckgrid::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A society on `n` vertices with a random boundary of size `b`.
pub fn random_society<R: Rng>(rng: &mut R, n: usize, b: usize, p: f64) -> Society {
    let g = random_graph(rng, n, p);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.truncate(b);
    Society::new(g, order).expect("distinct boundary vertices")
}

fn edge_mask(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    let mut m = 0u64;
    for &(a, b) in edges {
        let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
        m |= 1 << (x * n + y);
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn connected(g: &Graph, part: &[usize]) -> bool {
    let mut seen = vec![part[0]];
    let mut i = 0;
    while i < seen.len() {
        for &w in g.neighbors(seen[i]) {
            if part.contains(&w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == part.len()
}

type Visit<'a> = &'a mut dyn FnMut(&[(usize, usize)]) -> bool;

/// Every way to delete some vertices and contract the rest into exactly `k`
/// connected parts, each reported as its quotient edge list.
fn quotients(g: &Graph, k: usize, mut visit: impl FnMut(&[(usize, usize)]) -> bool) -> bool {
    // label[v] = part index or usize::MAX for deleted; parts opened in order.
    fn go(
        g: &Graph,
        k: usize,
        v: usize,
        label: &mut Vec<usize>,
        opened: usize,
        visit: Visit<'_>,
    ) -> bool {
        let n = g.n();
        if opened + (n - v) < k {
            return false;
        }
        if v == n {
            if opened != k {
                return false;
            }
            let mut parts = vec![Vec::new(); k];
            for (x, &l) in label.iter().enumerate() {
                if l != usize::MAX {
                    parts[l].push(x);
                }
            }
            if !parts.iter().all(|p| connected(g, p)) {
                return false;
            }
            let mut edges = Vec::new();
            for (a, b) in g.edges() {
                let (la, lb) = (label[a], label[b]);
                if la != usize::MAX && lb != usize::MAX && la != lb {
                    edges.push((la.min(lb), la.max(lb)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            return visit(&edges);
        }
        for l in (0..opened.min(k)).chain(opened..(opened + 1).min(k)).chain([usize::MAX]) {
            label[v] = l;
            let next = if l == opened { opened + 1 } else { opened };
            if go(g, k, v + 1, label, next, visit) {
                return true;
            }
        }
        label[v] = usize::MAX;
        false
    }
    let mut label = vec![usize::MAX; g.n()];
    go(g, k, 0, &mut label, 0, &mut visit)
}

/// `h` is a minor of `g`: some quotient of a subgraph of `g` on `|V(h)|`
/// parts contains `h` as a spanning subgraph up to relabelling.
pub fn is_minor_by_quotients(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    if k == 0 {
        return true;
    }
    if k > g.n() {
        return false;
    }
    let h_edges: Vec<(usize, usize)> = h.edges().collect();
    let perms = permutations(k);
    let id: Vec<usize> = (0..k).collect();
    let h_masks: Vec<u64> = perms.iter().map(|p| edge_mask(k, &h_edges, p)).collect();
    quotients(g, k, |q| {
        let qm = edge_mask(k, q, &id);
        h_masks.iter().any(|&hm| hm & !qm == 0)
    })
}
