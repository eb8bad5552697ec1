//! Planarity testing by face-by-face path embedding on each biconnected block.

use crate::graph::Graph;

/// Whether `g` embeds in the sphere.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if g.m() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|edges| {
        if edges.len() < 9 {
            // Fewer than nine edges cannot hold a subdivided K5 or K3,3.
            return true;
        }
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (verts.binary_search(&u).unwrap(), verts.binary_search(&v).unwrap()))
            .collect();
        let block = Graph::from_edges(verts.len(), &local).expect("block edges are simple");
        biconnected_planar(&block)
    })
}

/// Edge sets of the biconnected components.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // Frames: (vertex, parent, next neighbour index).
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = frames.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut comp = Vec::new();
                        while let Some(e) = stack.pop() {
                            comp.push(e);
                            if e == (parent, v) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

fn find_cycle(g: &Graph) -> Vec<usize> {
    // Depth-first search from 0; the first back edge closes a cycle.
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((v, i)) = stack.pop() {
        if i < g.degree(v) {
            stack.push((v, i + 1));
            let w = g.neighbors(v)[i];
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        }
    }
    unreachable!("biconnected graph with at least three vertices has a cycle")
}

/// Demoucron-Malgrange-Pertuiset on a biconnected graph.
fn biconnected_planar(g: &Graph) -> bool {
    let n = g.n();
    let cycle = find_cycle(g);
    let mut in_h = vec![false; n];
    let mut h_edges = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[u] = true;
        h_edges.insert((u.min(v), u.max(v)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    loop {
        let frags = fragments(g, &in_h, &h_edges);
        if frags.is_empty() {
            return true;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.unwrap();
        let path = fragment_path(g, &frags[fi], &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let a = path[0];
        let b = *path.last().unwrap();
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % len;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % len;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
}

struct Fragment {
    /// Vertices outside `H`; empty for a single chord.
    inner: Vec<usize>,
    attachments: Vec<usize>,
}

fn fragments(g: &Graph, in_h: &[bool], h_edges: &std::collections::HashSet<(usize, usize)>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment {
                inner: Vec::new(),
                attachments: vec![u, v],
            });
        }
    }
    let outside: Vec<bool> = in_h.iter().map(|&b| !b).collect();
    for comp in g.components_within(&outside) {
        let mut att: Vec<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&w| in_h[w])
            .collect();
        att.sort_unstable();
        att.dedup();
        out.push(Fragment {
            inner: comp,
            attachments: att,
        });
    }
    out
}

fn fragment_path(g: &Graph, frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if frag.inner.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let mut allowed = vec![false; g.n()];
    for &v in &frag.inner {
        allowed[v] = true;
    }
    let starts: Vec<usize> = g.neighbors(a).iter().copied().filter(|&v| allowed[v]).collect();
    let targets: Vec<bool> = (0..g.n())
        .map(|v| allowed[v] && g.neighbors(v).iter().any(|&w| in_h[w] && w != a))
        .collect();
    let inner = g.bfs_path(&starts, &targets, &allowed).expect("fragment has two attachments");
    let last = *inner.last().unwrap();
    let b = g
        .neighbors(last)
        .iter()
        .copied()
        .find(|&w| in_h[w] && w != a)
        .unwrap();
    let mut path = vec![a];
    path.extend(inner);
    path.push(b);
    path
}
