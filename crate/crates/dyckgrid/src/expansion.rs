//! Expansions: vertex splits followed by subdivision, certified by replay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalized, Graph};
use crate::minors::MinorModel;

/// Splits `vertex` of the current graph into the edge `x1 x2`.
///
/// `x1` keeps the id `vertex` and the neighbours `x1_side`; the new vertex `x2`
/// gets the next free id and the neighbours `x2_side`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub vertex: usize,
    pub x1_side: Vec<usize>,
    pub x2_side: Vec<usize>,
}

/// Where a vertex of the expanded graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// A vertex of the split graph `G'`.
    Vertex(usize),
    /// A subdivision vertex on the edge `uv` of `G'`.
    Edge(usize, usize),
}

/// Certificate that `(result, branch_vertices)` is an expansion of `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub base: Graph,
    pub result: Graph,
    pub branch_vertices: Vec<usize>,
    pub splits: Vec<SplitRecord>,
    /// `subdivision_map[x]` is the origin of vertex `x` of `result`.
    pub subdivision_map: Vec<Origin>,
}

/// Replays the split records on `base`. Also returns, for each vertex of the
/// split graph, the base vertex it descends from.
pub fn replay_splits(base: &Graph, splits: &[SplitRecord]) -> Result<(Graph, Vec<usize>)> {
    let mut g = base.clone();
    g.set_labels(None)?;
    let mut origin: Vec<usize> = (0..base.n()).collect();
    for (idx, s) in splits.iter().enumerate() {
        let bad = |why: &str| Err(Error::Malformed(format!("split {idx}: {why}")));
        if s.vertex >= g.n() {
            return bad("vertex out of range");
        }
        let a = normalized(&s.x1_side);
        let b = normalized(&s.x2_side);
        if a.len() != s.x1_side.len() || b.len() != s.x2_side.len() {
            return bad("repeated neighbour");
        }
        if a.iter().any(|v| b.binary_search(v).is_ok()) {
            return bad("neighbour sets overlap");
        }
        let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        union.sort_unstable();
        if union != g.neighbors(s.vertex) {
            return bad("neighbour sets do not partition the neighbourhood");
        }
        let x2 = g.add_vertex();
        origin.push(origin[s.vertex]);
        for &w in &b {
            g.remove_edge(s.vertex, w);
            g.add_edge(x2, w);
        }
        g.add_edge(s.vertex, x2);
    }
    Ok((g, origin))
}

impl ExpansionCertificate {
    /// The certificate of `g` as its own expansion.
    pub fn trivial(g: &Graph) -> Self {
        ExpansionCertificate {
            base: g.clone(),
            result: g.clone(),
            branch_vertices: (0..g.n()).collect(),
            splits: Vec::new(),
            subdivision_map: (0..g.n()).map(Origin::Vertex).collect(),
        }
    }

    /// Replays the certificate; `Err` names the first inconsistency.
    pub fn check(&self) -> Result<()> {
        let (split, _) = replay_splits(&self.base, &self.splits)?;
        let h = &self.result;
        let bad = |why: String| Err(Error::Malformed(why));
        if self.subdivision_map.len() != h.n() {
            return bad(format!("{} origins for {} vertices", self.subdivision_map.len(), h.n()));
        }
        let mut image = vec![usize::MAX; split.n()];
        let mut subdivided: std::collections::HashMap<(usize, usize), Vec<usize>> = Default::default();
        for (x, o) in self.subdivision_map.iter().enumerate() {
            match *o {
                Origin::Vertex(v) => {
                    if v >= split.n() || image[v] != usize::MAX {
                        return bad(format!("vertex {x} has a missing or repeated origin"));
                    }
                    image[v] = x;
                }
                Origin::Edge(u, v) => {
                    let key = (u.min(v), u.max(v));
                    if u >= split.n() || v >= split.n() || !split.has_edge(u, v) {
                        return bad(format!("vertex {x} subdivides a non-edge"));
                    }
                    subdivided.entry(key).or_default().push(x);
                }
            }
        }
        if image.contains(&usize::MAX) {
            return bad("some split-graph vertex has no image".into());
        }
        let mut t: Vec<usize> = image.clone();
        t.sort_unstable();
        if normalized(&self.branch_vertices) != t {
            return bad("branch vertices differ from the images of the split graph".into());
        }
        let mut expected_edges = 0;
        for (u, v) in split.edges() {
            let inner = subdivided.get(&(u, v)).cloned().unwrap_or_default();
            expected_edges += inner.len() + 1;
            let mut allowed = vec![false; h.n()];
            for &x in &inner {
                allowed[x] = true;
            }
            // Walk from the image of u through the subdivision vertices.
            let mut prev = usize::MAX;
            let mut cur = image[u];
            for step in 0..inner.len() {
                let next: Vec<usize> = h
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .filter(|&y| allowed[y] && y != prev)
                    .collect();
                if next.len() != 1 || (step > 0 && h.degree(cur) != 2) {
                    return bad(format!("subdivision of edge ({u},{v}) is not a path"));
                }
                allowed[next[0]] = false;
                prev = cur;
                cur = next[0];
            }
            if (!inner.is_empty() && h.degree(cur) != 2) || !h.has_edge(cur, image[v]) {
                return bad(format!("subdivision of edge ({u},{v}) does not reach its end"));
            }
        }
        if expected_edges != h.m() {
            return bad(format!("expanded graph has {} edges, expected {expected_edges}", h.m()));
        }
        if let Some(x) = (0..h.n()).find(|&x| h.degree(x) >= 3 && t.binary_search(&x).is_err()) {
            return bad(format!("vertex {x} has degree at least 3 but is not a branch vertex"));
        }
        Ok(())
    }
}

/// Whether the certificate replays to its claimed result.
pub fn verify_expansion(cert: &ExpansionCertificate) -> bool {
    cert.check().is_ok()
}

/// The model of `base` in `result` obtained by contracting split edges and
/// subdivision paths. Each subdivision vertex joins the branch set of the
/// lower-id base vertex at the ends of its edge.
pub fn expansion_to_minor_model(cert: &ExpansionCertificate) -> Result<MinorModel> {
    cert.check()
        .map_err(|e| Error::Precondition(format!("invalid expansion certificate: {e}")))?;
    let (_, origin) = replay_splits(&cert.base, &cert.splits)?;
    let mut sets = vec![Vec::new(); cert.base.n()];
    for (x, o) in cert.subdivision_map.iter().enumerate() {
        let owner = match *o {
            Origin::Vertex(v) => origin[v],
            Origin::Edge(u, v) => origin[u].min(origin[v]),
        };
        sets[owner].push(x);
    }
    let model = MinorModel::new(cert.base.clone(), cert.result.clone(), sets);
    model
        .verify()
        .map_err(|v| Error::Internal(format!("expansion model: {v}")))?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_certificate() {
        let g = Graph::complete(4);
        let cert = ExpansionCertificate::trivial(&g);
        assert!(verify_expansion(&cert));
        assert_eq!(expansion_to_minor_model(&cert).unwrap(), MinorModel::identity(&g));
        let mut wrong = cert.clone();
        wrong.result = Graph::cycle(4);
        assert!(!verify_expansion(&wrong));
    }

    #[test]
    fn split_k4_vertex() {
        let g = Graph::complete(4);
        let split = SplitRecord {
            vertex: 0,
            x1_side: vec![1],
            x2_side: vec![2, 3],
        };
        let (result, _) = replay_splits(&g, std::slice::from_ref(&split)).unwrap();
        let cert = ExpansionCertificate {
            base: g.clone(),
            result: result.clone(),
            branch_vertices: (0..5).collect(),
            splits: vec![split],
            subdivision_map: (0..5).map(Origin::Vertex).collect(),
        };
        assert!(verify_expansion(&cert));
        let m = expansion_to_minor_model(&cert).unwrap();
        assert_eq!(m.branch_sets[0], vec![0, 4]);
        let overlapping = SplitRecord {
            vertex: 0,
            x1_side: vec![1, 2],
            x2_side: vec![2, 3],
        };
        assert!(replay_splits(&g, &[overlapping]).is_err());
    }

    #[test]
    fn single_subdivision() {
        let g = Graph::path(2);
        let h = Graph::path(3);
        let cert = ExpansionCertificate {
            base: g,
            result: h,
            branch_vertices: vec![0, 2],
            splits: vec![],
            subdivision_map: vec![Origin::Vertex(0), Origin::Edge(0, 1), Origin::Vertex(1)],
        };
        assert!(verify_expansion(&cert));
        let m = expansion_to_minor_model(&cert).unwrap();
        assert_eq!(m.branch_sets, vec![vec![0, 1], vec![2]]);
    }
}
