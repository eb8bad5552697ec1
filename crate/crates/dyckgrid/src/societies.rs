//! Societies: a graph with a cyclic order on some of its vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{cap, pre, Error, Result};
use crate::flow::{min_separation, min_vertex_cut, Side};
use crate::graph::{membership, Graph, Linkage};
use crate::planarity::is_planar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSociety")]
pub struct Society {
    pub graph: Graph,
    /// Boundary vertices in cyclic order.
    pub omega: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSociety {
    graph: Graph,
    omega: Vec<usize>,
}

impl TryFrom<RawSociety> for Society {
    type Error = Error;
    fn try_from(r: RawSociety) -> Result<Self> {
        Society::new(r.graph, r.omega).map_err(|e| Error::Malformed(e.to_string()))
    }
}

/// The segment `start Ω end`: from `start` forwards to `end`, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Society {
    pub fn new(graph: Graph, omega: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; graph.n()];
        for &v in &omega {
            if v >= graph.n() {
                return pre(format!("omega vertex {v} is not in the graph"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return pre(format!("omega repeats vertex {v}"));
            }
        }
        Ok(Society { graph, omega })
    }

    fn position(&self, v: usize) -> Result<usize> {
        self.omega
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| Error::Precondition(format!("{v} is not on omega")))
    }

    /// Vertices of `s Ω t` in order. If `t` immediately precedes `s` this is
    /// all of `Ω`.
    pub fn segment(&self, seg: Segment) -> Result<Vec<usize>> {
        let m = self.omega.len();
        let i = self.position(seg.start)?;
        let j = self.position(seg.end)?;
        let len = (j + m - i) % m + 1;
        Ok((0..len).map(|d| self.omega[(i + d) % m]).collect())
    }

    /// The segment made of the vertices not in `seg`, if any.
    pub fn complement(&self, seg: Segment) -> Result<Option<Segment>> {
        let m = self.omega.len();
        let i = self.position(seg.start)?;
        let j = self.position(seg.end)?;
        if (j + 1) % m == i {
            return Ok(None);
        }
        Ok(Some(Segment {
            start: self.omega[(j + 1) % m],
            end: self.omega[(i + m - 1) % m],
        }))
    }

    /// Whether `set` is a segment: no `s1, t1, s2, t2` alternate between the
    /// set and its complement around `Ω`.
    pub fn is_segment(&self, set: &[usize]) -> bool {
        let inside = membership(self.graph.n(), set);
        if set.iter().any(|&v| !self.omega.contains(&v)) {
            return false;
        }
        let changes = (0..self.omega.len())
            .filter(|&i| {
                let next = self.omega[(i + 1) % self.omega.len()];
                inside[self.omega[i]] != inside[next]
            })
            .count();
        changes <= 2
    }

    /// Whether `(p1, p2)` is a cross: disjoint paths with ends on `Ω`, interiors
    /// off `Ω`, and ends `s1, s2, t1, t2` in this cyclic order.
    pub fn is_cross(&self, p1: &[usize], p2: &[usize]) -> bool {
        let link = Linkage {
            paths: vec![p1.to_vec(), p2.to_vec()],
        };
        if !link.is_valid(&self.graph) || p1.len() < 2 || p2.len() < 2 {
            return false;
        }
        let on = membership(self.graph.n(), &self.omega);
        let clean = |p: &[usize]| on[p[0]] && on[p[p.len() - 1]] && p[1..p.len() - 1].iter().all(|&v| !on[v]);
        if !clean(p1) || !clean(p2) {
            return false;
        }
        let pos = |v: usize| self.omega.iter().position(|&w| w == v).expect("on omega");
        interleaved(
            (pos(p1[0]), pos(p1[p1.len() - 1])),
            (pos(p2[0]), pos(p2[p2.len() - 1])),
        )
    }
}

/// Whether the chords `a` and `b` between distinct cyclic positions cross.
fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| lo < x && x < hi;
    inside(b.0) != inside(b.1) && b.0 != lo && b.0 != hi && b.1 != lo && b.1 != hi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossWitness {
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

pub fn has_cross(soc: &Society) -> Result<Option<CrossWitness>> {
    has_cross_with(soc, &Caps::default())
}

/// Exhaustive search for a cross. For each interleaved quadruple, chordless
/// paths between the first pair are enumerated and the second pair is joined
/// by breadth-first search around them.
pub fn has_cross_with(soc: &Society, caps: &Caps) -> Result<Option<CrossWitness>> {
    let g = &soc.graph;
    cap("cross search vertices", caps.cross_vertices, g.n())?;
    let m = soc.omega.len();
    if m < 4 {
        return Ok(None);
    }
    let on = membership(g.n(), &soc.omega);
    let mut budget = caps.exhaustive_candidates;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let (s1, t1, s2, t2) = (soc.omega[a], soc.omega[c], soc.omega[b], soc.omega[d]);
                    let mut blocked = on.clone();
                    blocked[s1] = false;
                    blocked[t1] = false;
                    let mut found = None;
                    let mut path = vec![s1];
                    chordless_paths(g, &mut path, t1, &blocked, &mut budget, &mut |p| {
                        let mut allowed: Vec<bool> = on.iter().map(|&x| !x).collect();
                        for &v in p {
                            allowed[v] = false;
                        }
                        allowed[s2] = true;
                        allowed[t2] = true;
                        let mut target = vec![false; g.n()];
                        target[t2] = true;
                        if let Some(q) = g.bfs_path(&[s2], &target, &allowed) {
                            found = Some(CrossWitness { p1: p.to_vec(), p2: q });
                            return true;
                        }
                        false
                    })?;
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Calls `visit` on every chordless path from `path[0]` to `target` avoiding
/// `blocked`, stopping early when it returns true.
fn chordless_paths(
    g: &Graph,
    path: &mut Vec<usize>,
    target: usize,
    blocked: &[bool],
    budget: &mut usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::CapExceeded {
            what: "cross search paths",
            limit: 0,
            got: 1,
        });
    }
    *budget -= 1;
    let last = *path.last().expect("non-empty");
    if last == target {
        return Ok(visit(path));
    }
    for &w in g.neighbors(last) {
        if blocked[w] || path.contains(&w) {
            continue;
        }
        let k = path.len();
        if path[..k - 1].iter().any(|&u| g.has_edge(u, w)) {
            continue;
        }
        path.push(w);
        let stop = chordless_paths(g, path, target, blocked, budget, visit)?;
        path.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Removes every component `C` of `G - S` with `|S| <= 3`, `N(C) ⊆ S` and no
/// vertex of `Ω`, making `N(C)` a clique. Returns the reduced graph on the
/// surviving vertices (in increasing order) and the renumbered `Ω`.
fn reduce(soc: &Society) -> (Graph, Vec<usize>) {
    let mut g = soc.graph.clone();
    let n = g.n();
    let on = membership(n, &soc.omega);
    let mut alive = vec![true; n];
    'outer: loop {
        let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let mut seps: Vec<Vec<usize>> = vec![vec![]];
        for (i, &a) in live.iter().enumerate() {
            seps.push(vec![a]);
            for (j, &b) in live.iter().enumerate().skip(i + 1) {
                seps.push(vec![a, b]);
                for &c in &live[j + 1..] {
                    seps.push(vec![a, b, c]);
                }
            }
        }
        for s in seps {
            let mut allowed = alive.clone();
            for &v in &s {
                allowed[v] = false;
            }
            for comp in g.components_within(&allowed) {
                if comp.iter().any(|&v| on[v]) {
                    continue;
                }
                let mut nbrs: Vec<usize> = comp
                    .iter()
                    .flat_map(|&v| g.neighbors(v).to_vec())
                    .filter(|&w| !comp.contains(&w))
                    .collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                for &v in &comp {
                    for w in g.neighbors(v).to_vec() {
                        g.remove_edge(v, w);
                    }
                    alive[v] = false;
                }
                for (i, &x) in nbrs.iter().enumerate() {
                    for &y in &nbrs[i + 1..] {
                        g.add_edge(x, y);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let h = g.induced(&keep);
    let omega = soc
        .omega
        .iter()
        .map(|v| keep.binary_search(v).expect("omega survives"))
        .collect();
    (h, omega)
}

/// Whether the society can be drawn in a disk with `Ω` on the boundary in
/// order, after cutting off every part that attaches through at most three
/// vertices away from `Ω`. Decided by planarity of the reduced graph plus a
/// cycle through `Ω` plus a hub adjacent to that cycle.
pub fn disk_rendition_exists(soc: &Society) -> bool {
    let (mut h, omega) = reduce(soc);
    h.set_labels(None).expect("clearing labels");
    let m = omega.len();
    if m >= 3 {
        for i in 0..m {
            h.add_edge(omega[i], omega[(i + 1) % m]);
        }
    }
    let hub = h.add_vertex();
    for &v in &omega {
        h.add_edge(hub, v);
    }
    is_planar(&h)
}

/// A maximum transaction between two disjoint segments.
pub fn max_transaction(soc: &Society, a: Segment, b: Segment) -> Result<Linkage> {
    let sa = soc.segment(a)?;
    let sb = soc.segment(b)?;
    if sa.iter().any(|v| sb.contains(v)) {
        return pre("segments overlap");
    }
    Ok(min_vertex_cut(&soc.graph, &sa, &sb).1)
}

/// Largest transaction over all splits of `Ω` into two complementary
/// segments, with the split attaining it. Enlarging a segment never lowers the
/// maximum linkage, so these splits attain the depth.
fn deepest_split(soc: &Society) -> Option<(usize, Segment, Segment)> {
    let m = soc.omega.len();
    let mut best: Option<(usize, Segment, Segment)> = None;
    for i in 0..m {
        for len in 1..m {
            let a = Segment {
                start: soc.omega[i],
                end: soc.omega[(i + len - 1) % m],
            };
            let b = Segment {
                start: soc.omega[(i + len) % m],
                end: soc.omega[(i + m - 1) % m],
            };
            let order = max_transaction(soc, a, b).expect("complementary segments").order();
            if best.is_none_or(|(o, _, _)| order > o) {
                best = Some((order, a, b));
            }
        }
    }
    best
}

/// Maximum order of a transaction.
pub fn depth(soc: &Society) -> usize {
    deepest_split(soc).map_or(0, |(o, _, _)| o)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransactionClass {
    Cross,
    Crosscap(usize),
    Handle(usize),
    Unclassified,
}

impl fmt::Display for TransactionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransactionClass::Cross => write!(f, "cross"),
            TransactionClass::Crosscap(n) => write!(f, "crosscap({n})"),
            TransactionClass::Handle(n) => write!(f, "handle({n})"),
            TransactionClass::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// Matches the endpoints of a linkage against the crosscap and handle
/// patterns, over every rotation and both orientations of `Ω`. Two paths
/// whose ends alternate match both patterns and are reported as a cross.
pub fn classify_transaction(t: &Linkage, omega: &[usize]) -> Result<TransactionClass> {
    let pos = |v: usize| {
        omega
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| Error::Precondition(format!("endpoint {v} is not on omega")))
    };
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for (i, p) in t.paths.iter().enumerate() {
        if p.len() < 2 {
            return pre(format!("path {i} has a single vertex"));
        }
        ends.push((pos(p[0])?, i));
        ends.push((pos(p[p.len() - 1])?, i));
    }
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0].0 == w[1].0) || ends.is_empty() {
        return Ok(TransactionClass::Unclassified);
    }
    // Path index at each endpoint, in cyclic order.
    let seq: Vec<usize> = ends.iter().map(|&(_, i)| i).collect();
    let len = seq.len();
    let orientations = [seq.clone(), seq.iter().rev().copied().collect()];
    let matches = |pair: &dyn Fn(usize) -> usize| {
        orientations
            .iter()
            .any(|s| (0..len).any(|r| (0..len).all(|p| s[(r + p) % len] == s[(r + pair(p)) % len])))
    };
    let paths = t.paths.len();
    let crosscap = matches(&|p| (p + paths) % len);
    let handle = paths.is_multiple_of(2) && {
        let n = paths / 2;
        matches(&|p| match p {
            p if p < n => 3 * n - 1 - p,
            p if p < 2 * n => 5 * n - 1 - p,
            p if p < 3 * n => 3 * n - 1 - p,
            p => 5 * n - 1 - p,
        })
    };
    Ok(match (crosscap, handle) {
        (true, true) => TransactionClass::Cross,
        (true, false) => TransactionClass::Crosscap(paths),
        (false, true) => TransactionClass::Handle(paths / 2),
        (false, false) => TransactionClass::Unclassified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearDecomposition {
    pub bags: Vec<Vec<usize>>,
    /// One vertex of `Ω` per bag, in `Ω` order.
    pub anchors: Vec<usize>,
}

impl LinearDecomposition {
    pub fn adhesion(&self) -> usize {
        self.bags
            .windows(2)
            .map(|w| w[0].iter().filter(|v| w[1].binary_search(v).is_ok()).count())
            .max()
            .unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearOutcome {
    Decomposition(LinearDecomposition),
    /// A transaction of order above the requested adhesion.
    Transaction(Linkage),
}

/// Either a transaction of order `> theta` or a linear decomposition of
/// adhesion at most `theta`. The bags come from the minimum separations
/// closest to each prefix of `Ω`; these are nested, and bag `i` is
/// `A_i ∩ B_{i-1}`.
pub fn linear_decomposition(soc: &Society, theta: usize) -> Result<LinearOutcome> {
    if soc.omega.is_empty() {
        return pre("omega is empty");
    }
    if let Some((order, a, b)) = deepest_split(soc) {
        if order > theta {
            return max_transaction(soc, a, b).map(LinearOutcome::Transaction);
        }
    }
    let g = &soc.graph;
    let n = g.n();
    let m = soc.omega.len();
    let mut a_sides: Vec<Vec<bool>> = vec![vec![false; n]];
    let mut b_sides: Vec<Vec<bool>> = vec![vec![true; n]];
    for i in 1..m {
        let sep = min_separation(g, &soc.omega[..i], &soc.omega[i..], Side::NearX);
        a_sides.push(membership(n, &sep.a));
        b_sides.push(membership(n, &sep.b));
    }
    a_sides.push(vec![true; n]);
    let bags: Vec<Vec<usize>> = (1..=m)
        .map(|i| (0..n).filter(|&v| a_sides[i][v] && b_sides[i - 1][v]).collect())
        .collect();
    let ld = LinearDecomposition {
        bags,
        anchors: soc.omega.clone(),
    };
    let report = validate_linear_decomposition(soc, &ld);
    if !report.valid || ld.adhesion() > theta {
        return Err(Error::Internal(format!(
            "prefix separations produced an invalid decomposition: {:?}",
            report.problems
        )));
    }
    Ok(LinearOutcome::Decomposition(ld))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearReport {
    pub valid: bool,
    pub adhesion: usize,
    pub width: usize,
    pub problems: Vec<String>,
}

pub fn validate_linear_decomposition(soc: &Society, ld: &LinearDecomposition) -> LinearReport {
    let g = &soc.graph;
    let n = g.n();
    let mut problems = Vec::new();
    if ld.bags.len() != ld.anchors.len() || ld.bags.is_empty() {
        problems.push(format!("{} bags but {} anchors", ld.bags.len(), ld.anchors.len()));
    }
    let positions: Vec<Option<usize>> = ld
        .anchors
        .iter()
        .map(|&v| soc.omega.iter().position(|&w| w == v))
        .collect();
    if positions.iter().any(Option::is_none) {
        problems.push("an anchor is not on omega".into());
    } else {
        let p: Vec<usize> = positions.iter().map(|p| p.expect("checked")).collect();
        let descents = (0..p.len()).filter(|&i| p[i] >= p[(i + 1) % p.len()]).count();
        if p.len() > 1 && descents != 1 {
            problems.push("anchors are not distinct and in omega order".into());
        }
    }
    let mut bags: Vec<Vec<bool>> = Vec::new();
    for (i, bag) in ld.bags.iter().enumerate() {
        if bag.iter().any(|&v| v >= n) {
            problems.push(format!("bag {i} holds a vertex outside the graph"));
            bags.push(vec![false; n]);
        } else {
            bags.push(membership(n, bag));
        }
        if let Some(&a) = ld.anchors.get(i) {
            if a >= n || !bags[i][a] {
                problems.push(format!("anchor {a} is not in bag {i}"));
            }
        }
    }
    for v in 0..n {
        let idx: Vec<usize> = (0..bags.len()).filter(|&i| bags[i][v]).collect();
        match (idx.first(), idx.last()) {
            (None, _) => problems.push(format!("vertex {v} is in no bag")),
            (Some(&lo), Some(&hi)) if hi - lo + 1 != idx.len() => {
                problems.push(format!("bags of vertex {v} do not form an interval"))
            }
            _ => {}
        }
    }
    for (u, v) in g.edges() {
        if !bags.iter().any(|b| b[u] && b[v]) {
            problems.push(format!("edge {u}-{v} is in no bag"));
        }
    }
    let normal = ld.bags.iter().all(|b| b.windows(2).all(|w| w[0] < w[1]));
    if !normal {
        problems.push("bags must be sorted without repeats".into());
    }
    LinearReport {
        valid: problems.is_empty(),
        adhesion: if normal { ld.adhesion() } else { 0 },
        width: ld.width(),
        problems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_society(n: usize) -> Society {
        Society::new(Graph::cycle(n), (0..n).collect()).unwrap()
    }

    #[test]
    fn segments() {
        let s = cycle_society(6);
        let seg = Segment { start: 4, end: 1 };
        assert_eq!(s.segment(seg).unwrap(), vec![4, 5, 0, 1]);
        assert_eq!(s.complement(seg).unwrap(), Some(Segment { start: 2, end: 3 }));
        let all = Segment { start: 3, end: 2 };
        assert_eq!(s.segment(all).unwrap().len(), 6);
        assert_eq!(s.complement(all).unwrap(), None);
        assert!(s.is_segment(&[5, 0, 1]));
        assert!(!s.is_segment(&[0, 2]));
    }

    #[test]
    fn crosses() {
        let k4 = Society::new(Graph::complete(4), vec![0, 1, 2, 3]).unwrap();
        let w = has_cross(&k4).unwrap().unwrap();
        assert!(k4.is_cross(&w.p1, &w.p2));
        assert!(!disk_rendition_exists(&k4));
        let c4 = cycle_society(4);
        assert!(has_cross(&c4).unwrap().is_none());
        assert!(disk_rendition_exists(&c4));
        let tri = Society::new(Graph::complete(5), vec![0, 1, 2]).unwrap();
        assert!(has_cross(&tri).unwrap().is_none());
        assert!(disk_rendition_exists(&tri));
        assert!(disk_rendition_exists(&Society::new(Graph::complete(6), vec![]).unwrap()));
    }

    #[test]
    fn transactions() {
        let s = cycle_society(6);
        let t = max_transaction(&s, Segment { start: 0, end: 2 }, Segment { start: 3, end: 5 }).unwrap();
        assert_eq!(t.order(), 2);
        assert!(max_transaction(&s, Segment { start: 0, end: 3 }, Segment { start: 3, end: 5 }).is_err());
        assert_eq!(depth(&s), 2);
        let p = Society::new(Graph::path(5), vec![0, 4]).unwrap();
        assert_eq!(depth(&p), 1);
        assert_eq!(depth(&Society::new(Graph::new(4), vec![0, 1, 2]).unwrap()), 0);
        let split = Society::new(Graph::path(2).disjoint_union(&Graph::path(2)), vec![0, 1, 2, 3]).unwrap();
        let t = max_transaction(&split, Segment { start: 0, end: 1 }, Segment { start: 2, end: 3 }).unwrap();
        assert_eq!(t.order(), 0);
    }

    #[test]
    fn classification() {
        let omega: Vec<usize> = (0..8).collect();
        let link = |pairs: &[(usize, usize)]| Linkage {
            paths: pairs.iter().map(|&(a, b)| vec![a, b]).collect(),
        };
        assert_eq!(classify_transaction(&link(&[(0, 2), (1, 3)]), &omega).unwrap(), TransactionClass::Cross);
        assert_eq!(
            classify_transaction(&link(&[(0, 3), (1, 2)]), &omega).unwrap(),
            TransactionClass::Unclassified
        );
        assert_eq!(classify_transaction(&link(&[(0, 5)]), &omega).unwrap(), TransactionClass::Crosscap(1));
        assert_eq!(
            classify_transaction(&link(&[(0, 3), (1, 4), (2, 5)]), &omega).unwrap(),
            TransactionClass::Crosscap(3)
        );
        // u1 u2 u3 u4 v2 v1 v4 v3
        assert_eq!(
            classify_transaction(&link(&[(0, 5), (1, 4), (2, 7), (3, 6)]), &omega).unwrap(),
            TransactionClass::Handle(2)
        );
        assert!(classify_transaction(&link(&[(0, 9)]), &omega).is_err());
    }

    #[test]
    fn linear() {
        let p = Society::new(Graph::path(5), vec![0, 4]).unwrap();
        let LinearOutcome::Decomposition(ld) = linear_decomposition(&p, 1).unwrap() else {
            panic!("path society has depth 1")
        };
        assert!(validate_linear_decomposition(&p, &ld).valid);
        assert_eq!(ld.adhesion(), 1);
        let c = cycle_society(6);
        let LinearOutcome::Transaction(t) = linear_decomposition(&c, 1).unwrap() else {
            panic!("cycle society has depth 2")
        };
        assert_eq!(t.order(), 2);
        let LinearOutcome::Decomposition(ld) = linear_decomposition(&c, 2).unwrap() else {
            panic!("depth is 2")
        };
        assert!(ld.adhesion() <= 2);

        let mut broken = LinearDecomposition {
            bags: vec![vec![0, 1, 2], vec![2, 3, 4]],
            anchors: vec![0, 4],
        };
        assert!(validate_linear_decomposition(&p, &broken).valid);
        broken.bags = vec![vec![0, 1, 2], vec![3, 4]];
        assert!(!validate_linear_decomposition(&p, &broken).valid);
        broken.bags = vec![vec![0, 1, 2, 4], vec![2, 3, 4]];
        assert!(validate_linear_decomposition(&p, &broken).valid);
        broken.bags = vec![vec![0, 1, 3], vec![1, 2, 3, 4]];
        assert!(validate_linear_decomposition(&p, &broken).valid);
        broken.bags = vec![vec![0, 1], vec![2, 3, 4]];
        assert!(!validate_linear_decomposition(&p, &broken).valid);
    }
}
