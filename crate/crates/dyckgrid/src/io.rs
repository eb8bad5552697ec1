//! graph6 and DOT serialization, and textual family specs such as
//! `dyck:h=1,c=1,k=3`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grids::{cylindrical_grid, dyck_grid, mixed_surface_grid, DyckGridSpec, MixedSurfaceGridSpec};
use crate::wall::{dyck_wall, elementary_wall, DyckWallSpec};

const BIAS: u8 = 63;

fn push_size(out: &mut String, n: usize) {
    if n < 63 {
        out.push((n as u8 + BIAS) as char);
    } else if n < 258_048 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + BIAS) as char);
        }
    }
}

/// Encodes `g` in graph6: the size, then the upper triangle of the adjacency
/// matrix column by column, six bits per character.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        let nbrs = g.neighbors(j);
        let mut next = 0;
        for i in 0..j {
            while next < nbrs.len() && nbrs[next] < i {
                next += 1;
            }
            let bit = next < nbrs.len() && nbrs[next] == i;
            acc = (acc << 1) | bit as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + BIAS) as char);
    }
    out
}

/// Decodes one graph6 line. An optional `>>graph6<<` header is accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Malformed("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Malformed(format!("byte {b} is outside the graph6 range")));
    }
    let val = |b: u8| (b - BIAS) as usize;
    let read = |from: usize, count: usize| -> Result<usize> {
        let chunk = bytes
            .get(from..from + count)
            .ok_or_else(|| Error::Malformed("truncated graph6 size".into()))?;
        Ok(chunk.iter().fold(0, |acc, &b| (acc << 6) | val(b)))
    };
    let (n, start) = match bytes {
        [b'~', b'~', ..] => (read(2, 6)?, 8),
        [b'~', ..] => (read(1, 3)?, 4),
        [b, ..] => (val(*b), 1),
        [] => unreachable!("checked non-empty"),
    };
    let body = &bytes[start..];
    let total = n * n.saturating_sub(1) / 2;
    if body.len() != total.div_ceil(6) {
        return Err(Error::Malformed(format!(
            "graph6 body has {} characters, expected {} for n = {n}",
            body.len(),
            total.div_ceil(6)
        )));
    }
    let bit = |k: usize| (val(body[k / 6]) >> (5 - k % 6)) & 1 == 1;
    if (total..body.len() * 6).any(bit) {
        return Err(Error::Malformed("graph6 padding bits are not zero".into()));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// DOT text for `g`, with labels as node attributes when present.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        match g.label(v) {
            Some((a, b)) => writeln!(out, "  {v} [label=\"{a},{b}\"];"),
            None => writeln!(out, "  {v};"),
        }
        .expect("writing to a string");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").expect("writing to a string");
    }
    out.push_str("}\n");
    out
}

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Cylinder { m: usize, n: usize },
    Mixed(MixedSurfaceGridSpec),
    Dyck(DyckGridSpec),
    Wall { k: usize },
    DyckWall(DyckWallSpec),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Cylinder { m, n } => cylindrical_grid(*m, *n),
            FamilySpec::Mixed(s) => mixed_surface_grid(s),
            FamilySpec::Dyck(s) => dyck_grid(s),
            FamilySpec::Wall { k } => Ok(elementary_wall(*k)?.graph),
            FamilySpec::DyckWall(s) => dyck_wall(s),
        }
    }
}

fn set_string(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cylinder { m, n } => write!(f, "cyl:m={m},n={n}"),
            FamilySpec::Mixed(s) => write!(
                f,
                "msg:k={},h={},c={}",
                s.k,
                set_string(&s.handles),
                set_string(&s.crosscaps)
            ),
            FamilySpec::Dyck(s) => write!(f, "dyck:h={},c={},k={}", s.h, s.c, s.k),
            FamilySpec::Wall { k } => write!(f, "wall:k={k}"),
            FamilySpec::DyckWall(s) => write!(f, "dyckwall:h={},c={},t={}", s.h, s.c, s.t),
        }
    }
}

/// Splits `a=1,b={2,3}` at commas outside braces.
fn fields(body: &str) -> Result<Vec<(&str, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut items = Vec::new();
    for (i, ch) in body.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Malformed(format!("unbalanced braces in `{body}`")))?
            }
            ',' if depth == 0 => {
                items.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Malformed(format!("unbalanced braces in `{body}`")));
    }
    items.push(&body[start..]);
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Malformed(format!("expected key=value, got `{item}`")))?;
        out.push((k.trim(), v.trim()));
    }
    Ok(out)
}

fn number<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Malformed(format!("`{key}` needs an integer, got `{v}`")))
}

fn set(key: &str, v: &str) -> Result<BTreeSet<usize>> {
    let inner = v
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Malformed(format!("`{key}` needs a set like {{2,3}}, got `{v}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| number(key, s))
        .collect()
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses a spec string. Parameter values are checked only for syntax;
    /// family preconditions are left to [`FamilySpec::build`].
    fn from_str(s: &str) -> Result<Self> {
        let (family, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("expected family:params, got `{s}`")))?;
        let fields = fields(body)?;
        let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
        let want: &[&str] = match family {
            "cyl" => &["m", "n"],
            "msg" => &["k", "h", "c"],
            "dyck" => &["h", "c", "k"],
            "wall" => &["k"],
            "dyckwall" => &["h", "c", "t"],
            other => return Err(Error::Malformed(format!("unknown family `{other}`"))),
        };
        if keys != want {
            return Err(Error::Malformed(format!(
                "`{family}` takes parameters {} in this order",
                want.join(",")
            )));
        }
        let v = |i: usize| fields[i].1;
        Ok(match family {
            "cyl" => FamilySpec::Cylinder {
                m: number("m", v(0))?,
                n: number("n", v(1))?,
            },
            "msg" => FamilySpec::Mixed(MixedSurfaceGridSpec {
                k: number("k", v(0))?,
                handles: set("h", v(1))?,
                crosscaps: set("c", v(2))?,
            }),
            "dyck" => FamilySpec::Dyck(DyckGridSpec {
                h: number("h", v(0))?,
                c: number("c", v(1))?,
                k: number("k", v(2))?,
            }),
            "wall" => FamilySpec::Wall { k: number("k", v(0))? },
            _ => FamilySpec::DyckWall(DyckWallSpec {
                h: number("h", v(0))?,
                c: number("c", v(1))?,
                t: number("t", v(2))?,
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small() {
        assert_eq!(to_graph6(&Graph::new(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::path(5)), "DhC");
        let g = Graph::cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@EhC"));
        assert_eq!(from_graph6(&s).unwrap(), g);
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C}").is_ok());
        assert!(from_graph6("A`").is_err());
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C\u{1}").is_err());
    }

    #[test]
    fn dot_output() {
        let d = to_dot(&Graph::path(2), "g");
        assert_eq!(d, "graph g {\n  0;\n  1;\n  0 -- 1;\n}\n");
    }

    const DYCK_003: &str = "chCGGC@?G?o@_?O?c?G_@A?CC?GC?GA?C?_@?C?G?O?_?o@??_???O?_?C?G??_@??A?C??C?G??C?G??A?C???_@???C?G???O?_???o@";

    #[test]
    fn specs_round_trip() {
        for s in [
            "cyl:m=3,n=12",
            "msg:k=3,h={2},c={3}",
            "msg:k=4,h={},c={2,3,4}",
            "dyck:h=1,c=1,k=3",
            "dyck:h=-1,c=2,k=3",
            "wall:k=4",
            "dyckwall:h=1,c=1,t=3",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["dyck:h=1,k=3", "dyck:c=1,h=1,k=3", "msg:k=3,h=2,c={}", "torus:k=3", "wall", "wall:k=x"] {
            assert!(matches!(bad.parse::<FamilySpec>(), Err(Error::Malformed(_))), "{bad}");
        }
        let g = "dyck:h=0,c=0,k=3".parse::<FamilySpec>().unwrap().build().unwrap();
        assert_eq!(g.n(), 36);
        assert_eq!(to_graph6(&g), DYCK_003);
        assert!(matches!(
            "cyl:m=2,n=3".parse::<FamilySpec>().unwrap().build(),
            Err(Error::Precondition(_))
        ));
    }
}
