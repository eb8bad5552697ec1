//! Size limits for the exhaustive routines.

use crate::error::{Error, Result};

/// Instance-size caps. Every exhaustive routine checks the relevant field before
/// starting and fails with [`Error::CapExceeded`] instead of running unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Vertex limit for separation enumeration and tangle checks.
    pub exhaustive_vertices: usize,
    /// Limit on separator candidates / partitions visited by one enumeration.
    pub exhaustive_candidates: usize,
    /// Vertex limit for `exact_treewidth`.
    pub treewidth_vertices: usize,
    /// Pattern-size limit for the brute-force minor search.
    pub minor_pattern: usize,
    /// Host-size limit for the brute-force minor search.
    pub minor_host: usize,
    /// Size limit of `S` in strong-linkedness checks (2^|S| bipartitions).
    pub linked_set: usize,
    /// Vertex limit for the exhaustive cross search in societies.
    pub cross_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exhaustive_vertices: 64,
            exhaustive_candidates: 5_000_000,
            treewidth_vertices: 20,
            minor_pattern: 8,
            minor_host: 18,
            linked_set: 16,
            cross_vertices: 16,
        }
    }
}

impl Caps {
    /// Reads overrides such as `treewidth=24,minor_host=20` from `DYCKGRID_CAPS`.
    pub fn from_env() -> Result<Self> {
        match std::env::var("DYCKGRID_CAPS") {
            Ok(s) => Caps::default().with_overrides(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("cap override `{item}`")))?;
            let val: usize = val
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("cap value `{val}`")))?;
            let slot = match key.trim() {
                "exhaustive" => &mut self.exhaustive_vertices,
                "candidates" => &mut self.exhaustive_candidates,
                "treewidth" => &mut self.treewidth_vertices,
                "minor_pattern" => &mut self.minor_pattern,
                "minor_host" => &mut self.minor_host,
                "linked_set" => &mut self.linked_set,
                "cross" => &mut self.cross_vertices,
                other => return Err(Error::Malformed(format!("unknown cap `{other}`"))),
            };
            *slot = val;
        }
        Ok(self)
    }
}
