//! On-disk search state.
//!
//! A checkpoint records the search parameters, the frontier of canonical
//! partial matrices the search was split into, and every frontier subtree
//! finished so far. Resuming re-runs only the unfinished subtrees.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::canon::{is_canonical, MatrixRef};
use crate::error::{Error, Result};

pub const CHECKPOINT_SCHEMA: &str = "ryser.search.checkpoint/1";

/// Search parameters with defaults resolved; two runs with equal records
/// explore the same tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub rank: usize,
    pub edges: usize,
    pub tau: usize,
    pub cap: usize,
    pub limit: Option<usize>,
    pub pruning: bool,
}

/// Matrix rows as written to disk: one array of values per edge.
pub type Rows = Vec<Vec<u8>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeRecord {
    pub index: usize,
    pub nodes: u64,
    pub witnesses: Vec<Rows>,
    pub nodes_at_witness: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema: String,
    pub version: String,
    pub params: ParamsRecord,
    pub frontier_nodes: u64,
    pub frontier: Vec<Rows>,
    pub completed: Vec<SubtreeRecord>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

fn check_rows(p: &ParamsRecord, rows: &Rows, what: &str) -> Result<()> {
    if rows.len() > p.edges {
        return Err(bad(format!("{what} has {} rows, expected at most {}", rows.len(), p.edges)));
    }
    for row in rows {
        if row.len() != p.rank {
            return Err(bad(format!("{what} has a row of length {}, expected {}", row.len(), p.rank)));
        }
        if let Some(&v) = row.iter().find(|&&v| v as usize >= p.cap) {
            return Err(bad(format!("{what} uses value {v} outside cap {}", p.cap)));
        }
    }
    Ok(())
}

impl Checkpoint {
    /// Structural checks that do not depend on the running code version.
    pub fn validate(&self) -> Result<()> {
        if self.schema != CHECKPOINT_SCHEMA {
            return Err(bad(format!("unknown schema {:?}", self.schema)));
        }
        let p = &self.params;
        if p.rank == 0 || p.rank > u8::MAX as usize || p.edges == 0 || p.edges > 64 || p.cap == 0 || p.cap > u8::MAX as usize {
            return Err(bad("parameters out of range"));
        }
        for (i, rows) in self.frontier.iter().enumerate() {
            check_rows(p, rows, &format!("frontier matrix {i}"))?;
            let data: Vec<u8> = rows.iter().flatten().copied().collect();
            let m = MatrixRef {
                rows: rows.len(),
                cols: p.rank,
                values: p.cap,
                data: &data,
            };
            if !is_canonical(m) {
                return Err(bad(format!("frontier matrix {i} is not canonical")));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.completed {
            if s.index >= self.frontier.len() || !seen.insert(s.index) {
                return Err(bad(format!("bad subtree index {}", s.index)));
            }
            if s.witnesses.len() != s.nodes_at_witness.len() {
                return Err(bad(format!("subtree {} has mismatched witness counters", s.index)));
            }
            for w in &s.witnesses {
                check_rows(p, w, &format!("witness in subtree {}", s.index))?;
                if w.len() != p.edges {
                    return Err(bad(format!("witness in subtree {} is incomplete", s.index)));
                }
            }
        }
        Ok(())
    }

    /// Parses and validates checkpoint JSON.
    pub fn decode(text: &str) -> Result<Self> {
        let c: Checkpoint = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn encode(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::decode(&fs::read_to_string(path)?)
    }

    /// Replaces `path` atomically: the new state is written beside it and
    /// renamed over it.
    pub fn store(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Errors unless this checkpoint was written by this code version for
    /// `params`.
    pub fn ensure_matches(&self, params: &ParamsRecord) -> Result<()> {
        if self.version != env!("CARGO_PKG_VERSION") {
            return Err(bad(format!(
                "written by version {}, this is {}",
                self.version,
                env!("CARGO_PKG_VERSION")
            )));
        }
        if self.params != *params {
            return Err(bad(format!(
                "parameters differ: file has {:?}, run has {:?}",
                self.params, params
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        Checkpoint {
            schema: CHECKPOINT_SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            params: ParamsRecord {
                rank: 3,
                edges: 3,
                tau: 2,
                cap: 3,
                limit: Some(1),
                pruning: true,
            },
            frontier_nodes: 3,
            frontier: vec![vec![vec![0, 0, 0], vec![0, 1, 1]]],
            completed: vec![],
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert_eq!(Checkpoint::decode(&c.encode()).unwrap(), c);
    }

    #[test]
    fn rejects_non_canonical_frontier() {
        let mut c = sample();
        c.frontier = vec![vec![vec![0, 1, 1], vec![0, 0, 0]]];
        assert!(matches!(Checkpoint::decode(&c.encode()), Err(Error::Checkpoint(_))));
    }

    #[test]
    fn rejects_bad_subtree_index() {
        let mut c = sample();
        c.completed.push(SubtreeRecord {
            index: 4,
            nodes: 1,
            witnesses: vec![],
            nodes_at_witness: vec![],
        });
        assert!(Checkpoint::decode(&c.encode()).is_err());
    }

    #[test]
    fn rejects_other_parameters() {
        let c = sample();
        let mut other = c.params;
        other.rank = 4;
        assert!(c.ensure_matches(&other).is_err());
        assert!(c.ensure_matches(&c.params).is_ok());
        let mut old = c.clone();
        old.version = "0.0.0-old".into();
        assert!(old.ensure_matches(&c.params).is_err());
    }

    #[test]
    fn store_replaces_atomically() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let c = sample();
        c.store(&path).unwrap();
        c.store(&path).unwrap();
        assert_eq!(Checkpoint::load(&path).unwrap(), c);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
