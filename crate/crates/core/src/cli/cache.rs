//! On-disk cache of enumerated graph families.
//!
//! Each family is stored as a JSON-lines file under a directory named after
//! the crate version, with a SHA-256 digest of the file next to it. A missing
//! or mismatching digest, or a file that fails to parse, is treated as a miss
//! and the family is recomputed and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::output::VERSION;
use crate::error::{Error, Result};
use crate::graphs::{read_jsonl, write_jsonl, GraphEntry};

pub const CACHE_ENV: &str = "HYPERMAP_CACHE";

#[derive(Clone, Debug, Default)]
pub struct GraphCache {
    root: Option<PathBuf>,
}

/// Outcome of a cache lookup, used for the envelope's cache flag and for
/// reporting corruption.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Corrupt,
    Disabled,
}

impl GraphCache {
    pub fn disabled() -> Self {
        GraphCache { root: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        GraphCache { root: Some(dir.into()) }
    }

    /// `--cache-dir` wins over the environment; `--no-cache` disables both.
    pub fn from_options(dir: Option<&Path>, no_cache: bool) -> Self {
        if no_cache {
            return Self::disabled();
        }
        match dir {
            Some(d) => Self::at(d),
            None => match std::env::var_os(CACHE_ENV) {
                Some(d) if !d.is_empty() => Self::at(d),
                _ => Self::disabled(),
            },
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.root.is_some()
    }

    pub fn path_for(&self, name: &str) -> Option<PathBuf> {
        self.root
            .as_ref()
            .map(|r| r.join(format!("v{VERSION}")).join(format!("{name}.jsonl")))
    }

    /// Loads family `name`, or computes it with `compute` and stores it.
    pub fn get_or_compute<F>(&self, name: &str, compute: F) -> Result<(Vec<GraphEntry>, Lookup)>
    where
        F: FnOnce() -> Result<Vec<GraphEntry>>,
    {
        let Some(path) = self.path_for(name) else {
            return Ok((compute()?, Lookup::Disabled));
        };
        let status = match load(&path) {
            Ok(Some(entries)) => return Ok((entries, Lookup::Hit)),
            Ok(None) => Lookup::Miss,
            Err(_) => Lookup::Corrupt,
        };
        let entries = compute()?;
        store(&path, &entries)?;
        Ok((entries, status))
    }
}

fn digest_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".sha256");
    PathBuf::from(p)
}

fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(path: &Path) -> Result<Option<Vec<GraphEntry>>> {
    if !path.exists() {
        return Ok(None);
    }
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    let bytes = fs::read(path).map_err(io)?;
    let expected = fs::read_to_string(digest_path(path)).map_err(io)?;
    if expected.trim() != digest_hex(&bytes) {
        return Err(Error::Parse(format!("{}: digest mismatch", path.display())));
    }
    read_jsonl(path).map(Some)
}

fn store(path: &Path, entries: &[GraphEntry]) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io)?;
    }
    write_jsonl(path, entries)?;
    let bytes = fs::read(path).map_err(io)?;
    fs::write(digest_path(path), digest_hex(&bytes)).map_err(io)?;
    Ok(())
}
