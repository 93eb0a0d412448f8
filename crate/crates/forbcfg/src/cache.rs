//! Append-only JSON-lines cache of exact search results.
//!
//! Keyed by `(m, r, canonical family key, k)`. Only exact results are
//! stored; a cache hit is served with zero search nodes. The file location
//! comes from the `FORB_CACHE` environment variable, defaulting to
//! `.forbcache.jsonl` in the working directory.

use crate::error::Result;
use crate::forb::{forb_exact, forb_k_exact, ForbResult, SearchConfig};
use crate::matrix::RMatrix;
use crate::patterns::ConfigFamily;
use serde::{Deserialize, Serialize};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

pub const CACHE_ENV_VAR: &str = "FORB_CACHE";
pub const DEFAULT_CACHE_FILE: &str = ".forbcache.jsonl";

/// One cached exact result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub m: usize,
    pub r: u8,
    pub family: String,
    pub k: Option<usize>,
    pub value: usize,
    pub extremal: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub exact: bool,
}

impl CacheRecord {
    pub fn from_result(res: &ForbResult) -> CacheRecord {
        CacheRecord {
            m: res.m,
            r: res.r,
            family: res.family.clone(),
            k: res.k,
            value: res.value,
            extremal: res.extremal.to_text(),
            nodes: res.nodes,
            elapsed_ms: res.elapsed.as_millis() as u64,
            exact: res.exact,
        }
    }

    pub fn into_result(self) -> Result<ForbResult> {
        Ok(ForbResult {
            m: self.m,
            r: self.r,
            family: self.family,
            k: self.k,
            value: self.value,
            extremal: RMatrix::parse(&self.extremal)?,
            nodes: self.nodes,
            elapsed: Duration::from_millis(self.elapsed_ms),
            exact: self.exact,
        })
    }
}

/// Handle on a cache file; the file need not exist yet.
#[derive(Clone, Debug)]
pub struct ResultsCache {
    path: PathBuf,
}

impl ResultsCache {
    pub fn at(path: impl AsRef<Path>) -> ResultsCache {
        ResultsCache {
            path: path.as_ref().to_path_buf(),
        }
    }

    /// Location from `FORB_CACHE`, falling back to `.forbcache.jsonl`.
    pub fn from_env() -> ResultsCache {
        let path = std::env::var_os(CACHE_ENV_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE));
        ResultsCache { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Last exact record matching the key, if any. Unreadable lines are
    /// skipped; the cache is advisory.
    pub fn lookup(
        &self,
        m: usize,
        r: u8,
        family_key: &str,
        k: Option<usize>,
    ) -> Option<CacheRecord> {
        let file = std::fs::File::open(&self.path).ok()?;
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let Ok(line) = line else { break };
            let Ok(record) = serde_json::from_str::<CacheRecord>(&line) else {
                continue;
            };
            if record.exact
                && record.m == m
                && record.r == r
                && record.family == family_key
                && record.k == k
            {
                found = Some(record);
            }
        }
        found
    }

    pub fn append(&self, record: &CacheRecord) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(record)?;
        writeln!(file, "{line}")?;
        Ok(())
    }
}

/// Cache-first search: serves a stored exact result with zero nodes, else
/// computes and (when exact) stores it.
pub fn cached_forb(
    cache: &ResultsCache,
    m: usize,
    r: u8,
    family: &ConfigFamily,
    k: Option<usize>,
    cfg: &SearchConfig,
) -> Result<ForbResult> {
    let key = family.canonical_key();
    if let Some(record) = cache.lookup(m, r, &key, k) {
        let mut res = record.into_result()?;
        res.nodes = 0;
        res.elapsed = Duration::ZERO;
        return Ok(res);
    }
    let res = match k {
        Some(k) => forb_k_exact(m, r, family, k, cfg)?,
        None => forb_exact(m, r, family, cfg)?,
    };
    if res.exact {
        cache.append(&CacheRecord::from_result(&res))?;
    }
    Ok(res)
}
