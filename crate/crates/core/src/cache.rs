//! On-disk cache for expansions of `f^((p-1)/2)`.
//!
//! Entries are content-addressed by `(kind, p, order, version)`. Each file
//! carries a SHA-256 line over its body; anything that fails to parse or
//! verify is treated as a miss and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::algebra::FpBivarPoly;
use crate::hasse_witt::expand_half_power;
use crate::Result;

pub const CACHE_ENV: &str = "HASSE_CACHE_DIR";
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+grid1");

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, CACHE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache { dir: dir.into(), version: version.to_string() }
    }

    /// `$HASSE_CACHE_DIR`, falling back to a directory under the system
    /// temp dir.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("partial-hasse-cache"));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, kind: &str, p: u64, order: usize) -> PathBuf {
        let key = format!("{kind}|{p}|{order}|{}", self.version);
        self.dir.join(format!("{kind}-{p}-{}.txt", &sha256_hex(key.as_bytes())[..16]))
    }

    fn header(&self, kind: &str, p: u64, order: usize) -> String {
        format!("# partial-hasse cache kind={kind} p={p} order={order} version={}", self.version)
    }

    pub fn load_expansion(&self, p: u64) -> Option<FpBivarPoly> {
        let path = self.entry_path("expansion", p, 0);
        let text = fs::read_to_string(&path).ok()?;
        match self.parse_expansion(&text, p) {
            Some(e) => Some(e),
            None => {
                log::warn!("discarding corrupt or stale cache entry {}", path.display());
                None
            }
        }
    }

    fn parse_expansion(&self, text: &str, p: u64) -> Option<FpBivarPoly> {
        let mut parts = text.splitn(3, '\n');
        if parts.next()? != self.header("expansion", p, 0) {
            return None;
        }
        let checksum = parts.next()?.strip_prefix("sha256 ")?;
        let body = parts.next()?;
        if sha256_hex(body.as_bytes()) != checksum {
            return None;
        }
        let mut nums = body.split_ascii_whitespace().map(|s| s.parse::<u64>().ok());
        let x_len = nums.next()?? as usize;
        let eta_len = nums.next()?? as usize;
        let grid: Vec<u64> = nums.collect::<Option<_>>()?;
        if grid.len() != x_len * eta_len || grid.iter().any(|&c| c >= p) {
            return None;
        }
        Some(FpBivarPoly::from_raw(x_len, eta_len, grid, p))
    }

    pub fn store_expansion(&self, e: &FpBivarPoly) -> Result<()> {
        let p = e.modulus();
        let (x_len, eta_len, grid) = e.raw();
        let mut body = format!("{x_len} {eta_len}\n");
        for row in grid.chunks(eta_len.max(1)) {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            body.push_str(&line.join(" "));
            body.push('\n');
        }
        fs::create_dir_all(&self.dir)?;
        let path = self.entry_path("expansion", p, 0);
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{}", self.header("expansion", p, 0))?;
        writeln!(f, "sha256 {}", sha256_hex(body.as_bytes()))?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Loads the expansion from `cache` when possible, otherwise computes it
/// and tries to store it. Cache I/O failures only produce a warning.
pub fn expansion_cached(cache: Option<&Cache>, p: u64) -> Result<FpBivarPoly> {
    if let Some(c) = cache {
        if let Some(e) = c.load_expansion(p) {
            return Ok(e);
        }
    }
    let e = expand_half_power(p)?;
    if let Some(c) = cache {
        if let Err(err) = c.store_expansion(&e) {
            log::warn!("could not write cache entry for p={p}: {err}");
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let e = expand_half_power(11).unwrap();
        cache.store_expansion(&e).unwrap();
        assert_eq!(cache.load_expansion(11).unwrap(), e);
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        Cache::with_version(dir.path(), "a").store_expansion(&expand_half_power(7).unwrap()).unwrap();
        assert!(Cache::with_version(dir.path(), "b").load_expansion(7).is_none());
    }

    #[test]
    fn truncated_file_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let e = expand_half_power(13).unwrap();
        cache.store_expansion(&e).unwrap();
        let path = cache.entry_path("expansion", 13, 0);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert!(cache.load_expansion(13).is_none());
        assert_eq!(expansion_cached(Some(&cache), 13).unwrap(), e);
        assert_eq!(cache.load_expansion(13).unwrap(), e);
    }

    #[test]
    fn unwritable_cache_degrades() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let cache = Cache::new(blocker.join("sub"));
        assert_eq!(expansion_cached(Some(&cache), 7).unwrap(), expand_half_power(7).unwrap());
    }
}
