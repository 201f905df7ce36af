//! On-disk cache of symmetric powers keyed by a content hash of the input
//! complex and the construction parameters.
//!
//! Each entry is one file: the hex SHA-256 of the payload on the first
//! line, then the JSON payload. Entries whose checksum or payload does not
//! verify are treated as absent and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::simplicial::{self, Budget, SimplicialSet};
use crate::verify::SymSource;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "SYMSTAB_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct SymCache {
    dir: PathBuf,
    hits: usize,
    misses: usize,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of the complex's full structure, `n` and the dimension cap. The
/// simplex cap is not part of the key: it only decides whether a result
/// may be returned.
pub fn cache_key(x: &SimplicialSet, n: usize, max_dim: Option<usize>) -> String {
    let mut h = Sha256::new();
    h.update(b"sym-power-v1\n");
    h.update(serde_json::to_vec(x).expect("simplicial sets serialize"));
    h.update(format!("\nn={n}\nmax_dim={max_dim:?}\n").as_bytes());
    hex::encode(h.finalize())
}

impl SymCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::file(&dir, e))?;
        Ok(Self { dir, hits: 0, misses: 0 })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn misses(&self) -> usize {
        self.misses
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored set, or `None` when absent or corrupt.
    pub fn lookup(&self, key: &str) -> Option<SimplicialSet> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (digest, payload) = text.split_once('\n')?;
        if sha256_hex(payload.as_bytes()) != digest {
            return None;
        }
        serde_json::from_str(payload).ok()
    }

    pub fn store(&self, key: &str, x: &SimplicialSet) -> Result<()> {
        let payload = serde_json::to_string(x).map_err(|e| Error::Invariant(format!("serialize: {e}")))?;
        let target = self.path(key);
        // write-then-rename keeps concurrent readers from seeing partial files
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(sha256_hex(payload.as_bytes()).as_bytes())?;
            f.write_all(b"\n")?;
            f.write_all(payload.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        };
        write().map_err(|e| Error::file(&target, e))
    }
}

impl SymSource for SymCache {
    fn sym_power(&mut self, x: &SimplicialSet, n: usize, budget: Budget) -> Result<SimplicialSet> {
        let key = cache_key(x, n, budget.max_dim);
        if let Some(s) = self.lookup(&key) {
            if s.total() > budget.max_simplices {
                return Err(Error::BudgetExceeded { limit: budget.max_simplices, reached: s.total() });
            }
            self.hits += 1;
            return Ok(s);
        }
        self.misses += 1;
        let s = simplicial::sym_power(x, n, budget)?;
        self.store(&key, &s)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::circle_model;

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = SymCache::new(dir.path()).unwrap();
        let x = circle_model(3).unwrap();
        let key = cache_key(&x, 2, None);
        assert!(cache.lookup(&key).is_none());
        let fresh = cache.sym_power(&x, 2, Budget::default()).unwrap();
        let warm = cache.sym_power(&x, 2, Budget::default()).unwrap();
        assert_eq!(fresh, warm);
        assert_eq!((cache.hits(), cache.misses()), (1, 1));
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = SymCache::new(dir.path()).unwrap();
        let x = circle_model(3).unwrap();
        let key = cache_key(&x, 2, None);
        fs::write(cache.path(&key), "deadbeef\n{\"name\": 1}").unwrap();
        assert!(cache.lookup(&key).is_none());
        let s = cache.sym_power(&x, 2, Budget::default()).unwrap();
        assert_eq!(cache.lookup(&key), Some(s));
    }

    #[test]
    fn cached_result_still_respects_budget() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = SymCache::new(dir.path()).unwrap();
        let x = circle_model(3).unwrap();
        cache.sym_power(&x, 2, Budget::default()).unwrap();
        let tight = Budget { max_simplices: 5, max_dim: None };
        assert!(matches!(cache.sym_power(&x, 2, tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn key_depends_on_parameters() {
        let x = circle_model(3).unwrap();
        assert_ne!(cache_key(&x, 2, None), cache_key(&x, 3, None));
        assert_ne!(cache_key(&x, 2, None), cache_key(&x, 2, Some(1)));
        assert_ne!(cache_key(&x, 2, None), cache_key(&circle_model(4).unwrap(), 2, None));
    }
}
