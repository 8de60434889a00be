//! Content-addressed store of result documents.
//!
//! An entry lives at `<dir>/<sha256>.json`, keyed by the normalized job and
//! the engine version. Writes go to a temporary file in the same directory
//! and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::job::{render, run_job, JobSpec, ENGINE_VERSION};
use crate::error::Result;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "BSIDEAL_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: dir.into(),
            version: ENGINE_VERSION.into(),
        }
    }

    /// Cache in the directory named by `BSIDEAL_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Cache::new)
    }

    /// Overrides the version mixed into keys.
    pub fn with_version(mut self, version: impl Into<String>) -> Self {
        self.version = version.into();
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of the engine version and the normalized job.
    pub fn key(&self, spec: &JobSpec) -> Result<String> {
        let normalized = serde_json::to_string(&spec.normalized()?).expect("serializable");
        let mut h = Sha256::new();
        h.update(self.version.as_bytes());
        h.update([0]);
        h.update(normalized.as_bytes());
        Ok(hex::encode(h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored bytes, if present and parseable. A corrupt entry is
    /// logged and treated as absent.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<serde_json::Value>(&text) {
            Ok(_) => Some(text),
            Err(e) => {
                log::warn!("ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn put(&self, key: &str, text: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Serves `spec` from the cache or runs it and stores the result.
    /// Returns the rendered document and whether it was a hit.
    pub fn run(&self, spec: &JobSpec) -> Result<(String, bool)> {
        let key = self.key(spec)?;
        if let Some(text) = self.get(&key) {
            log::info!("cache hit {key}");
            return Ok((text, true));
        }
        let text = render(&run_job(spec)?);
        self.put(&key, &text)?;
        Ok((text, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::job::Command;

    fn spec() -> JobSpec {
        JobSpec::new(Command::Bfun).with_f(["x^2"])
    }

    #[test]
    fn replay_and_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let (first, hit) = cache.run(&spec()).unwrap();
        assert!(!hit);
        let (second, hit) = cache.run(&spec()).unwrap();
        assert!(hit);
        assert_eq!(first, second);

        let mut other = spec();
        other.budget.max_pairs -= 1;
        assert_ne!(cache.key(&other).unwrap(), cache.key(&spec()).unwrap());
        let newer = Cache::new(dir.path()).with_version("999.0.0");
        assert_ne!(newer.key(&spec()).unwrap(), cache.key(&spec()).unwrap());
    }

    #[test]
    fn spelling_does_not_matter() {
        let cache = Cache::new("unused");
        let a = JobSpec::new(Command::Bfun).with_f(["x*x"]);
        let b = JobSpec::new(Command::Bfun).with_f(["x^2"]);
        assert_eq!(cache.key(&a).unwrap(), cache.key(&b).unwrap());
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = cache.key(&spec()).unwrap();
        fs::write(dir.path().join(format!("{key}.json")), "{ not json").unwrap();
        let (text, hit) = cache.run(&spec()).unwrap();
        assert!(!hit);
        assert!(text.contains("(s+1)*(s+1/2)"));
        assert_eq!(cache.get(&key).unwrap(), text);
    }
}
