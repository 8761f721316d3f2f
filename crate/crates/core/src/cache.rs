//! A small content-addressed result cache for expensive computations.
//!
//! Values are JSON documents on disk, keyed by a SHA-256 digest over the
//! computation kind, a format version, and the canonical input bytes
//! (e.g. Gram matrix entries plus parameters). Hits and misses produce
//! the same in-memory value, so emitted output never depends on cache
//! state; a corrupt or unreadable entry is recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Environment variable consulted by [`Cache::from_env`].
pub const CACHE_ENV_VAR: &str = "WEYLKIT_CACHE";

/// A cache rooted at a directory, or disabled (every lookup recomputes).
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// A cache rooted at `dir`, created if missing.
    pub fn at(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| {
            Error::argument(format!("cannot create cache directory {}: {e}", dir.display()))
        })?;
        Ok(Cache { dir: Some(dir.to_path_buf()) })
    }

    /// Cache rooted at `$WEYLKIT_CACHE` when set and nonempty, disabled
    /// otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CACHE_ENV_VAR) {
            Ok(dir) if !dir.is_empty() => Cache::at(Path::new(&dir)),
            _ => Ok(Cache::disabled()),
        }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn entry_path(&self, kind: &str, version: u32, key_material: &[u8]) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut hasher = Sha256::new();
        hasher.update(kind.as_bytes());
        hasher.update([0u8]);
        hasher.update(version.to_le_bytes());
        hasher.update([0u8]);
        hasher.update(key_material);
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(32);
        for b in &digest[..16] {
            hex.push_str(&format!("{b:02x}"));
        }
        Some(dir.join(format!("{kind}-v{version}-{hex}.json")))
    }

    /// Fetch the cached value for (kind, version, key) or compute and
    /// store it. Returns the value and whether it was a cache hit.
    pub fn get_or_compute<T, F>(
        &self,
        kind: &str,
        version: u32,
        key_material: &[u8],
        compute: F,
    ) -> Result<(T, bool)>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let Some(path) = self.entry_path(kind, version, key_material) else {
            return Ok((compute()?, false));
        };
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(value) = serde_json::from_slice::<T>(&bytes) {
                return Ok((value, true));
            }
            // Corrupt entry: fall through to recompute and overwrite.
        }
        let value = compute()?;
        let bytes = serde_json::to_vec(&value)
            .map_err(|e| Error::integrity(format!("cache serialization failed: {e}")))?;
        // Write-then-rename so a crashed writer never leaves a torn entry.
        let tmp = path.with_extension("json.tmp");
        let write_result =
            fs::write(&tmp, &bytes).and_then(|()| fs::rename(&tmp, &path));
        if write_result.is_err() {
            // Failing to persist is not an error: the value is correct.
            let _ = fs::remove_file(&tmp);
        }
        Ok((value, false))
    }
}

/// Canonical key material for a Cartan datum: rank then Gram entries.
pub fn gram_key(datum: &crate::cartan::CartanDatum) -> Vec<u8> {
    let mut key = Vec::with_capacity(8 + datum.gram_entries().len() * 8);
    key.extend_from_slice(&(datum.rank() as u64).to_le_bytes());
    for &entry in datum.gram_entries() {
        key.extend_from_slice(&entry.to_le_bytes());
    }
    key
}
