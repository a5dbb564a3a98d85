//! Content-addressed disk cache for per-cell results.
//!
//! A record lives at `<dir>/<sha256(key)>.json` and carries the key and a
//! digest of its payload. Writes go to a temp file in the same directory and
//! are renamed into place, so readers in other processes never see a partial
//! record.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use log::warn;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MAYSS_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub p: u64,
    pub module: String,
    pub s: i64,
    pub t: i64,
    pub schema_version: u32,
}

impl CacheKey {
    pub fn new(p: u64, module: &str, s: i64, t: i64) -> Self {
        CacheKey {
            p,
            module: module.to_string(),
            s,
            t,
            schema_version: SCHEMA_VERSION,
        }
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(serde_json::to_vec(self).expect("key serializes")))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Record<T> {
    key: CacheKey,
    digest: String,
    payload: T,
}

fn payload_digest(v: &serde_json::Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_vec(v).expect("value serializes")))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// `None` on a miss. Unreadable, mismatched or corrupted records are
    /// misses and log a warning.
    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn!("cache read {} failed: {e}", path.display());
                return None;
            }
        };
        let rec: Record<serde_json::Value> = match serde_json::from_slice(&bytes) {
            Ok(r) => r,
            Err(e) => {
                warn!("corrupted cache record {}: {e}", path.display());
                return None;
            }
        };
        if rec.key != *key {
            if rec.key.schema_version != key.schema_version {
                return None;
            }
            warn!("cache record {} holds a different key", path.display());
            return None;
        }
        if payload_digest(&rec.payload) != rec.digest {
            warn!("cache record {} fails its digest check", path.display());
            return None;
        }
        match serde_json::from_value(rec.payload) {
            Ok(v) => Some(v),
            Err(e) => {
                warn!("cache record {} has an unexpected payload: {e}", path.display());
                None
            }
        }
    }

    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) -> io::Result<()> {
        let payload = serde_json::to_value(value).map_err(io::Error::other)?;
        let rec = Record {
            key: key.clone(),
            digest: payload_digest(&payload),
            payload,
        };
        let bytes = serde_json::to_vec(&rec).map_err(io::Error::other)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Look up, or compute and store. Store failures only warn.
    pub fn get_or_insert_with<T, F>(&self, key: &CacheKey, f: F) -> T
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> T,
    {
        if let Some(v) = self.get(key) {
            return v;
        }
        let v = f();
        if let Err(e) = self.put(key, &v) {
            warn!("cache write in {} failed: {e}", self.dir.display());
        }
        v
    }
}

/// Open the cache from an explicit directory or the environment; any
/// failure means running without a cache.
pub fn from_flag_or_env(flag: Option<&Path>) -> Option<Cache> {
    let dir = match flag {
        Some(d) => d.to_path_buf(),
        None => PathBuf::from(std::env::var_os(CACHE_ENV)?),
    };
    match Cache::open(&dir) {
        Ok(c) => Some(c),
        Err(e) => {
            warn!("cache directory {} unusable, running without cache: {e}", dir.display());
            None
        }
    }
}
