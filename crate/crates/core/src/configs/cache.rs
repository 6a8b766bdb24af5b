//! Append-only JSON-lines store of initial degrees.
//!
//! Each line is `{"hash": hex, "t": int, "alpha": int}` where `hash` is the
//! SHA-256 of the point set's JSON with points sorted, so the key does not
//! depend on input order. Appends are single `write` calls on a file opened
//! in append mode, which lets several processes share one file; a repeated
//! key carries the same value, and the last line read wins.

use crate::error::Result;
use crate::geometry::{FatPointScheme, ProjPoint};
use crate::linsys::{alpha_symbolic_with, Alpha, DimOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

pub const CACHE_ENV: &str = "FATPOINT_CACHE";

#[derive(Serialize, Deserialize)]
struct Line {
    hash: String,
    t: u32,
    alpha: u32,
}

#[derive(Debug)]
pub struct AlphaCache {
    path: PathBuf,
    entries: Mutex<HashMap<(String, u32), u32>>,
}

/// Content hash of a reduced point set.
pub fn scheme_hash(points: &[ProjPoint]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort();
    let json = FatPointScheme::uniform(&sorted, 1)
        .expect("distinct points")
        .to_json();
    hex::encode(Sha256::digest(json.to_string().as_bytes()))
}

impl AlphaCache {
    /// `$FATPOINT_CACHE`, else `$XDG_CACHE_HOME/fatpoint/alpha.jsonl`, else
    /// `~/.cache/fatpoint/alpha.jsonl`.
    pub fn default_path() -> PathBuf {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return PathBuf::from(p);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(|| PathBuf::from("."));
        base.join("fatpoint").join("alpha.jsonl")
    }

    /// Loads the file if it exists. Lines that do not parse are ignored, so
    /// a torn final line from an interrupted writer costs one entry.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        match fs::read_to_string(&path) {
            Ok(text) => {
                for line in text.lines() {
                    if let Ok(l) = serde_json::from_str::<Line>(line) {
                        entries.insert((l.hash, l.t), l.alpha);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(AlphaCache {
            path,
            entries: Mutex::new(entries),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, points: &[ProjPoint], t: u32) -> Option<u32> {
        self.get_hashed(&scheme_hash(points), t)
    }

    fn get_hashed(&self, hash: &str, t: u32) -> Option<u32> {
        self.entries
            .lock()
            .unwrap()
            .get(&(hash.to_string(), t))
            .copied()
    }

    pub fn insert(&self, points: &[ProjPoint], t: u32, alpha: u32) -> Result<()> {
        let hash = scheme_hash(points);
        if self.get_hashed(&hash, t) == Some(alpha) {
            return Ok(());
        }
        let mut line = serde_json::to_string(&Line {
            hash: hash.clone(),
            t,
            alpha,
        })?;
        line.push('\n');
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?
            .write_all(line.as_bytes())?;
        self.entries.lock().unwrap().insert((hash, t), alpha);
        Ok(())
    }
}

/// `alpha(I^(t))` through an optional cache. A hit is returned as is; a
/// found value is appended.
pub fn cached_alpha(
    cache: Option<&AlphaCache>,
    points: &[ProjPoint],
    t: u32,
    degree_cap: u32,
    opts: &DimOptions,
) -> Result<Alpha> {
    if let Some(a) = cache.and_then(|c| c.get(points, t)) {
        if a <= degree_cap {
            return Ok(Alpha::Found(a));
        }
        return Ok(Alpha::NotFoundBelowCap(degree_cap));
    }
    let a = alpha_symbolic_with(points, t, degree_cap, opts);
    if let (Some(c), Alpha::Found(v)) = (cache, a) {
        c.insert(points, t, v)?;
    }
    Ok(a)
}
