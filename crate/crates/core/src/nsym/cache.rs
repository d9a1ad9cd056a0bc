//! On-disk storage for d-matrices.
//!
//! One JSON file per degree, named `dmatrix-v1-n{n}.json`:
//!
//! ```json
//! {"format":"ncstab-dmatrix","version":1,"n":3,
//!  "compositions":[[1,1,1],[1,2],[2,1],[3]],
//!  "entries":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}
//! ```
//!
//! `entries[a][b]` counts the standard tableaux of shape `compositions[a]`
//! with descent composition `compositions[b]`. Files that fail to parse or
//! do not match the expected composition list are ignored and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::DMatrix;
use crate::shapes::Composition;

pub const CACHE_DIR_ENV: &str = "NCSTAB_CACHE_DIR";
const FORMAT: &str = "ncstab-dmatrix";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    n: usize,
    compositions: Vec<Composition>,
    entries: Vec<Vec<u64>>,
}

/// `$NCSTAB_CACHE_DIR`, else `$XDG_CACHE_HOME/ncstab`, else `$HOME/.cache/ncstab`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("ncstab"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("ncstab"))
}

fn file_for(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("dmatrix-v{VERSION}-n{n}.json"))
}

pub(crate) fn load(dir: &Path, n: usize) -> Option<DMatrix> {
    let text = fs::read_to_string(file_for(dir, n)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    let expected = Composition::all_of_size(n);
    let square = file.entries.len() == expected.len() && file.entries.iter().all(|r| r.len() == expected.len());
    (file.format == FORMAT && file.version == VERSION && file.n == n && file.compositions == expected && square)
        .then_some(DMatrix { n, compositions: file.compositions, entries: file.entries })
}

/// Best effort: a cache that cannot be written is simply not used.
pub(crate) fn store(dir: &Path, d: &DMatrix) {
    let file = CacheFile {
        format: FORMAT.into(),
        version: VERSION,
        n: d.n,
        compositions: d.compositions.clone(),
        entries: d.entries.clone(),
    };
    let Ok(text) = serde_json::to_string(&file) else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let target = file_for(dir, d.n);
    let tmp = target.with_extension(format!("json.tmp{}", std::process::id()));
    if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &target).is_err() {
        let _ = fs::remove_file(&tmp);
    }
}
