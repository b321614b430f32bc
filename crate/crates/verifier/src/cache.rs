//! On-disk character table cache keyed by group fingerprint. Loaded tables
//! are re-verified before use.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pichar_core::charops::ClassFunction;
use pichar_core::chartable::{character_table, verify_table, CharacterTable};
use pichar_core::Group;
use pichar_cyclotomic::Cyclotomic;
use serde::{Deserialize, Serialize};

use crate::error::VerifyError;
use crate::spec::fingerprint;

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "PICHAR_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    fingerprint: String,
    class_sizes: Vec<usize>,
    rows: Vec<Vec<Cyclotomic>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// A file was present but unusable.
    Rejected(String),
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// `PICHAR_CACHE` if set, else `dir`.
    pub fn resolve(dir: Option<PathBuf>) -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or(dir)
            .map(TableCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, fp: &str) -> PathBuf {
        self.dir.join(format!("{}.json", fp.replace(':', "-")))
    }

    pub fn put(&self, table: &CharacterTable) -> Result<(), VerifyError> {
        let g = table.group();
        let file = CacheFile {
            format: FORMAT_VERSION,
            fingerprint: fingerprint(g),
            class_sizes: g.classes().sizes(),
            rows: table.rows().iter().map(|r| r.values().to_vec()).collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&file.fingerprint);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&file)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn get(&self, g: &Arc<Group>) -> (Option<CharacterTable>, Lookup) {
        let fp = fingerprint(g);
        let path = self.path_for(&fp);
        let Ok(text) = fs::read_to_string(&path) else {
            return (None, Lookup::Miss);
        };
        let file: CacheFile = match serde_json::from_str(&text) {
            Ok(f) => f,
            Err(e) => return (None, Lookup::Rejected(format!("unreadable: {e}"))),
        };
        if file.format != FORMAT_VERSION {
            return (None, Lookup::Rejected(format!("format {}", file.format)));
        }
        if file.fingerprint != fp || file.class_sizes != g.classes().sizes() {
            return (None, Lookup::Miss);
        }
        let k = g.classes().len();
        if file.rows.len() != k || file.rows.iter().any(|r| r.len() != k) {
            return (None, Lookup::Rejected("wrong shape".into()));
        }
        let rows = file.rows.into_iter().map(|v| ClassFunction::new(g, v)).collect();
        let table = CharacterTable::from_rows(g, rows);
        match verify_table(&table) {
            Ok(()) => (Some(table), Lookup::Hit),
            Err(v) => (None, Lookup::Rejected(format!("verification failed: {v:?}"))),
        }
    }

    /// Cached table if valid, else compute and store it. A rejected file is
    /// reported on stderr and replaced.
    pub fn load_or_compute(&self, g: &Arc<Group>) -> Result<(CharacterTable, Lookup), VerifyError> {
        let (t, status) = self.get(g);
        if let Some(t) = t {
            return Ok((t, status));
        }
        if let Lookup::Rejected(why) = &status {
            eprintln!("warning: cache entry for {} rejected ({why}); recomputing", fingerprint(g));
        }
        let t = character_table(g)?;
        self.put(&t)?;
        Ok((t, status))
    }
}
