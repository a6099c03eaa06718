//! Persistent count cache: one JSON file, replaced atomically on save.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tempfile::NamedTempFile;
use vinc_core::enumeration::{count_pattern, stat_distribution, StatTable};
use vinc_core::patterns::{Pattern, StatKind};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    engine_version: String,
    entries: BTreeMap<String, Value>,
}

/// Counts and statistic tables keyed by `pattern|n|kind`, where kind is a
/// statistic name or `count`. Deleting the file only costs recomputation.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Value>,
    dirty: bool,
}

impl Cache {
    pub fn disabled() -> Self {
        Self::default()
    }

    /// Loads `path`. A missing file starts empty; an unreadable or corrupt one
    /// is reported on `warn` and ignored, as is one from another engine version.
    pub fn open(path: &Path, warn: &mut dyn Write) -> Self {
        let mut cache = Cache { path: Some(path.to_path_buf()), ..Self::default() };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return cache,
            Err(e) => {
                let _ = writeln!(warn, "warning: ignoring cache {}: {e}", path.display());
                return cache;
            }
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(f) if f.schema_version == SCHEMA_VERSION && f.engine_version == ENGINE_VERSION => {
                cache.entries = f.entries;
            }
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(warn, "warning: ignoring corrupt cache {}: {e}", path.display());
            }
        }
        cache
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&mut self, p: &Pattern, n: usize) -> u64 {
        let key = format!("{p}|{n}|count");
        if let Some(c) = self.entries.get(&key).and_then(Value::as_u64) {
            return c;
        }
        let c = count_pattern(p, n);
        self.insert(key, Value::from(c));
        c
    }

    pub fn table(&mut self, p: &Pattern, n: usize, kind: StatKind) -> StatTable {
        let key = format!("{p}|{n}|{kind}");
        if let Some(t) = self
            .entries
            .get(&key)
            .and_then(|v| serde_json::from_value::<StatTable>(v.clone()).ok())
            .filter(|t| t.kind() == kind)
        {
            return t;
        }
        let t = stat_distribution(p, n, kind);
        self.insert(key, serde_json::to_value(&t).expect("tables serialize"));
        t
    }

    fn insert(&mut self, key: String, value: Value) {
        if self.path.is_some() {
            self.entries.insert(key, value);
            self.dirty = true;
        }
    }

    /// Writes the cache back if anything was added.
    pub fn save(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            entries: std::mem::take(&mut self.entries),
        };
        let mut tmp = NamedTempFile::new_in(dir)?;
        let written = serde_json::to_writer(&mut tmp, &file).map_err(io::Error::from);
        self.entries = file.entries;
        written?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        self.dirty = false;
        Ok(())
    }
}
