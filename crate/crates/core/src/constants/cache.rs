use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::ScalarField;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Mult,
    Pol,
}

/// One cached bound, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub field: ScalarField,
    pub kind: BoundKind,
    pub m: usize,
    pub strategy: String,
    pub log_value: f64,
}

type Key = (ScalarField, BoundKind, usize, String);

/// Bound-table cache keyed by `(field, kind, m, strategy)`.
///
/// Reads are concurrent; writers serialize on the inner lock. The file is a
/// JSON array of [`CacheEntry`] objects in key order, so saving is
/// deterministic.
#[derive(Debug, Default)]
pub struct BoundCache {
    entries: RwLock<BTreeMap<Key, f64>>,
}

impl BoundCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `path`; a missing file gives an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::new());
        }
        let text = fs::read_to_string(path)?;
        let list: Vec<CacheEntry> = serde_json::from_str(&text)?;
        let map = list
            .into_iter()
            .map(|e| ((e.field, e.kind, e.m, e.strategy), e.log_value))
            .collect();
        Ok(Self { entries: RwLock::new(map) })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let list = self.to_entries();
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&list)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn to_entries(&self) -> Vec<CacheEntry> {
        let map = self.entries.read().expect("cache lock poisoned");
        map.iter()
            .map(|((field, kind, m, strategy), &log_value)| CacheEntry {
                field: *field,
                kind: *kind,
                m: *m,
                strategy: strategy.clone(),
                log_value,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, field: ScalarField, kind: BoundKind, m: usize, strategy: &str) -> Option<f64> {
        let map = self.entries.read().expect("cache lock poisoned");
        map.get(&(field, kind, m, strategy.to_owned())).copied()
    }

    pub fn insert(&self, field: ScalarField, kind: BoundKind, m: usize, strategy: &str, log_value: f64) {
        let mut map = self.entries.write().expect("cache lock poisoned");
        map.insert((field, kind, m, strategy.to_owned()), log_value);
    }

    pub fn get_or_insert_with(
        &self,
        field: ScalarField,
        kind: BoundKind,
        m: usize,
        strategy: &str,
        compute: impl FnOnce() -> Result<f64>,
    ) -> Result<f64> {
        if let Some(v) = self.get(field, kind, m, strategy) {
            return Ok(v);
        }
        let v = compute()?;
        self.insert(field, kind, m, strategy, v);
        Ok(v)
    }
}
