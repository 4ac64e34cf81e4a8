//! Append-only JSON-lines result cache.
//!
//! A header line `{"engine_version": "..."}` opens a section; records below it
//! belong to that engine version. Sections from other versions are ignored and
//! a fresh header is appended before new records.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufWriter, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use smale5_core::{classify, LinkCandidate, ResultRecord, Support, ENGINE_VERSION};

/// Canonical cache key `(d, sorted w)`.
type Key = (u64, [u64; 4]);

#[derive(Serialize, Deserialize)]
struct Header {
    engine_version: String,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, ResultRecord>,
    fresh: Mutex<Vec<ResultRecord>>,
    /// Whether the last header in the file carries the current version.
    current_section: bool,
    stale: usize,
    torn_tail: bool,
}

/// Strips the fields that depend on how a candidate was produced.
fn normalize(mut r: ResultRecord) -> ResultRecord {
    r.yy_type = None;
    r.exponents = None;
    r.provenance = None;
    r
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Cache {
            path: path.clone(),
            entries: HashMap::new(),
            fresh: Mutex::new(Vec::new()),
            current_section: false,
            stale: 0,
            torn_tail: false,
        };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e).with_context(|| format!("cannot open cache {}", path.display())),
        };
        cache.torn_tail = !text.is_empty() && !text.ends_with('\n');
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            if let Ok(h) = serde_json::from_str::<Header>(line) {
                cache.current_section = h.engine_version == ENGINE_VERSION;
                continue;
            }
            // a torn final line from an interrupted run is skipped like a stale one
            match serde_json::from_str::<ResultRecord>(line) {
                Ok(r) if cache.current_section => {
                    cache.entries.insert((r.degree, r.weights), r);
                }
                _ => cache.stale += 1,
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines ignored on load (other engine versions or unreadable).
    pub fn stale(&self) -> usize {
        self.stale
    }

    /// [`classify`] through the cache. Only generic-support candidates are
    /// cached, since their record depends on `(w, d)` alone.
    pub fn classify(&self, c: &LinkCandidate) -> smale5_core::Result<ResultRecord> {
        if c.support != Support::Generic {
            return classify(c);
        }
        let key = (c.degree, *c.sorted_weights());
        if let Some(hit) = self.entries.get(&key) {
            let mut r = hit.clone();
            r.yy_type = c.yy_type;
            r.exponents = c.exponents;
            return Ok(r);
        }
        let r = classify(c)?;
        self.fresh.lock().expect("cache lock poisoned").push(normalize(r.clone()));
        Ok(r)
    }

    /// Appends records computed since the last flush, in key order.
    pub fn flush(&mut self) -> Result<usize> {
        let mut fresh = std::mem::take(self.fresh.get_mut().expect("cache lock poisoned"));
        fresh.sort_by_key(|r| (r.degree, r.weights));
        fresh.dedup_by_key(|r| (r.degree, r.weights));
        fresh.retain(|r| !self.entries.contains_key(&(r.degree, r.weights)));
        if fresh.is_empty() {
            return Ok(0);
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("cannot write cache {}", self.path.display()))?;
        let mut w = BufWriter::new(file);
        if std::mem::take(&mut self.torn_tail) {
            writeln!(w)?;
        }
        if !self.current_section {
            let h = Header { engine_version: ENGINE_VERSION.to_string() };
            writeln!(w, "{}", serde_json::to_string(&h)?)?;
            self.current_section = true;
        }
        for r in &fresh {
            writeln!(w, "{}", serde_json::to_string(r)?)?;
        }
        w.flush()?;
        let n = fresh.len();
        self.entries.extend(fresh.into_iter().map(|r| ((r.degree, r.weights), r)));
        Ok(n)
    }
}
