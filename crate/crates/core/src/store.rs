//! Append-only JSON-lines store of [`ExtremalRecord`]s.
//!
//! Each line is one record. Reading keeps the last line per
//! `(m, forbidden, rank, method)`, so an upsert is an append. Unparseable
//! lines are skipped with a warning.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};
use crate::record::{ExtremalRecord, Method, Verdict};

type Key = (usize, String, usize, Method);

fn key(r: &ExtremalRecord) -> Key {
    (r.m, r.forbidden.clone(), r.rank, r.method)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Store(format!("{}: {e}", path.display()))
}

#[derive(Clone, Debug, Default)]
pub struct RecordFilter {
    pub m: Option<RangeInclusive<usize>>,
    pub forbidden: Option<String>,
    pub method: Option<Method>,
    pub verdict: Option<Verdict>,
    pub rank: Option<usize>,
}

impl RecordFilter {
    pub fn matches(&self, r: &ExtremalRecord) -> bool {
        self.m.as_ref().is_none_or(|range| range.contains(&r.m))
            && self.forbidden.as_ref().is_none_or(|f| *f == r.forbidden)
            && self.method.is_none_or(|m| m == r.method)
            && self.verdict.is_none_or(|v| Some(v) == r.verdict)
            && self.rank.is_none_or(|k| k == r.rank)
    }
}

#[derive(Clone, Debug)]
pub struct RecordStore {
    path: PathBuf,
}

impl RecordStore {
    /// The file is created on first write.
    pub fn open(path: impl Into<PathBuf>) -> Self {
        RecordStore { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends records; later lines win on read.
    pub fn upsert<'a, I>(&self, records: I) -> Result<usize>
    where
        I: IntoIterator<Item = &'a ExtremalRecord>,
    {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| io_err(&self.path, e))?;
        let mut w = BufWriter::new(file);
        let mut n = 0;
        for r in records {
            let line = serde_json::to_string(r).map_err(|e| Error::Store(e.to_string()))?;
            writeln!(w, "{line}").map_err(|e| io_err(&self.path, e))?;
            n += 1;
        }
        w.flush().map_err(|e| io_err(&self.path, e))?;
        Ok(n)
    }

    /// Current records sorted by key. A missing file is an empty store.
    pub fn load(&self) -> Result<Vec<ExtremalRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(io_err(&self.path, e)),
        };
        let mut latest: BTreeMap<Key, ExtremalRecord> = BTreeMap::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| io_err(&self.path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ExtremalRecord>(&line) {
                Ok(r) => {
                    latest.insert(key(&r), r);
                }
                Err(e) => warn!("{}:{}: skipping corrupt record: {e}", self.path.display(), i + 1),
            }
        }
        Ok(latest.into_values().collect())
    }

    pub fn query(&self, filter: &RecordFilter) -> Result<Vec<ExtremalRecord>> {
        Ok(self.load()?.into_iter().filter(|r| filter.matches(r)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(m: usize, rank: usize, rho: f64) -> ExtremalRecord {
        ExtremalRecord {
            m,
            forbidden: "gem".into(),
            rank,
            graph6: "Bw".into(),
            rho,
            method: Method::Exhaustive,
            margin: None,
            indistinguishable: false,
            verdict: None,
        }
    }

    #[test]
    fn last_write_wins_and_corrupt_lines_skip() {
        let dir = tempfile::tempdir().unwrap();
        let store = RecordStore::open(dir.path().join("r.jsonl"));
        assert!(store.load().unwrap().is_empty());
        store.upsert(&[rec(3, 1, 1.0), rec(3, 2, 0.5)]).unwrap();
        std::fs::OpenOptions::new()
            .append(true)
            .open(store.path())
            .unwrap()
            .write_all(b"{not json\n\n")
            .unwrap();
        store.upsert(&[rec(3, 1, 2.0)]).unwrap();
        let all = store.load().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].rho, 2.0);
        let f = RecordFilter {
            rank: Some(2),
            ..Default::default()
        };
        assert_eq!(store.query(&f).unwrap(), vec![rec(3, 2, 0.5)]);
    }
}
