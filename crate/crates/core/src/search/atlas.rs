//! Atlas records and the line-delimited atlas file.
//!
//! An atlas file is a header line followed by one JSON record per line,
//! sorted by canonical key `(d, g', theta)`. The layout is documented in
//! `docs/atlas-schema.md`; bump [`SCHEMA_VERSION`] on any field change.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{verdict, Verdict};
use crate::datum::{canonicalize, total_genus, CanonicalDatum, MonodromyDatum};
use crate::eigenspaces::{chevalley_weil, EigenspaceProfile};
use crate::error::{Error, Result};
use crate::factors::{decompose, FactorList};

use super::bounds::{SearchBounds, SearchOptions};
use super::enumerate::{enumerate_data, with_pool};

pub const SCHEMA_NAME: &str = "cycmon-atlas";
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub bounds_hash: String,
    pub tool_version: String,
}

impl RecordMeta {
    pub fn for_bounds(bounds: &SearchBounds) -> Self {
        RecordMeta { bounds_hash: bounds.hash(), tool_version: TOOL_VERSION.to_string() }
    }

    /// Metadata for a datum analyzed outside any search.
    pub fn standalone() -> Self {
        RecordMeta { bounds_hash: String::new(), tool_version: TOOL_VERSION.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub datum: CanonicalDatum,
    pub genus: u64,
    pub profile: EigenspaceProfile,
    pub factors: FactorList,
    /// Absent for zero-dimensional families.
    pub verdict: Option<Verdict>,
    pub meta: RecordMeta,
}

impl AtlasRecord {
    pub fn compute(datum: &CanonicalDatum, meta: RecordMeta) -> Result<Self> {
        let profile = chevalley_weil(datum)?;
        let factors = decompose(&profile, datum.genus_base());
        let verdict = match verdict(datum) {
            Ok(v) => Some(v),
            Err(Error::ZeroDimensionalFamily) => None,
            Err(e) => return Err(e),
        };
        Ok(AtlasRecord {
            datum: datum.clone(),
            genus: total_genus(datum),
            profile,
            factors,
            verdict,
            meta,
        })
    }

    /// Canonicalizes first, so any representative of the orbit works.
    pub fn analyze(datum: &MonodromyDatum, meta: RecordMeta) -> Result<Self> {
        Self::compute(&canonicalize(datum), meta)
    }

    pub fn key(&self) -> String {
        self.datum.to_string()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasHeader {
    pub schema: String,
    pub schema_version: u32,
    pub tool_version: String,
    pub bounds: SearchBounds,
    pub bounds_hash: String,
    pub records: usize,
}

impl AtlasHeader {
    pub fn new(bounds: &SearchBounds, records: usize) -> Self {
        AtlasHeader {
            schema: SCHEMA_NAME.to_string(),
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            bounds: bounds.clone(),
            bounds_hash: bounds.hash(),
            records,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    pub header: AtlasHeader,
    pub records: Vec<AtlasRecord>,
}

impl Atlas {
    pub fn new(bounds: &SearchBounds, records: Vec<AtlasRecord>) -> Self {
        Atlas { header: AtlasHeader::new(bounds, records.len()), records }
    }

    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        let header = serde_json::to_string(&self.header).expect("header serializes");
        writeln!(out, "{header}")?;
        for record in &self.records {
            writeln!(out, "{}", record.to_json_line())?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        buf
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let file = File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    pub fn read_from(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines();
        let first = match lines.next() {
            Some(line) => line?,
            None => return Err(Error::CorruptAtlas { line: 1, reason: "empty file".into() }),
        };
        let raw: Value = serde_json::from_str(&first)
            .map_err(|e| Error::CorruptAtlas { line: 1, reason: e.to_string() })?;
        let schema = raw.get("schema").and_then(Value::as_str);
        let version = raw.get("schema_version").and_then(Value::as_u64);
        match (schema, version) {
            (Some(SCHEMA_NAME), Some(v)) if v == SCHEMA_VERSION as u64 => {}
            (Some(SCHEMA_NAME), Some(v)) => {
                return Err(Error::SchemaMismatch(format!(
                    "file has schema version {v}, expected {SCHEMA_VERSION}"
                )))
            }
            (None, _) | (_, None) => {
                return Err(Error::CorruptAtlas { line: 1, reason: "missing schema header".into() })
            }
            (Some(other), _) => {
                return Err(Error::SchemaMismatch(format!(
                    "file has schema {other:?}, expected {SCHEMA_NAME:?}"
                )))
            }
        }
        let header: AtlasHeader = serde_json::from_value(raw)
            .map_err(|e| Error::CorruptAtlas { line: 1, reason: e.to_string() })?;

        let mut records = Vec::with_capacity(header.records);
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: AtlasRecord = serde_json::from_str(&line)
                .map_err(|e| Error::CorruptAtlas { line: i + 2, reason: e.to_string() })?;
            records.push(record);
        }
        if records.len() != header.records {
            return Err(Error::CorruptAtlas {
                line: records.len() + 2,
                reason: format!("header announces {} records, found {}", header.records, records.len()),
            });
        }
        Ok(Atlas { header, records })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path)?;
        Self::read_from(BufReader::new(file))
    }
}

/// Analyzes every canonical datum within `bounds`.
pub fn build_records(bounds: &SearchBounds, options: &SearchOptions) -> Result<Vec<AtlasRecord>> {
    let data = enumerate_data(bounds, options)?;
    let meta = RecordMeta::for_bounds(bounds);
    let records: Result<Vec<AtlasRecord>> = with_pool(options.workers, || {
        data.par_iter()
            .map(|datum| AtlasRecord::compute(datum, meta.clone()))
            .collect()
    })?;
    records
}

pub fn build_atlas(bounds: &SearchBounds, options: &SearchOptions) -> Result<Atlas> {
    Ok(Atlas::new(bounds, build_records(bounds, options)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangedRecord {
    pub key: String,
    pub fields: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiffReport {
    pub added: Vec<String>,
    pub removed: Vec<String>,
    pub changed: Vec<ChangedRecord>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.changed.is_empty()
    }
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_values(&sub, u, v, out),
                    _ => out.push(sub),
                }
            }
        }
        _ if a != b => out.push(path.to_string()),
        _ => {}
    }
}

fn comparable(record: &AtlasRecord) -> Value {
    let mut value = serde_json::to_value(record).expect("record serializes");
    if let Value::Object(map) = &mut value {
        map.remove("meta");
    }
    value
}

/// Differences between stored records and a fresh scan, keyed by datum.
/// Search metadata is not compared.
pub fn diff_records(stored: &[AtlasRecord], fresh: &[AtlasRecord]) -> DiffReport {
    let old: BTreeMap<String, &AtlasRecord> = stored.iter().map(|r| (r.key(), r)).collect();
    let new: BTreeMap<String, &AtlasRecord> = fresh.iter().map(|r| (r.key(), r)).collect();
    let mut report = DiffReport::default();
    for (key, record) in &new {
        match old.get(key) {
            None => report.added.push(key.clone()),
            Some(previous) => {
                let mut fields = Vec::new();
                diff_values("", &comparable(previous), &comparable(record), &mut fields);
                if !fields.is_empty() {
                    report.changed.push(ChangedRecord { key: key.clone(), fields });
                }
            }
        }
    }
    report.removed = old.keys().filter(|k| !new.contains_key(*k)).cloned().collect();
    report
}

pub fn regression_compare(atlas_path: &Path, fresh: &[AtlasRecord]) -> Result<DiffReport> {
    let stored = Atlas::load(atlas_path)?;
    Ok(diff_records(&stored.records, fresh))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_atlas() -> Atlas {
        let bounds = SearchBounds::up_to_genus(3);
        build_atlas(&bounds, &SearchOptions::with_workers(2)).unwrap()
    }

    #[test]
    fn write_read_round_trip() {
        let atlas = small_atlas();
        assert!(!atlas.records.is_empty());
        let bytes = atlas.to_bytes();
        let back = Atlas::read_from(bytes.as_slice()).unwrap();
        assert_eq!(back, atlas);
        assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn rejects_foreign_files() {
        let err = Atlas::read_from("".as_bytes()).unwrap_err();
        assert_eq!(err.code(), "CorruptAtlas");
        let err = Atlas::read_from("{\"schema\":\"other\",\"schema_version\":1}\n".as_bytes())
            .unwrap_err();
        assert_eq!(err.code(), "SchemaMismatch");
        let err = Atlas::read_from(
            format!("{{\"schema\":\"{SCHEMA_NAME}\",\"schema_version\":99}}\n").as_bytes(),
        )
        .unwrap_err();
        assert_eq!(err.code(), "SchemaMismatch");

        let mut bytes = small_atlas().to_bytes();
        bytes.extend_from_slice(b"{not json\n");
        assert_eq!(Atlas::read_from(bytes.as_slice()).unwrap_err().code(), "CorruptAtlas");
    }

    #[test]
    fn zero_dimensional_records_have_no_verdict() {
        let atlas = small_atlas();
        let zero = atlas
            .records
            .iter()
            .find(|r| r.datum.genus_base() == 0 && r.datum.branch_points() == 3)
            .unwrap();
        assert!(zero.verdict.is_none());
    }

    #[test]
    fn diff_names_changed_field() {
        let atlas = small_atlas();
        assert!(diff_records(&atlas.records, &atlas.records).is_empty());

        let mut edited = atlas.records.clone();
        edited[0].genus += 1;
        let report = diff_records(&edited, &atlas.records);
        assert_eq!(report.changed.len(), 1);
        assert_eq!(report.changed[0].fields, vec!["genus".to_string()]);
        assert!(report.added.is_empty() && report.removed.is_empty());

        let report = diff_records(&atlas.records[1..], &atlas.records);
        assert_eq!(report.added, vec![atlas.records[0].key()]);
        let report = diff_records(&atlas.records, &atlas.records[1..]);
        assert_eq!(report.removed, vec![atlas.records[0].key()]);
    }
}
