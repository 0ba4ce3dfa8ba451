//! Line-delimited JSON record store under `<corpus root>/store`.
//!
//! Each pipeline stage reads the records the previous stage left here, so
//! a corpus directory can be resumed from any stage. One file per source,
//! one JSON document per line.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use patcorpus::family::DocumentPair;
use patcorpus::ingest::{PatentDocument, PriorityRecord};

pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn new(corpus_root: &Path) -> Self {
        Store { dir: corpus_root.join("store") }
    }

    pub fn jp_path(&self) -> PathBuf {
        self.dir.join("jpo.jsonl")
    }

    pub fn us_path(&self) -> PathBuf {
        self.dir.join("uspto.jsonl")
    }

    pub fn docdb_path(&self) -> PathBuf {
        self.dir.join("docdb.jsonl")
    }

    pub fn pairs_path(&self) -> PathBuf {
        self.dir.join("pairs.jsonl")
    }

    pub fn write_jp(&self, docs: &[PatentDocument]) -> Result<()> {
        write_jsonl(&self.jp_path(), docs)
    }

    pub fn write_us(&self, docs: &[PatentDocument]) -> Result<()> {
        write_jsonl(&self.us_path(), docs)
    }

    pub fn write_docdb(&self, records: &[PriorityRecord]) -> Result<()> {
        write_jsonl(&self.docdb_path(), records)
    }

    pub fn write_pairs(&self, pairs: &[DocumentPair]) -> Result<()> {
        write_jsonl(&self.pairs_path(), pairs)
    }

    pub fn read_jp(&self) -> Result<Vec<PatentDocument>> {
        read_jsonl(&self.jp_path(), "parse")
    }

    pub fn read_us(&self) -> Result<Vec<PatentDocument>> {
        read_jsonl(&self.us_path(), "parse")
    }

    pub fn read_docdb(&self) -> Result<Vec<PriorityRecord>> {
        read_jsonl(&self.docdb_path(), "parse")
    }

    pub fn read_pairs(&self) -> Result<Vec<DocumentPair>> {
        read_jsonl(&self.pairs_path(), "docalign")
    }
}

fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))?;
    }
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut writer = BufWriter::new(file);
    for item in items {
        serde_json::to_writer(&mut writer, item)?;
        writer.write_all(b"\n")?;
    }
    writer.flush().with_context(|| format!("cannot write {}", path.display()))
}

fn read_jsonl<T: DeserializeOwned>(path: &Path, produced_by: &str) -> Result<Vec<T>> {
    let file = File::open(path).with_context(|| {
        format!(
            "record store file {} not found; run the {produced_by} stage on this corpus first",
            path.display()
        )
    })?;
    let mut items = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.with_context(|| format!("cannot read {}", path.display()))?;
        if line.is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: corrupt record", path.display(), lineno + 1))?;
        items.push(item);
    }
    Ok(items)
}
