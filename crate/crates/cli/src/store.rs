//! Append-only classification store: `records.jsonl` plus one witness file
//! per realizable class under `witnesses/`.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use omreal_core::Realization;
use serde::{Deserialize, Serialize};

use crate::format::{witness_name, witness_text};

pub const RECORDS: &str = "records.jsonl";
pub const WITNESSES: &str = "witnesses";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub cost_limit: u32,
    pub max_cost_limit: u32,
    pub random_trials: u32,
    pub full_branching: bool,
    /// Cost limit of the last lengthening pass.
    pub final_cost_limit: u32,
    /// Search nodes visited; a deterministic stand-in for run time.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// `n r signs` of the reorientation-class canonical form.
    pub key: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Path relative to the store directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub seed: u64,
    pub budget: BudgetUsed,
}

impl Record {
    pub fn is_realizable(&self) -> bool {
        self.status == "realizable"
    }
}

pub struct Store {
    dir: PathBuf,
    records: BTreeMap<String, Record>,
    file: File,
}

impl Store {
    /// Opens or creates a store. A final line without its newline is the
    /// trace of an interrupted append and is discarded; any other unreadable
    /// line makes the store corrupt.
    pub fn open(dir: &Path) -> Result<Store> {
        fs::create_dir_all(dir.join(WITNESSES)).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(RECORDS);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let complete = match text.rfind('\n') {
            Some(k) => k + 1,
            None => 0,
        };
        if complete < text.len() {
            log::warn!("discarding an interrupted record at the end of {}", path.display());
        }
        let mut records = BTreeMap::new();
        for (k, line) in text[..complete].lines().enumerate() {
            let rec: Record = serde_json::from_str(line)
                .with_context(|| format!("corrupt store: {} line {}", path.display(), k + 1))?;
            if records.insert(rec.key.clone(), rec).is_some() {
                bail!("corrupt store: {} line {} repeats a key", path.display(), k + 1);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .with_context(|| format!("opening {}", path.display()))?;
        file.set_len(complete as u64)?;
        let mut store = Store { dir: dir.to_path_buf(), records, file };
        store.seek_end()?;
        Ok(store)
    }

    fn seek_end(&mut self) -> Result<()> {
        use std::io::Seek;
        self.file.seek(std::io::SeekFrom::End(0))?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn contains(&self, key: &str) -> bool {
        self.records.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&Record> {
        self.records.get(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records in key order.
    pub fn records(&self) -> impl Iterator<Item = &Record> {
        self.records.values()
    }

    /// Writes through a temporary file so a witness is either absent or
    /// complete. Returns the path relative to the store.
    pub fn write_witness(&self, key: &str, v: &Realization) -> Result<String> {
        let rel = format!("{WITNESSES}/{}", witness_name(key));
        let path = self.dir.join(&rel);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, witness_text(v)).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path)?;
        Ok(rel)
    }

    pub fn read_witness(&self, rel: &str) -> Result<Realization> {
        let path = self.dir.join(rel);
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        crate::format::parse_witness(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn append(&mut self, rec: Record) -> Result<()> {
        if self.records.contains_key(&rec.key) {
            bail!("record for {} already final", rec.key);
        }
        let mut line = serde_json::to_string(&rec)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.sync_data()?;
        self.records.insert(rec.key.clone(), rec);
        Ok(())
    }
}
