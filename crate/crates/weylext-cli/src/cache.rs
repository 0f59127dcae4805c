//! Results cache: one JSON object per line, rewritten atomically.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Changes whenever a result could change.
pub const VERSION_TAG: &str = concat!("weylext-", env!("CARGO_PKG_VERSION"), "-r1");

const FILE_NAME: &str = "results.jsonl";

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    value: serde_json::Value,
}

pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, serde_json::Value>,
    dirty: bool,
}

fn tagged(case: &str) -> String {
    format!("{VERSION_TAG}|{case}")
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut entries = BTreeMap::new();
        let mut dirty = false;
        match fs::read_to_string(&path) {
            Ok(text) => {
                for (no, raw) in text.lines().enumerate() {
                    if raw.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<Line>(raw) {
                        Ok(l) if l.key.starts_with(&tagged("")) => {
                            entries.insert(l.key, l.value);
                        }
                        Ok(_) => dirty = true,
                        Err(e) => {
                            eprintln!("warning: skipping corrupt cache line {} in {}: {e}", no + 1, path.display());
                            dirty = true;
                        }
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache { path, entries, dirty })
    }

    pub fn get<T: for<'de> Deserialize<'de>>(&self, case: &str) -> Option<T> {
        let v = self.entries.get(&tagged(case))?;
        match serde_json::from_value(v.clone()) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("warning: ignoring unreadable cache entry {case:?}: {e}");
                None
            }
        }
    }

    pub fn put<T: Serialize>(&mut self, case: &str, value: &T) {
        let v = serde_json::to_value(value).expect("cache values serialize");
        self.entries.insert(tagged(case), v);
        self.dirty = true;
    }

    /// Writes a sibling temp file, then renames it over the cache.
    pub fn save(&mut self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let tmp = self.path.with_extension(format!("tmp.{}", std::process::id()));
        {
            let mut f = io::BufWriter::new(fs::File::create(&tmp)?);
            for (key, value) in &self.entries {
                let line = Line { key: key.clone(), value: value.clone() };
                serde_json::to_writer(&mut f, &line)?;
                f.write_all(b"\n")?;
            }
            f.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        self.dirty = false;
        Ok(())
    }

    #[cfg(test)]
    pub fn path(&self) -> &Path {
        &self.path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path()).unwrap();
        c.put("a", &vec![1, 2]);
        c.save().unwrap();
        let mut text = fs::read_to_string(c.path()).unwrap();
        text.push_str("{not json\n");
        text.push_str("{\"key\":\"old-tag|a\",\"value\":[9]}\n");
        fs::write(c.path(), text).unwrap();
        let c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.get::<Vec<i32>>("a"), Some(vec![1, 2]));
        assert_eq!(c.entries.len(), 1);
    }
}
