//! On-disk store of `H̃_λ` expansions.
//!
//! One file per directory, `macdonald.cache`:
//!
//! ```text
//! MACDONALD-CACHE v1
//! 2,1;s;3=>1 | 2,1=>1 q:1 + 1 t:1 | 1,1,1=>1 q:1 t:1;<sha256 of the first three fields>
//! ```
//!
//! Records whose checksum does not match are ignored, recomputed on demand
//! and dropped from the file at the next write. Writes replace the whole
//! file atomically, so concurrent readers never see a partial file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::arith::{parse_poly, MultiPoly};
use crate::error::{Error, Result};
use crate::macdonald::{modified_htilde, HtildeSource, MacdonaldExpansion};
use crate::partitions::Partition;
use crate::symfunc::{Basis, SymFunc};

pub const HEADER: &str = "MACDONALD-CACHE v1";
pub const FILE_NAME: &str = "macdonald.cache";

fn checksum(body: &str) -> String {
    Sha256::digest(body.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `λ;basis;expansion` for one expansion.
pub fn record_body(e: &MacdonaldExpansion) -> String {
    let terms: Vec<String> = e
        .expansion
        .terms()
        .iter()
        .map(|(key, c)| format!("{}=>{}", key[0], c))
        .collect();
    format!("{};{};{}", e.lambda, e.basis.symbol(), terms.join(" | "))
}

/// Full record line including the checksum.
pub fn record_line(e: &MacdonaldExpansion) -> String {
    let body = record_body(e);
    let sum = checksum(&body);
    format!("{body};{sum}")
}

/// Parses and validates a record line.
pub fn parse_record(line: &str) -> Result<MacdonaldExpansion> {
    let (body, sum) = line
        .rsplit_once(';')
        .ok_or_else(|| Error::Cache("record without checksum".into()))?;
    if checksum(body) != sum {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let mut fields = body.splitn(3, ';');
    let (Some(lambda), Some(basis), Some(expansion)) =
        (fields.next(), fields.next(), fields.next())
    else {
        return Err(Error::Cache("record needs three fields".into()));
    };
    let lambda: Partition = lambda.parse()?;
    let basis = Basis::from_symbol(basis)
        .ok_or_else(|| Error::Cache(format!("unknown basis '{basis}'")))?;
    let n = lambda.size();
    let mut f: SymFunc<MultiPoly> = SymFunc::zero(1, n, basis);
    for term in expansion.split(" | ").filter(|t| !t.is_empty()) {
        let (nu, c) = term
            .split_once("=>")
            .ok_or_else(|| Error::Cache(format!("bad term '{term}'")))?;
        f.add_term(vec![nu.parse()?], parse_poly(c)?)?;
    }
    Ok(MacdonaldExpansion {
        lambda,
        basis,
        expansion: f,
    })
}

struct State {
    entries: BTreeMap<(Partition, Basis), Arc<MacdonaldExpansion>>,
    writable: bool,
    warnings: Vec<String>,
}

/// `H̃_λ` store backed by a cache file.
pub struct DiskCache {
    path: PathBuf,
    state: Mutex<State>,
}

impl DiskCache {
    /// Opens (or creates) the cache in `dir`. Fails if the directory cannot
    /// be created.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let path = dir.join(FILE_NAME);
        let mut entries = BTreeMap::new();
        let mut warnings = Vec::new();
        if let Ok(text) = fs::read_to_string(&path) {
            let mut lines = text.lines();
            if lines.next() == Some(HEADER) {
                for (i, line) in lines.enumerate() {
                    match parse_record(line) {
                        Ok(e) => {
                            entries.insert((e.lambda.clone(), e.basis), Arc::new(e));
                        }
                        Err(err) => warnings.push(format!(
                            "{}:{}: {err}; record ignored",
                            path.display(),
                            i + 2
                        )),
                    }
                }
            } else {
                warnings.push(format!(
                    "{}: unrecognized header; cache rebuilt",
                    path.display()
                ));
            }
        }
        Ok(DiskCache {
            path,
            state: Mutex::new(State {
                entries,
                writable: true,
                warnings,
            }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Warnings collected so far (ignored records, failed writes).
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut self.state.lock().unwrap().warnings)
    }

    fn write(&self, state: &State) -> std::io::Result<()> {
        let dir = self.path.parent().unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        writeln!(tmp, "{HEADER}")?;
        for e in state.entries.values() {
            writeln!(tmp, "{}", record_line(e))?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(&self.path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the cached value for `(λ, basis)`, or runs `producer` and
    /// stores its result.
    pub fn get_or_compute<F>(
        &self,
        lambda: &Partition,
        basis: Basis,
        producer: F,
    ) -> Result<Arc<MacdonaldExpansion>>
    where
        F: FnOnce() -> Result<MacdonaldExpansion>,
    {
        if let Some(e) = self
            .state
            .lock()
            .unwrap()
            .entries
            .get(&(lambda.clone(), basis))
        {
            return Ok(e.clone());
        }
        let value = Arc::new(producer()?);
        let mut state = self.state.lock().unwrap();
        state.entries.insert((lambda.clone(), basis), value.clone());
        if state.writable {
            if let Err(e) = self.write(&state) {
                state.writable = false;
                state.warnings.push(format!(
                    "{}: {e}; continuing without writing the cache",
                    self.path.display()
                ));
            }
        }
        Ok(value)
    }
}

impl HtildeSource for DiskCache {
    fn htilde(&self, lambda: &Partition, basis: Basis) -> Result<Arc<MacdonaldExpansion>> {
        self.get_or_compute(lambda, basis, || modified_htilde(lambda, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_repair() {
        let dir = tempfile::tempdir().unwrap();
        let lambda: Partition = "2,1".parse().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let first = cache.htilde(&lambda, Basis::S).unwrap();
        let text = fs::read_to_string(cache.path()).unwrap();
        assert!(text.starts_with(HEADER));

        let warm = DiskCache::open(dir.path()).unwrap();
        let mut called = false;
        let second = warm
            .get_or_compute(&lambda, Basis::S, || {
                called = true;
                modified_htilde(&lambda, Basis::S)
            })
            .unwrap();
        assert!(!called);
        assert_eq!(record_line(&first), record_line(&second));

        let tampered = text.replace("q:1", "q:2");
        fs::write(cache.path(), &tampered).unwrap();
        let cold = DiskCache::open(dir.path()).unwrap();
        assert_eq!(cold.take_warnings().len(), 1);
        let again = cold.htilde(&lambda, Basis::S).unwrap();
        assert_eq!(*again, *first);
        assert_eq!(fs::read_to_string(cache.path()).unwrap(), text);
    }
}
