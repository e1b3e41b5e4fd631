//! On-disk cache of structure-constant tables.
//!
//! One JSON file per `(g, d, model version)`, named by the SHA-256 of that
//! key. The file records the SHA-256 of its canonical payload; an entry whose
//! key, version or digest does not match is discarded and rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use ihtheta::exact::{format_rational, parse_rational, Rational};
use ihtheta::sym::{total_dimension, ProductTable, SymMonomial};

/// Bumped whenever the monomial encoding or the product rule changes.
pub const MODEL_VERSION: &str = "sym-product-v1";

/// Rings above this total dimension are not cached; their tables would be
/// large and the formula is fast enough to use directly.
pub const MAX_CACHED_DIMENSION: u64 = 256;

pub const CACHE_DIR_ENV: &str = "IHTHETA_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// An entry existed but failed validation and was replaced.
    Rejected,
}

#[derive(Serialize, Deserialize)]
struct Record {
    a: (u64, u32),
    b: (u64, u32),
    product: Vec<(u64, u32, String)>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    model_version: String,
    genus: u32,
    power: u32,
    digest: String,
    records: Vec<Record>,
}

fn records_of(table: &ProductTable) -> Vec<Record> {
    table
        .entries()
        .map(|((a, b), prod)| Record {
            a: (a.odd_mask(), a.tops()),
            b: (b.odd_mask(), b.tops()),
            product: prod
                .iter()
                .map(|(m, q)| (m.odd_mask(), m.tops(), format_rational(q)))
                .collect(),
        })
        .collect()
}

fn digest_of(records: &[Record]) -> String {
    let bytes = serde_json::to_vec(records).expect("records serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn monomial(g: u32, d: u32, (mask, tops): (u64, u32)) -> Option<SymMonomial> {
    let fits = (2 * g >= 64 || mask >> (2 * g) == 0) && mask.count_ones() + tops <= d;
    fits.then(|| SymMonomial::from_mask(mask, tops))
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$IHTHETA_CACHE_DIR`, else `<user cache dir>/ihtheta`.
    pub fn from_env() -> Option<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(Self::new(dir)),
            _ => dirs::cache_dir().map(|d| Self::new(d.join("ihtheta"))),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn is_cacheable(g: u32, d: u32) -> bool {
        total_dimension(g, d).is_some_and(|n| n <= MAX_CACHED_DIMENSION)
    }

    pub fn path_for(&self, g: u32, d: u32) -> PathBuf {
        let key = format!("{MODEL_VERSION}/g={g}/d={d}");
        self.dir
            .join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }

    /// The stored table, or `None` when absent or invalid.
    pub fn load(&self, g: u32, d: u32) -> Option<ProductTable> {
        let text = fs::read(self.path_for(g, d)).ok()?;
        let entry: Entry = serde_json::from_slice(&text).ok()?;
        if entry.model_version != MODEL_VERSION || entry.genus != g || entry.power != d {
            return None;
        }
        if digest_of(&entry.records) != entry.digest {
            return None;
        }
        let mut entries = Vec::with_capacity(entry.records.len());
        for r in entry.records {
            let mut product: Vec<(SymMonomial, Rational)> = Vec::with_capacity(r.product.len());
            for (mask, tops, q) in r.product {
                product.push((monomial(g, d, (mask, tops))?, parse_rational(&q).ok()?));
            }
            entries.push(((monomial(g, d, r.a)?, monomial(g, d, r.b)?), product));
        }
        Some(ProductTable::from_entries(g, d, entries))
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn store(&self, table: &ProductTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let records = records_of(table);
        let entry = Entry {
            model_version: MODEL_VERSION.to_string(),
            genus: table.genus(),
            power: table.power(),
            digest: digest_of(&records),
            records,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path_for(table.genus(), table.power()))
            .map_err(|e| e.error)?;
        Ok(())
    }

    /// A failed write only costs the next run a recomputation, so it is not
    /// reported as an error.
    pub fn get_or_derive(&self, g: u32, d: u32) -> (Arc<ProductTable>, CacheOutcome) {
        let existed = self.path_for(g, d).exists();
        if let Some(t) = self.load(g, d) {
            return (Arc::new(t), CacheOutcome::Hit);
        }
        let table = ProductTable::derive(g, d);
        let _ = self.store(&table);
        let outcome = if existed {
            CacheOutcome::Rejected
        } else {
            CacheOutcome::Miss
        };
        (Arc::new(table), outcome)
    }
}
