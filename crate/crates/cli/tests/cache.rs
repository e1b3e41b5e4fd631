use std::fs;
use std::sync::Arc;

use ihtheta::sym::{ProductTable, SymRing};
use ihtheta::theta::ThetaModel;
use ihtheta_cli::cache::{CacheOutcome, TableCache, MODEL_VERSION};

#[test]
fn store_then_load_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let table = ProductTable::derive(3, 2);
    cache.store(&table).unwrap();
    assert_eq!(cache.load(3, 2).unwrap(), table);
    assert!(cache.load(3, 3).is_none());
    let (_, first) = cache.get_or_derive(2, 1);
    let (t, second) = cache.get_or_derive(2, 1);
    assert_eq!((first, second), (CacheOutcome::Miss, CacheOutcome::Hit));
    assert_eq!(*t, ProductTable::derive(2, 1));
}

#[test]
fn corrupted_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let table = ProductTable::derive(3, 2);
    cache.store(&table).unwrap();
    let path = cache.path_for(3, 2);
    let text = fs::read_to_string(&path).unwrap();

    // A flipped coefficient: the digest no longer matches.
    let tampered = text.replacen("\"-1\"", "\"1\"", 1);
    assert_ne!(tampered, text);
    fs::write(&path, &tampered).unwrap();
    assert!(cache.load(3, 2).is_none());
    let (t, outcome) = cache.get_or_derive(3, 2);
    assert_eq!(outcome, CacheOutcome::Rejected);
    assert_eq!(*t, table);
    assert_eq!(cache.load(3, 2).unwrap(), table);

    fs::write(&path, text.replace(MODEL_VERSION, "sym-product-v0")).unwrap();
    assert!(cache.load(3, 2).is_none());
    fs::write(&path, "not json").unwrap();
    assert!(cache.load(3, 2).is_none());
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert_eq!(cache.get_or_derive(3, 2).1, CacheOutcome::Rejected);
}

#[test]
fn only_small_rings_are_cacheable() {
    assert!(TableCache::is_cacheable(4, 3));
    assert!(!TableCache::is_cacheable(6, 5));
}

#[test]
fn cached_table_gives_the_same_involution() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    for g in 2..=4 {
        let cold = ThetaModel::new(g).unwrap().iota_formula().unwrap();
        let (table, _) = cache.get_or_derive(g, g - 1);
        let ring = SymRing::new(g, g - 1).unwrap().with_table(Arc::clone(&table)).unwrap();
        let warm = ThetaModel::with_ring(ring).unwrap().iota_formula().unwrap();
        assert_eq!(cold, warm, "g={g}");
    }
}
