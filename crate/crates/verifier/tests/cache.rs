use pichar_verifier::cache::{Lookup, TableCache};
use pichar_verifier::spec::GroupSpec;

#[test]
fn stored_tables_are_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = GroupSpec::gl2_3().build().unwrap().group;
    let (t, first) = cache.load_or_compute(&g).unwrap();
    assert_eq!(first, Lookup::Miss);
    let (again, second) = cache.load_or_compute(&g).unwrap();
    assert_eq!(second, Lookup::Hit);
    assert_eq!(t.rows(), again.rows());
}

#[test]
fn tampered_entry_is_rejected_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = GroupSpec::metacyclic(7, 3, 2).build().unwrap().group;
    let (t, _) = cache.load_or_compute(&g).unwrap();
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // second row, first class: the degree becomes 2
    file["rows"][1][0] = serde_json::json!([1, [[0, 2, 1]]]);
    std::fs::write(&path, file.to_string()).unwrap();
    let (none, status) = cache.get(&g);
    assert!(none.is_none());
    assert!(matches!(status, Lookup::Rejected(_)));
    let (fresh, status) = cache.load_or_compute(&g).unwrap();
    assert!(matches!(status, Lookup::Rejected(_)));
    assert_eq!(fresh.rows(), t.rows());
    assert_eq!(cache.get(&g).1, Lookup::Hit);
}

#[test]
fn garbage_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = GroupSpec::cyclic(5).build().unwrap().group;
    cache.load_or_compute(&g).unwrap();
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&path, "not json").unwrap();
    assert!(matches!(cache.get(&g).1, Lookup::Rejected(_)));
}
