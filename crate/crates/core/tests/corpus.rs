//! Drive every checked-in fuzz corpus seed through the same entry points
//! the fuzz targets use, so the corpus stays valid on a stable toolchain.

use semifields::classify::CatalogIndex;
use semifields::semifield::{canonical_json, load_semifield, semifield_to_json};
use semifields::sfgroup::GroupReport;
use std::path::PathBuf;

fn corpus_dir(target: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = corpus_dir(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("corpus dir {}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "corpus for {target} must not be empty");
    out
}

#[test]
fn semifield_file_seeds_parse_and_restore() {
    for (name, bytes) in seeds("fuzz_semifield_file") {
        let loaded = load_semifield(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let sf = loaded
            .as_semifield()
            .unwrap_or_else(|| panic!("{name}: no identity"));
        let once = semifield_to_json(sf.pre(), Some(sf.identity()), loaded.label.as_deref());
        let again = load_semifield(once.as_bytes()).unwrap();
        let twice = semifield_to_json(&again.pre, again.identity.as_ref(), again.label.as_deref());
        assert_eq!(once, twice, "{name}: canonical form is a fixed point");
    }
}

#[test]
fn catalog_index_seeds_round_trip() {
    for (name, bytes) in seeds("fuzz_catalog_index") {
        let index: CatalogIndex =
            serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let once = canonical_json(&index);
        let reparsed: CatalogIndex = serde_json::from_str(&once).unwrap();
        assert_eq!(canonical_json(&reparsed), once, "{name}");
    }
}

#[test]
fn group_report_seeds_round_trip() {
    for (name, bytes) in seeds("fuzz_group_report") {
        let report: GroupReport =
            serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let once = canonical_json(&report);
        let reparsed: GroupReport = serde_json::from_str(&once).unwrap();
        assert_eq!(canonical_json(&reparsed), once, "{name}");
    }
}
