#![no_main]

use libfuzzer_sys::fuzz_target;
use semifields::classify::CatalogIndex;
use semifields::semifield::canonical_json;

fuzz_target!(|data: &[u8]| {
    if let Ok(index) = serde_json::from_slice::<CatalogIndex>(data) {
        // Canonical serialization of whatever parsed must be a fixed point.
        let once = canonical_json(&index);
        let reparsed: CatalogIndex = serde_json::from_str(&once).expect("round trip");
        assert_eq!(canonical_json(&reparsed), once);
    }
});
