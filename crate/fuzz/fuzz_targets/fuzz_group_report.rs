#![no_main]

use libfuzzer_sys::fuzz_target;
use semifields::semifield::canonical_json;
use semifields::sfgroup::GroupReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<GroupReport>(data) {
        let once = canonical_json(&report);
        let reparsed: GroupReport = serde_json::from_str(&once).expect("round trip");
        assert_eq!(canonical_json(&reparsed), once);
    }
});
