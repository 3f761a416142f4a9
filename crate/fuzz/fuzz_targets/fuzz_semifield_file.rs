#![no_main]

use libfuzzer_sys::fuzz_target;
use semifields::semifield::{load_semifield, semifield_to_json};

// Parsing untrusted semifield files must never panic, and anything that
// parses must survive interpretation and re-serialize stably.
fuzz_target!(|data: &[u8]| {
    if let Ok(loaded) = load_semifield(data) {
        if let Some(sf) = loaded.as_semifield() {
            let once = semifield_to_json(sf.pre(), Some(sf.identity()), loaded.label.as_deref());
            let again = load_semifield(once.as_bytes()).expect("canonical output re-parses");
            let twice =
                semifield_to_json(&again.pre, again.identity.as_ref(), again.label.as_deref());
            assert_eq!(once, twice);
        } else if loaded.pre.order() <= 1024 {
            let _ = loaded.pre.check_presemifield();
        }
    }
});
