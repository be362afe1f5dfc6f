#![no_main]

use libfuzzer_sys::fuzz_target;
use std::collections::BTreeMap;

fuzz_target!(|data: &[u8]| {
    // Reconstruction from a correlator map: arbitrary values may violate
    // positivity and must come back as errors.
    if let Ok(map) = serde_json::from_slice::<BTreeMap<String, f64>>(data) {
        let _ = tribox::format::behavior_from_correlator_map(&map);
    }
});
