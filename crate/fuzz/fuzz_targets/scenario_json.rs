#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Parsing plus state/settings construction and Born evaluation must
        // reject bad inputs with errors, never panics.
        let _ = tribox::format::box_from_scenario_json(text);
    }
});
