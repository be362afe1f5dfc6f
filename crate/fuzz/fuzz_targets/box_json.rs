#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The tribox-v1 reader must never panic on arbitrary bytes, in either
    // tolerance mode.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = tribox::format::read_box_json(text, true);
        let _ = tribox::format::read_box_json(text, false);
    }
});
