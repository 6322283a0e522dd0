#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_atlas::report::{report_from_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = report_from_json(s) {
        let text = to_json(&r).unwrap();
        assert_eq!(report_from_json(&text).unwrap(), r);
    }
});
