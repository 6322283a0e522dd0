#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_atlas::report::{report_from_json, to_json};
use schubert_atlas::rootdata::{CartanType, RootDatum};
use schubert_atlas::schubert::{classify, SchubertInput};
use schubert_atlas::weyl::{ParabolicSubset, Word};

// Input: "TYPE;I_P;word", e.g. "G2;;2 1 2".
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut parts = s.splitn(3, ';');
    let (Some(t), Some(p), Some(w)) = (parts.next(), parts.next(), parts.next()) else { return };
    let Ok(t) = t.parse::<CartanType>() else { return };
    if t.rank() > 6 {
        return;
    }
    let Ok(p) = ParabolicSubset::parse(t.rank(), p) else { return };
    let Ok(w) = w.parse::<Word>() else { return };
    if w.len() > 40 || w.check_range(t.rank()).is_err() {
        return;
    }
    let d = RootDatum::new(t);
    let Ok(input) = SchubertInput::from_word(&d, p, &w, true) else { return };
    let r = classify(&input).unwrap();
    assert_eq!(report_from_json(&to_json(&r).unwrap()).unwrap(), r);
});
