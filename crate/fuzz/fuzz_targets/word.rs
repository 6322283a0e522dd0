#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_atlas::rootdata::RootDatum;
use schubert_atlas::weyl::{element_from_word, Word};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(w) = s.parse::<Word>() else { return };
    assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    if w.len() <= 64 {
        let d = RootDatum::new("E8".parse().unwrap());
        if w.check_range(d.rank()).is_ok() {
            let _ = element_from_word(&d, &w).unwrap();
        }
    }
});
