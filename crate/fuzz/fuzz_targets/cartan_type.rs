#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_atlas::rootdata::{CartanType, RootDatum};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(t) = s.parse::<CartanType>() else { return };
    assert_eq!(t.to_string().parse::<CartanType>().unwrap(), t);
    if t.rank() <= 8 {
        let d = RootDatum::new(t);
        assert_eq!(d.rank(), t.rank());
    }
});
