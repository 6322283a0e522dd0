#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_atlas::weyl::ParabolicSubset;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let rank = usize::from(r % 16) + 1;
    if let Ok(p) = ParabolicSubset::parse(rank, s) {
        assert!(p.inside().all(|i| (1..=rank).contains(&i)));
        assert_eq!(p.inside().count() + p.complement().len(), rank);
    }
});
