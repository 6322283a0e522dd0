mod common;

use common::*;
use schubert_atlas::oracle::coset_poincare_counts;
use schubert_atlas::survey::survey;
use schubert_atlas::weyl::{enumerate_coset_reps, is_min_coset_rep, ParabolicSubset};

fn counts_by_length(d: &schubert_atlas::rootdata::RootDatum, p: &ParabolicSubset) -> Vec<u64> {
    let reps = enumerate_coset_reps(d, p, usize::MAX);
    let top = reps.iter().map(|w| w.length()).max().unwrap_or(0);
    let mut c = vec![0u64; top + 1];
    for w in &reps {
        assert!(is_min_coset_rep(w, p));
        c[w.length()] += 1;
    }
    c
}

#[test]
fn coset_enumeration_matches_poincare_polynomial() {
    for t in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4"] {
        let d = datum(t);
        for p in ParabolicSubset::all(d.rank()) {
            assert_eq!(counts_by_length(&d, &p), coset_poincare_counts(&d, &p), "{t} I_P {p}");
        }
    }
}

#[test]
fn large_types_match_on_maximal_parabolics() {
    for (t, ip) in [("E6", &[1, 2, 3, 4, 5][..]), ("E6", &[2, 3, 4, 5, 6]), ("E7", &[1, 2, 3, 4, 5, 6]), ("B5", &[2, 3, 4, 5])] {
        let d = datum(t);
        let p = parabolic(&d, ip);
        assert_eq!(counts_by_length(&d, &p), coset_poincare_counts(&d, &p), "{t} I_P {p}");
    }
    let e6 = datum("E6");
    assert_eq!(coset_poincare_counts(&e6, &parabolic(&e6, &[1, 2, 3, 4, 5])).iter().sum::<u64>(), 27);
    let e7 = datum("E7");
    assert_eq!(coset_poincare_counts(&e7, &parabolic(&e7, &[1, 2, 3, 4, 5, 6])).iter().sum::<u64>(), 56);
}

#[test]
fn survey_rows_follow_length_cap() {
    for (t, ip) in [("A3", &[][..]), ("A4", &[2]), ("B3", &[1]), ("C3", &[3]), ("D4", &[1, 3, 4]), ("G2", &[]), ("F4", &[1, 2, 3])] {
        let d = datum(t);
        let p = parabolic(&d, ip);
        let poly = coset_poincare_counts(&d, &p);
        for cap in [0, 1, 3, usize::MAX] {
            let want: u64 = poly.iter().take(cap.saturating_add(1)).sum();
            let rows = survey(&d, &p, (cap != usize::MAX).then_some(cap)).unwrap();
            assert_eq!(rows.len() as u64, want, "{t} I_P {p} cap {cap}");
            assert!(rows.windows(2).all(|w| w[0].length <= w[1].length));
            assert!(rows.iter().all(|r| r.length <= cap));
        }
    }
}

#[test]
fn survey_is_independent_of_thread_count() {
    let d = datum("B3");
    let p = parabolic(&d, &[]);
    let runs: Vec<_> = [1, 3]
        .into_iter()
        .map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| survey(&d, &p, None).unwrap())
        })
        .collect();
    assert_eq!(runs[0].len(), 48);
    assert_eq!(runs[0], runs[1]);
}
