#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::Rational64;
use schubert_atlas::rootdata::{CorootVec, RootDatum, WeightVec};
use schubert_atlas::schubert::{ClassificationReport, Classifier, SchubertInput};
use schubert_atlas::weyl::{ParabolicSubset, Word};

pub fn datum(t: &str) -> RootDatum {
    RootDatum::new(t.parse().expect("cartan type"))
}

pub fn word(s: &str) -> Word {
    s.parse().expect("word")
}

pub fn cv(c: &[i64]) -> CorootVec {
    CorootVec(c.to_vec())
}

/// `alpha_{j1 j2 ..}` in the 1-based shorthand, e.g. `sum(5, &[1, 2, 3])`.
pub fn sum(rank: usize, idx: &[usize]) -> CorootVec {
    let mut v = vec![0; rank];
    for &i in idx {
        v[i - 1] += 1;
    }
    CorootVec(v)
}

pub fn parabolic(d: &RootDatum, ip: &[usize]) -> ParabolicSubset {
    ParabolicSubset::new(d.rank(), ip.iter().copied()).expect("parabolic")
}

pub fn input<'a>(d: &'a RootDatum, ip: &[usize], w: &str) -> SchubertInput<'a> {
    SchubertInput::from_word(d, parabolic(d, ip), &word(w), false).expect("valid input")
}

pub fn report(d: &RootDatum, ip: &[usize], w: &str) -> ClassificationReport {
    Classifier::new(d).classify(&input(d, ip, w)).expect("classify")
}

pub fn r(n: i64, m: i64) -> Rational64 {
    Rational64::new(n, m)
}

/// Weight from `(numerator, denominator)` coefficients on `w_1 .. w_n`.
pub fn weight(c: &[(i64, i64)]) -> WeightVec {
    WeightVec(c.iter().map(|&(n, m)| r(n, m)).collect())
}

pub fn int_weight(c: &[i64]) -> WeightVec {
    WeightVec(c.iter().map(|&n| r(n, 1)).collect())
}

pub fn set(v: &[CorootVec]) -> BTreeSet<CorootVec> {
    v.iter().cloned().collect()
}
