//! Brute-force ground truth and conjecture scans.
//!
//! Nothing here uses the indecomposability machinery of [`crate::schubert`];
//! covers are found from lengths of products with reflections, and
//! decompositions from exhaustive pair sums.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rootdata::{CartanType, CorootVec, RootDatum};
use crate::weyl::{
    all_reduced_words, canonical_reduced_word, compose, enumerate_coset_reps, inversion_sequence,
    inversion_set, is_min_coset_rep, reflection_element, rightmost_all, support,
    ParabolicSubset, WeylElement, WeylError, Word,
};

/// Default cap on reduced words enumerated per element.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("conjecture {0} is only stated for simply-laced types, got {1}")]
    NotSimplyLaced(u8, CartanType),
    #[error("unknown conjecture {0}; expected 1, 2 or 3")]
    UnknownConjecture(u8),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

type Result<T> = std::result::Result<T, OracleError>;

/// `{eta in inv(w) : l(w s_eta) = l(w) - 1 and w s_eta in W^P}`, as
/// canonical indices.
pub fn cover_coroots_direct(
    d: &RootDatum,
    p: &ParabolicSubset,
    w: &WeylElement,
) -> BTreeSet<usize> {
    inversion_set(d, w)
        .into_iter()
        .filter(|&k| {
            let t = reflection_element(d, d.coroot(k)).expect("positive coroot");
            let wt = compose(d, w, &t);
            wt.length() + 1 == w.length() && is_min_coset_rep(&wt, p)
        })
        .collect()
}

/// `l(w s_eta)` computed from the product matrix.
pub fn length_after_reflection(d: &RootDatum, w: &WeylElement, eta: &CorootVec) -> Result<usize> {
    let t = reflection_element(d, eta)?;
    Ok(compose(d, w, &t).length())
}

/// Every unordered pair `{mu, mu'}` of distinct members of `inv` with
/// `c * eta = mu + mu'` for a positive integer `c`, as `(c, mu, mu')` with
/// `mu < mu'` in canonical index.
pub fn decompositions_direct(
    d: &RootDatum,
    inv: &[usize],
    eta: usize,
) -> Vec<(i64, usize, usize)> {
    let target = d.coroot(eta);
    let mut out = Vec::new();
    for (a, &m1) in inv.iter().enumerate() {
        for &m2 in &inv[a + 1..] {
            let s = d.coroot(m1).add(d.coroot(m2));
            for c in 1..=4 {
                if target.scale(c) == s {
                    let (lo, hi) = if m1 < m2 { (m1, m2) } else { (m2, m1) };
                    out.push((c, lo, hi));
                }
            }
        }
    }
    out.sort();
    out
}

/// One element's contribution to a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub word: Word,
    pub coroot: CorootVec,
    pub detail: String,
}

/// Result of checking one element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    /// number of individual instances checked successfully
    pub verified: usize,
    pub counterexamples: Vec<Finding>,
    pub needs_review: Vec<Finding>,
    pub truncated: bool,
}

impl Fragment {
    fn absorb(&mut self, other: Fragment) {
        self.verified += other.verified;
        self.counterexamples.extend(other.counterexamples);
        self.needs_review.extend(other.needs_review);
        self.truncated |= other.truncated;
    }
}

/// The three conjectures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// some decomposition of each decomposable coroot appears in both orders
    OrderReversal,
    /// each longer-than-cover reflection deletes a letter between equal neighbours
    CoxeterDeletion,
    /// every rightmost witness yields an indecomposable coroot
    RightmostIndecomposable,
}

impl Conjecture {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Conjecture::OrderReversal),
            2 => Ok(Conjecture::CoxeterDeletion),
            3 => Ok(Conjecture::RightmostIndecomposable),
            _ => Err(OracleError::UnknownConjecture(id)),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            Conjecture::OrderReversal => 1,
            Conjecture::CoxeterDeletion => 2,
            Conjecture::RightmostIndecomposable => 3,
        }
    }

    pub fn needs_simply_laced(self) -> bool {
        self != Conjecture::CoxeterDeletion
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Conjecture::OrderReversal => "order-reversal",
            Conjecture::CoxeterDeletion => "coxeter-deletion",
            Conjecture::RightmostIndecomposable => "rightmost-indecomposable",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    VerifiedUpToCap,
    Counterexample,
}

impl Verdict {
    /// 0 ok, 1 counterexample, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Counterexample => 1,
            Verdict::VerifiedUpToCap => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: u8,
    pub name: String,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub rank: usize,
    pub max_length: Option<usize>,
    pub word_cap: usize,
    pub elements_scanned: usize,
    pub verified_count: usize,
    pub counterexamples: Vec<Finding>,
    pub needs_review: Vec<Finding>,
    pub truncated: bool,
    pub verdict: Verdict,
}

/// Coxeter deletion for one element.
pub fn check_coxeter_deletion(d: &RootDatum, w: &WeylElement, cap: usize) -> Fragment {
    let mut frag = Fragment::default();
    let inv = inversion_set(d, w);
    let wanted: BTreeSet<usize> = inv
        .iter()
        .copied()
        .filter(|&k| {
            let t = reflection_element(d, d.coroot(k)).expect("positive coroot");
            compose(d, w, &t).length() + 1 < w.length()
        })
        .collect();
    if wanted.is_empty() {
        return frag;
    }
    let (words, truncated) = all_reduced_words(d, w, cap);
    let r = w.length();
    let mut interior: HashSet<usize> = HashSet::new();
    let mut realised: HashSet<usize> = HashSet::new();
    for word in &words {
        let seq = inversion_sequence(d, word).expect("reduced");
        let l = word.letters();
        // letter at 0-based position q is inversion-sequence entry r - 1 - q
        for q in 1..r.saturating_sub(1) {
            let eta = d.coroot_index(&seq[r - 1 - q]).expect("positive");
            interior.insert(eta);
            if l[q - 1] == l[q + 1] {
                realised.insert(eta);
            }
        }
        if wanted.iter().all(|k| realised.contains(k)) {
            break;
        }
    }
    let witness = canonical_reduced_word(d, w);
    for &k in &wanted {
        if realised.contains(&k) {
            frag.verified += 1;
        } else if truncated {
            frag.truncated = true;
        } else if !interior.contains(&k) {
            frag.needs_review.push(Finding {
                word: witness.clone(),
                coroot: d.coroot(k).clone(),
                detail: "letter only ever at an end of a reduced word".into(),
            });
        } else {
            frag.counterexamples.push(Finding {
                word: witness.clone(),
                coroot: d.coroot(k).clone(),
                detail: "no reduced word deletes it between equal neighbours".into(),
            });
        }
    }
    frag
}

/// Order reversal for one element.
pub fn check_order_reversal(d: &RootDatum, w: &WeylElement, cap: usize) -> Result<Fragment> {
    if !d.is_simply_laced() {
        return Err(OracleError::NotSimplyLaced(1, d.cartan_type()));
    }
    let mut frag = Fragment::default();
    let inv = inversion_set(d, w);
    // decomposable eta -> pair -> bitmask of observed orders
    let mut seen: BTreeMap<usize, BTreeMap<(usize, usize), u8>> = BTreeMap::new();
    for &eta in &inv {
        let dec = decompositions_direct(d, &inv, eta);
        if !dec.is_empty() {
            seen.insert(eta, dec.into_iter().map(|(_, a, b)| ((a, b), 0)).collect());
        }
    }
    if seen.is_empty() {
        return Ok(frag);
    }
    let (words, truncated) = all_reduced_words(d, w, cap);
    let mut pos = vec![usize::MAX; d.positives().len()];
    for word in &words {
        for (q, c) in inversion_sequence(d, word).expect("reduced").iter().enumerate() {
            pos[d.coroot_index(c).expect("positive")] = q;
        }
        for pairs in seen.values_mut() {
            for ((a, b), mask) in pairs.iter_mut() {
                *mask |= if pos[*a] < pos[*b] { 1 } else { 2 };
            }
        }
        if seen.values().all(|p| p.values().any(|&m| m == 3)) {
            break;
        }
    }
    let witness = canonical_reduced_word(d, w);
    for (eta, pairs) in seen {
        if pairs.values().any(|&m| m == 3) {
            frag.verified += 1;
        } else if truncated {
            frag.truncated = true;
        } else {
            frag.counterexamples.push(Finding {
                word: witness.clone(),
                coroot: d.coroot(eta).clone(),
                detail: format!("{} decompositions, none reversed", pairs.len()),
            });
        }
    }
    Ok(frag)
}

/// Rightmost indecomposability for one element.
pub fn check_rightmost_indecomposable(d: &RootDatum, w: &WeylElement) -> Result<Fragment> {
    if !d.is_simply_laced() {
        return Err(OracleError::NotSimplyLaced(3, d.cartan_type()));
    }
    let mut frag = Fragment::default();
    let inv = inversion_set(d, w);
    for k in support(d, w) {
        let (_, values) = rightmost_all(d, w, k)?;
        for (c, word) in values {
            let idx = d.coroot_index(&c).expect("positive");
            debug_assert!(inv.binary_search(&idx).is_ok());
            if decompositions_direct(d, &inv, idx).is_empty() {
                frag.verified += 1;
            } else {
                frag.counterexamples.push(Finding {
                    word,
                    coroot: c,
                    detail: format!("decomposable for k = {k}"),
                });
            }
        }
    }
    Ok(frag)
}

/// Scans every element of `W` up to `max_length` (all of `W` when `None`).
/// Work is spread over the current rayon pool; findings are merged in
/// enumeration order.
pub fn scan(
    d: &RootDatum,
    which: Conjecture,
    max_length: Option<usize>,
    cap: usize,
) -> Result<ConjectureReport> {
    if which.needs_simply_laced() && !d.is_simply_laced() {
        return Err(OracleError::NotSimplyLaced(which.id(), d.cartan_type()));
    }
    let elements = enumerate_coset_reps(
        d,
        &ParabolicSubset::borel(d.rank()),
        max_length.unwrap_or(usize::MAX),
    );
    let frags: Vec<Fragment> = elements
        .par_iter()
        .map(|w| match which {
            Conjecture::OrderReversal => check_order_reversal(d, w, cap),
            Conjecture::CoxeterDeletion => Ok(check_coxeter_deletion(d, w, cap)),
            Conjecture::RightmostIndecomposable => check_rightmost_indecomposable(d, w),
        })
        .collect::<Result<_>>()?;
    let mut total = Fragment::default();
    for f in frags {
        total.absorb(f);
    }
    let verdict = if !total.counterexamples.is_empty() {
        Verdict::Counterexample
    } else if total.truncated || !total.needs_review.is_empty() {
        Verdict::VerifiedUpToCap
    } else {
        Verdict::Verified
    };
    Ok(ConjectureReport {
        conjecture: which.id(),
        name: which.to_string(),
        cartan_type: d.cartan_type(),
        rank: d.rank(),
        max_length,
        word_cap: cap,
        elements_scanned: elements.len(),
        verified_count: total.verified,
        counterexamples: total.counterexamples,
        needs_review: total.needs_review,
        truncated: total.truncated,
        verdict,
    })
}

/// Number of `w` in `W^P` of each length, from the product formula
/// `W(q) = prod_{alpha > 0} (1 - q^{ht alpha + 1}) / (1 - q^{ht alpha})`
/// divided by the same product over `R_P`.
pub fn coset_poincare_counts(d: &RootDatum, p: &ParabolicSubset) -> Vec<u64> {
    let heights = |inside: &dyn Fn(&CorootVec) -> bool| -> Vec<usize> {
        d.positives()
            .iter()
            .filter(|pr| inside(&pr.coroot))
            .map(|pr| pr.root.0.iter().sum::<i64>() as usize)
            .collect()
    };
    let whole = poincare(&heights(&|_| true));
    let levi = poincare(&heights(&|c| c.support().all(|i| p.contains(i))));
    // long division; both have constant term 1
    let n = whole.len() - levi.len() + 1;
    let mut q = vec![0i128; n];
    for j in 0..n {
        let mut a = whole[j];
        for i in 1..levi.len().min(j + 1) {
            a -= levi[i] * q[j - i];
        }
        q[j] = a;
    }
    q.into_iter().map(|c| c as u64).collect()
}

fn poincare(heights: &[usize]) -> Vec<i128> {
    let top: usize = heights.iter().map(|h| h + 1).sum();
    let mut poly = vec![0i128; top + 1];
    poly[0] = 1;
    // times 1 - q^{h+1}
    for &h in heights {
        for j in (h + 1..=top).rev() {
            poly[j] -= poly[j - h - 1];
        }
    }
    // over 1 - q^h
    for &h in heights {
        for j in h..=top {
            poly[j] += poly[j - h];
        }
    }
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}
