//! Coroot data and singularity classification of a Schubert variety
//! `X_{w,P}`.
//!
//! Pipeline: inversion set, cover coroots (Borel and parabolic), the
//! Picard-style matrix, the adapted basis in simply-laced types, and the
//! Gorenstein/Fano report with the anticanonical class.
//!
//! Coroots are handled internally by their canonical index in the datum.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactlinalg::{det, inverse_rational, smith_normal_form, IntMatrix, LinalgError, Rat};
use crate::rootdata::{height, CartanType, CorootVec, RootDatum, WeightVec};
use crate::weyl::{
    canonical_reduced_word, element_from_word, inversion_sequence, inversion_set,
    min_coset_rep, support, ParabolicSubset, RightmostDistance, TieBreak,
    WeylElement, WeylError, Word,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error("element is not a minimal coset representative: w(coroot_{violating}) < 0 with {violating} in I_P")]
    NotMinimalCosetRep { violating: usize },
    #[error("{0} is not in the inversion set")]
    NotInInversionSet(CorootVec),
    #[error("adapted bases need a simply-laced type, got {0}")]
    NotSimplyLaced(CartanType),
    #[error("I_P is every simple index, so X_{{w,P}} is a point for the only coset")]
    WholeGroup,
    #[error("parabolic subset has rank {got}, datum has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, SchubertError>;

/// `(datum, I_P, w)` with `w` in `W^P`.
#[derive(Debug, Clone)]
pub struct SchubertInput<'a> {
    datum: &'a RootDatum,
    parabolic: ParabolicSubset,
    w: WeylElement,
}

impl<'a> SchubertInput<'a> {
    pub fn new(datum: &'a RootDatum, parabolic: ParabolicSubset, w: WeylElement) -> Result<Self> {
        if parabolic.rank() != datum.rank() {
            return Err(SchubertError::RankMismatch {
                expected: datum.rank(),
                got: parabolic.rank(),
            });
        }
        if parabolic.is_everything() {
            return Err(SchubertError::WholeGroup);
        }
        if let Some(violating) = parabolic.inside().find(|&j| w.is_right_descent(j)) {
            return Err(SchubertError::NotMinimalCosetRep { violating });
        }
        Ok(SchubertInput {
            datum,
            parabolic,
            w,
        })
    }

    /// Builds the input from a word. Without `coerce`, a non-reduced word or
    /// an element outside `W^P` is an error; with it, `w` is replaced by its
    /// minimal coset representative.
    pub fn from_word(
        datum: &'a RootDatum,
        parabolic: ParabolicSubset,
        word: &Word,
        coerce: bool,
    ) -> Result<Self> {
        let w = element_from_word(datum, word)?;
        if coerce {
            let w = min_coset_rep(datum, &w, &parabolic);
            return Self::new(datum, parabolic, w);
        }
        if w.length() != word.len() {
            return Err(WeylError::NonReducedWord {
                letters: word.len(),
                length: w.length(),
            }
            .into());
        }
        Self::new(datum, parabolic, w)
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn element(&self) -> &WeylElement {
        &self.w
    }
}

/// Inversion data and cover coroots of `w`. Coroots are canonical indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorootSets {
    /// reflection ordering from the canonical reduced word
    pub inv_ordered: Vec<CorootVec>,
    /// the inversion set, ascending
    pub inversion: Vec<usize>,
    pub cover_b: Vec<usize>,
    pub cover_p: Vec<usize>,
    /// simple indices `i` with `s_i <= w`
    pub support_b: Vec<usize>,
    /// `support_b` minus `I_P`
    pub support_p: Vec<usize>,
}

impl CorootSets {
    pub fn contains(&self, idx: usize) -> bool {
        self.inversion.binary_search(&idx).is_ok()
    }
}

/// Inversion set and supports; cover fields left empty.
pub fn coroot_inversion_set(input: &SchubertInput<'_>) -> CorootSets {
    let d = input.datum;
    let word = canonical_reduced_word(d, &input.w);
    let inv_ordered = inversion_sequence(d, &word).expect("canonical word is reduced");
    let support_b: Vec<usize> = support(d, &input.w).into_iter().collect();
    let support_p = support_b
        .iter()
        .copied()
        .filter(|&i| !input.parabolic.contains(i))
        .collect();
    CorootSets {
        inv_ordered,
        inversion: inversion_set(d, &input.w),
        cover_b: Vec::new(),
        cover_p: Vec::new(),
        support_b,
        support_p,
    }
}

/// `c * eta = first + second` with `first != second` in the inversion set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub c: i64,
    pub first: CorootVec,
    pub second: CorootVec,
}

/// A decomposition of `eta` inside `inv` (canonical indices, ascending),
/// or `None` if `eta` is indecomposable. `Smallest` returns the pair with
/// the smallest first index, then smallest second; `Largest` the reverse.
pub fn decompose(
    d: &RootDatum,
    eta: &CorootVec,
    inv: &[usize],
    policy: TieBreak,
) -> Result<Option<Decomposition>> {
    let target = d
        .coroot_index(eta)
        .filter(|i| inv.binary_search(i).is_ok())
        .ok_or_else(|| SchubertError::NotInInversionSet(eta.clone()))?;
    Ok(decompose_idx(d, target, inv, policy).map(|(c, a, b)| Decomposition {
        c,
        first: d.coroot(a).clone(),
        second: d.coroot(b).clone(),
    }))
}

fn decompose_idx(
    d: &RootDatum,
    target: usize,
    inv: &[usize],
    policy: TieBreak,
) -> Option<(i64, usize, usize)> {
    let eta = d.coroot(target);
    let check = |a: usize, b: usize| -> Option<(i64, usize, usize)> {
        let s = d.coroot(a).add(d.coroot(b));
        let (k, &e) = eta.0.iter().enumerate().find(|(_, &x)| x != 0)?;
        if s[k] % e != 0 {
            return None;
        }
        let c = s[k] / e;
        (c > 0 && eta.scale(c) == s).then_some((c, a, b))
    };
    let n = inv.len();
    match policy {
        TieBreak::Smallest => (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find_map(|(x, y)| check(inv[x], inv[y])),
        TieBreak::Largest => (0..n)
            .rev()
            .flat_map(|x| (0..x).rev().map(move |y| (x, y)))
            .find_map(|(x, y)| check(inv[x], inv[y])),
    }
}

/// Members of `inv` that are a positive multiple of a sum of two distinct
/// members. Coroots are primitive lattice vectors, so the multiple is the
/// gcd of the sum.
fn decomposable_set(d: &RootDatum, inv: &[usize]) -> HashSet<usize> {
    let members: HashSet<usize> = inv.iter().copied().collect();
    let mut out = HashSet::new();
    for (x, &a) in inv.iter().enumerate() {
        for &b in &inv[x + 1..] {
            let s = d.coroot(a).add(d.coroot(b));
            let g = s.0.iter().fold(0i64, |g, &v| g.gcd(&v));
            let eta = CorootVec(s.0.iter().map(|v| v / g).collect());
            if let Some(i) = d.coroot_index(&eta) {
                if members.contains(&i) {
                    out.insert(i);
                }
            }
        }
    }
    out
}

/// Fills `cover_b` (indecomposables) and `cover_p` (those whose reflection
/// keeps every `coroot_j`, `j` in `I_P`, out of the inversion set).
pub fn cover_coroots(input: &SchubertInput<'_>) -> CorootSets {
    let d = input.datum;
    let mut sets = coroot_inversion_set(input);
    let dec = decomposable_set(d, &sets.inversion);
    sets.cover_b = sets
        .inversion
        .iter()
        .copied()
        .filter(|i| !dec.contains(i))
        .collect();
    sets.cover_p = sets
        .cover_b
        .iter()
        .copied()
        .filter(|&eta| {
            input.parabolic.inside().all(|j| {
                let img = d.reflect_coroot_by(eta, &d.simple_coroot(j));
                !d.coroot_index(&img).is_some_and(|i| sets.contains(i))
            })
        })
        .collect();
    debug_assert_eq!(
        sets.cover_p,
        crate::oracle::cover_coroots_direct(d, &input.parabolic, &input.w)
            .into_iter()
            .collect::<Vec<_>>(),
        "cover filter disagrees with the length oracle"
    );
    sets
}

/// Rows `eta` in `cover_p` (canonical order), columns `k` in `support_p`
/// ascending, entry the coefficient of `coroot_k` in `eta`.
pub fn picard_matrix(input: &SchubertInput<'_>, sets: &CorootSets) -> IntMatrix {
    let d = input.datum;
    let rows: Vec<Vec<i64>> = sets
        .cover_p
        .iter()
        .map(|&eta| sets.support_p.iter().map(|&k| d.coroot(eta).coeff(k)).collect())
        .collect();
    IntMatrix::from_rows_with_cols(&rows, sets.support_p.len()).expect("rectangular")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorialEvidence {
    /// determinant of the Picard matrix when it is square
    pub determinant: Option<i64>,
    /// Smith invariant factors of the Picard matrix
    pub invariant_factors: Vec<i64>,
}

/// `(q_factorial, factorial, evidence)`.
pub fn classify_factorial(
    input: &SchubertInput<'_>,
    sets: &CorootSets,
) -> Result<(bool, bool, FactorialEvidence)> {
    let m = picard_matrix(input, sets);
    let q_factorial = sets.cover_p.len() == sets.support_p.len();
    let determinant = if q_factorial { Some(det(&m)?) } else { None };
    let invariant_factors = smith_normal_form(&m)?;
    let factorial = q_factorial && determinant.is_some_and(|x| x.abs() == 1);
    if input.datum.is_simply_laced() && factorial != q_factorial {
        return Err(SchubertError::Internal(format!(
            "simply-laced but q_factorial = {q_factorial} and factorial = {factorial} (det {determinant:?})"
        )));
    }
    Ok((
        q_factorial,
        factorial,
        FactorialEvidence {
            determinant,
            invariant_factors,
        },
    ))
}

/// One member of an adapted basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub k: usize,
    pub coroot: CorootVec,
    /// rightmost distance of `k` in `w`
    pub distance: usize,
}

/// Pairs `(k, mu(k))` in the stored order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedBasis {
    pub entries: Vec<BasisEntry>,
}

impl AdaptedBasis {
    pub fn order(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.k).collect()
    }

    /// `m[a][b]` = coefficient of `coroot_{k_b}` in `mu(k_a)`.
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .entries
            .iter()
            .map(|e| self.entries.iter().map(|f| e.coroot.coeff(f.k)).collect())
            .collect();
        IntMatrix::from_rows_with_cols(&rows, self.entries.len()).expect("square")
    }

    pub fn contains(&self, c: &CorootVec) -> bool {
        self.entries.iter().any(|e| &e.coroot == c)
    }
}

/// `B_{w,B}`: for each `k` in the support, the coroot reached by the
/// rightmost witness, descended through decompositions into the summand
/// with unit coefficient at `k`. Ordered by (distance, k).
pub fn build_b_wb(
    input: &SchubertInput<'_>,
    sets: &CorootSets,
    rightmost: &mut RightmostDistance<'_>,
    policy: TieBreak,
) -> Result<AdaptedBasis> {
    let d = input.datum;
    if !d.is_simply_laced() {
        return Err(SchubertError::NotSimplyLaced(d.cartan_type()));
    }
    let mut entries = Vec::with_capacity(sets.support_b.len());
    for &k in &sets.support_b {
        let r = rightmost.query(&input.w, k)?;
        let mut eta = d
            .coroot_index(&r.coroot)
            .filter(|&i| sets.contains(i))
            .ok_or_else(|| {
                SchubertError::Internal(format!("rightmost coroot {} not an inversion", r.coroot))
            })?;
        while let Some((c, a, b)) = decompose_idx(d, eta, &sets.inversion, policy) {
            if c != 1 {
                return Err(SchubertError::Internal(format!(
                    "simply-laced decomposition with c = {c}"
                )));
            }
            let (ca, cb) = (d.coroot(a).coeff(k), d.coroot(b).coeff(k));
            eta = match (ca == 1, cb == 1) {
                (true, false) => a,
                (false, true) => b,
                _ => {
                    return Err(SchubertError::Internal(format!(
                        "no unique unit summand at k = {k} in {} = {} + {}",
                        d.coroot(eta),
                        d.coroot(a),
                        d.coroot(b)
                    )))
                }
            };
        }
        entries.push(BasisEntry {
            k,
            coroot: d.coroot(eta).clone(),
            distance: r.distance,
        });
    }
    entries.sort_by_key(|e| (e.distance, e.k));
    let basis = AdaptedBasis { entries };
    if !basis.matrix().is_unipotent_lower_triangular() {
        return Err(SchubertError::Internal(format!(
            "B_(w,B) matrix not unipotent lower-triangular in order {:?}",
            basis.order()
        )));
    }
    Ok(basis)
}

/// `B_{w,P}`: restrict to `support_p` and push each `mu(k)` up by
/// `coroot_j` (`j` in `I_P`) while its reflection sends `coroot_j` into the
/// inversion set.
pub fn p_adapt(
    input: &SchubertInput<'_>,
    sets: &CorootSets,
    b: &AdaptedBasis,
) -> Result<AdaptedBasis> {
    let d = input.datum;
    if !d.is_simply_laced() {
        return Err(SchubertError::NotSimplyLaced(d.cartan_type()));
    }
    let mut entries: Vec<BasisEntry> = b
        .entries
        .iter()
        .filter(|e| !input.parabolic.contains(e.k))
        .cloned()
        .collect();
    let mut by_k: Vec<usize> = (0..entries.len()).collect();
    by_k.sort_by_key(|&a| entries[a].k);
    let bound = d.positives().len() * d.rank() + 1;
    for step in 0.. {
        if step > bound {
            return Err(SchubertError::Internal("P-adaptation did not terminate".into()));
        }
        let hit = by_k.iter().find_map(|&a| {
            let mu = d.coroot_index(&entries[a].coroot).expect("positive");
            input.parabolic.inside().find_map(|j| {
                let img = d.reflect_coroot_by(mu, &d.simple_coroot(j));
                d.coroot_index(&img)
                    .filter(|&i| sets.contains(i))
                    .map(|_| (a, j, img))
            })
        });
        let Some((a, j, img)) = hit else { break };
        let bumped = entries[a].coroot.add(&d.simple_coroot(j));
        if img != bumped {
            return Err(SchubertError::Internal(format!(
                "reflection image {img} differs from {bumped}"
            )));
        }
        entries[a].coroot = img;
    }
    let basis = AdaptedBasis { entries };
    for (e, orig) in basis
        .entries
        .iter()
        .zip(b.entries.iter().filter(|e| !input.parabolic.contains(e.k)))
    {
        let idx = d.coroot_index(&e.coroot).expect("positive");
        if sets.cover_p.binary_search(&idx).is_err() {
            return Err(SchubertError::Internal(format!(
                "adapted coroot {} for k = {} not in R+_(w,P)",
                e.coroot, e.k
            )));
        }
        let congruent = (1..=d.rank())
            .filter(|&i| !input.parabolic.contains(i))
            .all(|i| e.coroot.coeff(i) == orig.coroot.coeff(i));
        if !congruent {
            return Err(SchubertError::Internal(format!(
                "adapted coroot {} not congruent to {} mod I_P",
                e.coroot, orig.coroot
            )));
        }
    }
    if !basis.matrix().is_unipotent_lower_triangular() {
        return Err(SchubertError::Internal(format!(
            "B_(w,P) matrix not unipotent lower-triangular in order {:?}",
            basis.order()
        )));
    }
    Ok(basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Undetermined,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Undetermined => "undetermined",
        }
    }
}

/// Which set of criteria produced the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `w` is the identity
    Point,
    /// simply-laced: adapted basis
    SimplyLaced,
    /// not simply-laced, `Q`-factorial: square matrix over all covers
    QFactorial,
    /// not simply-laced, not `Q`-factorial: no criterion available
    Undetermined,
}

/// Integer matrix with row labels (coroots) and column labels (simple
/// indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledIntMatrix {
    pub rows: Vec<CorootVec>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl LabeledIntMatrix {
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(&self.entries, self.cols.len()).expect("rectangular")
    }

    /// Entry at the given labels.
    pub fn at(&self, row: &CorootVec, col: usize) -> Option<i64> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.cols.iter().position(|&x| x == col)?;
        Some(self.entries[r][c])
    }
}

/// Inverse of a [`LabeledIntMatrix`]: rows are simple indices, columns
/// coroots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledRatMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<CorootVec>,
    pub entries: Vec<Vec<Rat>>,
}

impl LabeledRatMatrix {
    pub fn at(&self, row: usize, col: &CorootVec) -> Option<Rational64> {
        let r = self.rows.iter().position(|&x| x == row)?;
        let c = self.cols.iter().position(|x| x == col)?;
        Some(self.entries[r][c].0)
    }
}

/// Rational vector indexed by simple indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledVector {
    pub labels: Vec<usize>,
    pub values: Vec<Rat>,
}

impl LabeledVector {
    pub fn get(&self, k: usize) -> Option<Rational64> {
        self.labels.iter().position(|&x| x == k).map(|i| self.values[i].0)
    }

    /// `sum v_k w_k` as a weight of the given rank.
    pub fn to_weight(&self, rank: usize) -> WeightVec {
        let mut w = WeightVec::zero(rank);
        for (&k, v) in self.labels.iter().zip(&self.values) {
            w.0[k - 1] = v.0;
        }
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilEntry {
    pub coroot: CorootVec,
    pub coefficient: i64,
}

/// Conventions needed to read the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub cartan_matrix: Vec<Vec<i64>>,
    pub cartan_entry: String,
    pub word_order: String,
    pub coroot_order: String,
    pub basis_order: String,
    pub tie_break: TieBreak,
}

impl Conventions {
    fn new(d: &RootDatum, policy: TieBreak) -> Self {
        Conventions {
            cartan_matrix: d.cartan().to_vec(),
            cartan_entry: "cartan_matrix[i][j] = <alpha_(j+1), coroot_(i+1)>".into(),
            word_order: "word [i1,...,ir] is s_i1 * ... * s_ir; coroots are coefficient vectors over simple coroots".into(),
            coroot_order: "coroot lists and picard_matrix rows: by height, then lexicographic".into(),
            basis_order: "adapted basis, M and hat_n: ascending rightmost distance, ties by index; otherwise ascending index".into(),
            tie_break: policy,
        }
    }
}

/// Everything known about `X_{w,P}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    /// `I_P`
    pub parabolic: Vec<usize>,
    /// `I^P`
    pub parabolic_complement: Vec<usize>,
    pub word: Word,
    pub length: usize,
    pub regime: Regime,
    /// `|I^P_w|`
    pub b2: usize,
    /// `|R+_{w,P}|`
    pub b_top: usize,
    pub inversion_sequence: Vec<CorootVec>,
    pub cover_b: Vec<CorootVec>,
    pub cover_p: Vec<CorootVec>,
    pub support_b: Vec<usize>,
    pub support_p: Vec<usize>,
    pub basis: Option<AdaptedBasis>,
    pub picard_matrix: LabeledIntMatrix,
    pub q_factorial: bool,
    pub factorial: bool,
    pub factorial_evidence: FactorialEvidence,
    #[serde(rename = "M")]
    pub m: Option<LabeledIntMatrix>,
    #[serde(rename = "N")]
    pub n: Option<LabeledRatMatrix>,
    pub hat_n: Option<LabeledVector>,
    /// `sum_k (N 1)_k w_k`
    pub dual_basis_sum: Option<WeightVec>,
    pub gorenstein: Status,
    pub q_gorenstein: Status,
    /// Gorenstein Fano
    pub fano: Status,
    pub q_gorenstein_fano: Status,
    pub nef_anticanonical: Option<bool>,
    pub c1: Option<WeightVec>,
    pub anticanonical_weil: Vec<WeilEntry>,
    /// covers where the anticanonical Weil divisor disagrees with the
    /// Cartier candidate
    pub gorenstein_failures: Vec<CorootVec>,
    pub provenance: BTreeMap<String, String>,
    pub conventions: Conventions,
}

/// Drives the pipeline with a shared rightmost-distance memo. One per
/// worker.
pub struct Classifier<'a> {
    datum: &'a RootDatum,
    policy: TieBreak,
    rightmost: RightmostDistance<'a>,
}

impl<'a> Classifier<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        Self::with_policy(datum, TieBreak::Smallest)
    }

    pub fn with_policy(datum: &'a RootDatum, policy: TieBreak) -> Self {
        Classifier {
            datum,
            policy,
            rightmost: RightmostDistance::new(datum, policy),
        }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    /// `B_{w,B}` then `B_{w,P}`.
    pub fn adapted_basis(
        &mut self,
        input: &SchubertInput<'_>,
        sets: &CorootSets,
    ) -> Result<AdaptedBasis> {
        let b = build_b_wb(input, sets, &mut self.rightmost, self.policy)?;
        p_adapt(input, sets, &b)
    }

    pub fn classify(&mut self, input: &SchubertInput<'_>) -> Result<ClassificationReport> {
        let sets = cover_coroots(input);
        let basis = if self.datum.is_simply_laced() && !input.w.is_identity() {
            Some(self.adapted_basis(input, &sets)?)
        } else {
            None
        };
        gorenstein_fano_report(input, &sets, basis, self.policy)
    }
}

/// Full report with default tie-breaking.
pub fn classify(input: &SchubertInput<'_>) -> Result<ClassificationReport> {
    Classifier::new(input.datum).classify(input)
}

fn rat(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

/// Completes the report from the cover sets and (simply-laced) the
/// adapted basis `B_{w,P}`.
pub fn gorenstein_fano_report(
    input: &SchubertInput<'_>,
    sets: &CorootSets,
    basis: Option<AdaptedBasis>,
    policy: TieBreak,
) -> Result<ClassificationReport> {
    let d = input.datum;
    let n = d.rank();
    let coroots = |v: &[usize]| -> Vec<CorootVec> { v.iter().map(|&i| d.coroot(i).clone()).collect() };
    let pic = picard_matrix(input, sets);
    let (q_factorial, factorial, evidence) = classify_factorial(input, sets)?;
    let anticanonical_weil = sets
        .cover_p
        .iter()
        .map(|&i| WeilEntry {
            coroot: d.coroot(i).clone(),
            coefficient: height(d.coroot(i)) + 1,
        })
        .collect();
    let mut prov = BTreeMap::new();
    prov.insert(
        "q_factorial".to_string(),
        "|R+_(w,P)| = |I^P_w|: the cover coroots index the Weil divisors and I^P_w the Picard generators".to_string(),
    );
    prov.insert(
        "factorial".to_string(),
        "q_factorial and det(picard_matrix) = +-1".to_string(),
    );

    let mut report = ClassificationReport {
        cartan_type: d.cartan_type(),
        parabolic: input.parabolic.inside().collect(),
        parabolic_complement: input.parabolic.complement(),
        word: canonical_reduced_word(d, &input.w),
        length: input.w.length(),
        regime: Regime::Point,
        b2: sets.support_p.len(),
        b_top: sets.cover_p.len(),
        inversion_sequence: sets.inv_ordered.clone(),
        cover_b: coroots(&sets.cover_b),
        cover_p: coroots(&sets.cover_p),
        support_b: sets.support_b.clone(),
        support_p: sets.support_p.clone(),
        basis: None,
        picard_matrix: LabeledIntMatrix {
            rows: coroots(&sets.cover_p),
            cols: sets.support_p.clone(),
            entries: pic.to_rows(),
        },
        q_factorial,
        factorial,
        factorial_evidence: evidence,
        m: None,
        n: None,
        hat_n: None,
        dual_basis_sum: None,
        gorenstein: Status::Yes,
        q_gorenstein: Status::Yes,
        fano: Status::Yes,
        q_gorenstein_fano: Status::Yes,
        nef_anticanonical: Some(true),
        c1: Some(WeightVec::zero(n)),
        anticanonical_weil,
        gorenstein_failures: Vec::new(),
        provenance: prov,
        conventions: Conventions::new(d, policy),
    };

    if input.w.is_identity() {
        report.hat_n = Some(LabeledVector {
            labels: vec![],
            values: vec![],
        });
        report.dual_basis_sum = Some(WeightVec::zero(n));
        for key in ["gorenstein", "q_gorenstein", "fano", "q_gorenstein_fano", "c1"] {
            report
                .provenance
                .insert(key.into(), "identity element: X_(w,P) is a point".into());
        }
        return Ok(report);
    }

    // rows (coroots), columns (simple indices) of M
    let (rows, cols): (Vec<CorootVec>, Vec<usize>) = if d.is_simply_laced() {
        let b = basis.as_ref().ok_or_else(|| {
            SchubertError::Internal("simply-laced report without adapted basis".into())
        })?;
        report.regime = Regime::SimplyLaced;
        (b.entries.iter().map(|e| e.coroot.clone()).collect(), b.order())
    } else if q_factorial {
        report.regime = Regime::QFactorial;
        (coroots(&sets.cover_p), sets.support_p.clone())
    } else {
        report.regime = Regime::Undetermined;
        report.gorenstein = Status::Undetermined;
        report.q_gorenstein = Status::Undetermined;
        report.fano = Status::Undetermined;
        report.q_gorenstein_fano = Status::Undetermined;
        report.nef_anticanonical = None;
        report.c1 = None;
        let note = "not simply-laced and not Q-factorial: no criterion available, left undetermined";
        for key in ["gorenstein", "q_gorenstein", "fano", "q_gorenstein_fano", "c1"] {
            report.provenance.insert(key.into(), note.into());
        }
        return Ok(report);
    };
    report.basis = basis;

    let m_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| cols.iter().map(|&k| r.coeff(k)).collect())
        .collect();
    let m = IntMatrix::from_rows_with_cols(&m_rows, cols.len())?;
    let inv = inverse_rational(&m)?;
    let h1: Vec<Rational64> = rows.iter().map(|r| rat(height(r) + 1)).collect();
    let hat_n = inv.mul_vec(&h1)?;
    let ones = vec![Rational64::one(); rows.len()];
    let n_one = inv.mul_vec(&ones)?;
    if input.parabolic.is_borel() {
        let shortcut: Vec<Rational64> = n_one.iter().map(|x| x + Rational64::one()).collect();
        if shortcut != hat_n {
            return Err(SchubertError::Internal(
                "Borel shortcut 1 + N 1 disagrees with N (h + 1)".into(),
            ));
        }
    }
    let hat = LabeledVector {
        labels: cols.clone(),
        values: hat_n.iter().map(|&x| Rat(x)).collect(),
    };
    report.dual_basis_sum = Some(
        LabeledVector {
            labels: cols.clone(),
            values: n_one.iter().map(|&x| Rat(x)).collect(),
        }
        .to_weight(n),
    );
    report.m = Some(LabeledIntMatrix {
        rows: rows.clone(),
        cols: cols.clone(),
        entries: m_rows,
    });
    report.n = Some(LabeledRatMatrix {
        rows: cols.clone(),
        cols: rows.clone(),
        entries: inv
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(Rat).collect())
            .collect(),
    });
    let all_pos = hat_n.iter().all(|x| x.is_positive());
    report.nef_anticanonical = Some(hat_n.iter().all(|x| !x.is_negative()));
    report.provenance.insert(
        "nef_anticanonical".into(),
        "every hat_n_k >= 0 (derived notion, semi-Fano)".into(),
    );

    match report.regime {
        Regime::SimplyLaced => {
            if !hat_n.iter().all(|x| x.is_integer()) {
                return Err(SchubertError::Internal(
                    "unipotent M gave a non-integral hat_n".into(),
                ));
            }
            let in_basis: HashSet<&CorootVec> = rows.iter().collect();
            for &i in &sets.cover_p {
                let eta = d.coroot(i);
                if in_basis.contains(eta) {
                    continue;
                }
                let lhs: Rational64 = cols
                    .iter()
                    .zip(&hat_n)
                    .map(|(&k, x)| x * rat(eta.coeff(k)))
                    .sum();
                if lhs - rat(height(eta)) != Rational64::one() {
                    report.gorenstein_failures.push(eta.clone());
                }
            }
            let gorenstein = report.gorenstein_failures.is_empty();
            report.gorenstein = Status::from_bool(gorenstein);
            report.q_gorenstein = report.gorenstein;
            report.fano = Status::from_bool(gorenstein && all_pos);
            report.q_gorenstein_fano = report.fano;
            report.c1 = gorenstein.then(|| hat.to_weight(n));
            report.provenance.insert(
                "gorenstein".into(),
                "simply-laced: hat_n = N(h+1) over the adapted basis B_(w,P); Gorenstein iff sum_k hat_n_k <w_k, eta> - ht(eta) = 1 for every eta in R+_(w,P) outside the basis".into(),
            );
            report.provenance.insert(
                "q_gorenstein".into(),
                "simply-laced: the basis rows fix the only rational candidate, which is integral, so Q-Gorenstein iff Gorenstein".into(),
            );
            report.provenance.insert(
                "fano".into(),
                "Gorenstein and every hat_n_k > 0".into(),
            );
            report.provenance.insert(
                "q_gorenstein_fano".into(),
                "simply-laced: equal to fano".into(),
            );
            report
                .provenance
                .insert("c1".into(), "sum_k hat_n_k w_k when Gorenstein".into());
        }
        Regime::QFactorial => {
            let gorenstein = hat_n.iter().all(|x| x.is_integer());
            report.gorenstein = Status::from_bool(gorenstein);
            report.q_gorenstein = Status::Yes;
            report.fano = Status::from_bool(gorenstein && all_pos);
            report.q_gorenstein_fano = Status::from_bool(all_pos);
            report.c1 = Some(hat.to_weight(n));
            report.provenance.insert(
                "gorenstein".into(),
                "Q-factorial: hat_n = N(h+1) with M over all of R+_(w,P); Gorenstein iff every hat_n_k is an integer".into(),
            );
            report.provenance.insert(
                "q_gorenstein".into(),
                "Q-factorial implies Q-Gorenstein".into(),
            );
            report.provenance.insert(
                "fano".into(),
                "Gorenstein Fano: Gorenstein and every hat_n_k > 0".into(),
            );
            report.provenance.insert(
                "q_gorenstein_fano".into(),
                "every hat_n_k > 0".into(),
            );
            report.provenance.insert(
                "c1".into(),
                "sum_k hat_n_k w_k (rational when not Gorenstein)".into(),
            );
        }
        Regime::Point | Regime::Undetermined => unreachable!(),
    }
    report.hat_n = Some(hat);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap())
    }

    fn cv(v: &[i64]) -> CorootVec {
        CorootVec(v.to_vec())
    }

    fn input<'a>(d: &'a RootDatum, ip: &[usize], word: &str) -> SchubertInput<'a> {
        let p = ParabolicSubset::new(d.rank(), ip.iter().copied()).unwrap();
        SchubertInput::from_word(d, p, &word.parse().unwrap(), false).unwrap()
    }

    fn q(n: i64, m: i64) -> Rational64 {
        Rational64::new(n, m)
    }

    #[test]
    fn inversion_sets() {
        let g2 = datum("G2");
        let sets = coroot_inversion_set(&input(&g2, &[], "2 1 2 1 2"));
        let got: HashSet<CorootVec> = sets.inv_ordered.into_iter().collect();
        let want: HashSet<CorootVec> = [
            cv(&[0, 1]),
            cv(&[1, 1]),
            cv(&[3, 2]),
            cv(&[2, 1]),
            cv(&[3, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        let a4 = datum("A4");
        let sets = coroot_inversion_set(&input(&a4, &[], "3 4 1 2 3"));
        assert_eq!(sets.inversion.len(), 5);
        assert_eq!(sets.support_b, vec![1, 2, 3, 4]);
    }

    #[test]
    fn decompose_examples() {
        let g2 = datum("G2");
        let inv = inversion_set(&g2, &element_from_word(&g2, &"2 1 2".parse().unwrap()).unwrap());
        let dec = decompose(&g2, &cv(&[1, 1]), &inv, TieBreak::Smallest).unwrap().unwrap();
        assert_eq!(
            dec,
            Decomposition {
                c: 3,
                first: cv(&[0, 1]),
                second: cv(&[3, 2])
            }
        );
        assert_eq!(decompose(&g2, &cv(&[0, 1]), &inv, TieBreak::Smallest).unwrap(), None);
        assert!(matches!(
            decompose(&g2, &cv(&[1, 0]), &inv, TieBreak::Smallest),
            Err(SchubertError::NotInInversionSet(_))
        ));
    }

    #[test]
    fn covers() {
        let g2 = datum("G2");
        let s = cover_coroots(&input(&g2, &[], "2 1 2 1"));
        assert_eq!(
            s.cover_b.iter().map(|&i| g2.coroot(i).clone()).collect::<Vec<_>>(),
            vec![cv(&[1, 0]), cv(&[3, 2])]
        );
        let s = cover_coroots(&input(&g2, &[2], "2 1 2 1"));
        assert_eq!(s.cover_p.len(), 1);
        assert_eq!(g2.coroot(s.cover_p[0]), &cv(&[3, 2]));

        let a4 = datum("A4");
        let s = cover_coroots(&input(&a4, &[4], "3 4 1 2 3"));
        let got: Vec<CorootVec> = s.cover_p.iter().map(|&i| a4.coroot(i).clone()).collect();
        assert_eq!(got, vec![cv(&[0, 0, 1, 1]), cv(&[0, 1, 1, 1]), cv(&[1, 1, 1, 0])]);
    }

    #[test]
    fn simple_reflection_is_p1() {
        for t in ["A1", "A3", "B2", "G2", "D4"] {
            let d = datum(t);
            for i in 1..=d.rank() {
                let r = classify(&input(&d, &[], &i.to_string())).unwrap();
                assert!(r.factorial);
                assert_eq!(r.gorenstein, Status::Yes);
                assert_eq!(r.fano, Status::Yes);
                let mut c1 = WeightVec::zero(d.rank());
                c1.0[i - 1] = rat(2);
                assert_eq!(r.c1, Some(c1), "{t} s{i}");
            }
        }
    }

    #[test]
    fn point_report() {
        let d = datum("A2");
        let r = classify(&SchubertInput::new(&d, ParabolicSubset::borel(2), WeylElement::identity(2)).unwrap())
            .unwrap();
        assert_eq!(r.regime, Regime::Point);
        assert_eq!((r.b2, r.b_top), (0, 0));
        assert!(r.factorial && r.q_factorial);
        assert_eq!(r.gorenstein, Status::Yes);
    }

    #[test]
    fn g2_borel_surfaces() {
        let g2 = datum("G2");
        let r = classify(&input(&g2, &[], "2 1")).unwrap();
        assert_eq!(r.regime, Regime::QFactorial);
        let hat = r.hat_n.unwrap();
        assert_eq!((hat.get(1), hat.get(2)), (Some(rat(2)), Some(rat(-1))));
        assert_eq!(r.fano, Status::No);

        let r = classify(&input(&g2, &[], "2 1 2")).unwrap();
        assert!(r.q_factorial && !r.factorial);
        assert_eq!(r.factorial_evidence.invariant_factors, vec![1, 3]);
        let c1 = r.c1.unwrap();
        assert_eq!(c1.0, vec![q(2, 3), rat(2)]);
        assert_eq!(r.gorenstein, Status::No);
        assert_eq!(r.q_gorenstein_fano, Status::Yes);
    }

    #[test]
    fn a4_examples() {
        let a4 = datum("A4");
        let r = classify(&input(&a4, &[], "3 4 1 2 3")).unwrap();
        assert!(!r.q_factorial && !r.factorial);
        // distances d(3)=1, d(2)=d(4)=2, d(1)=3
        assert_eq!(r.basis.as_ref().unwrap().order(), vec![3, 2, 4, 1]);
        let hat = r.hat_n.as_ref().unwrap();
        for (k, v) in [(3, 2), (2, 1), (1, 1), (4, 1)] {
            assert_eq!(hat.get(k), Some(rat(v)));
        }
        assert_eq!(r.gorenstein, Status::Yes);
        assert_eq!(r.fano, Status::Yes);
        assert_eq!(r.c1.unwrap().0, vec![rat(1), rat(1), rat(2), rat(1)]);

        let r = classify(&input(&a4, &[4], "3 4 1 2 3")).unwrap();
        assert!(r.factorial);
        let b = r.basis.as_ref().unwrap();
        assert_eq!(b.order(), vec![3, 2, 1]);
        assert_eq!(
            b.entries.iter().map(|e| e.coroot.clone()).collect::<Vec<_>>(),
            vec![cv(&[0, 0, 1, 1]), cv(&[0, 1, 1, 1]), cv(&[1, 1, 1, 0])]
        );
        assert_eq!(r.hat_n.as_ref().unwrap().values, vec![Rat(rat(3)), Rat(rat(1)), Rat(rat(0))]);
        assert_eq!((r.gorenstein, r.fano), (Status::Yes, Status::No));
        assert_eq!(r.nef_anticanonical, Some(true));
        assert_eq!(r.c1.unwrap().0, vec![rat(0), rat(1), rat(3), rat(0)]);
    }

    #[test]
    fn input_validation() {
        let a2 = datum("A2");
        let p = ParabolicSubset::new(2, [2]).unwrap();
        let w: Word = "1 2 1".parse().unwrap();
        assert!(matches!(
            SchubertInput::from_word(&a2, p.clone(), &w, false),
            Err(SchubertError::NotMinimalCosetRep { violating: 2 })
        ));
        let ok = SchubertInput::from_word(&a2, p, &w, true).unwrap();
        assert_eq!(ok.element().length(), 2);
        assert!(matches!(
            SchubertInput::from_word(&a2, ParabolicSubset::borel(2), &"1 1".parse().unwrap(), false),
            Err(SchubertError::Weyl(WeylError::NonReducedWord { .. }))
        ));
        assert!(matches!(
            SchubertInput::new(&a2, ParabolicSubset::new(2, [1, 2]).unwrap(), WeylElement::identity(2)),
            Err(SchubertError::WholeGroup)
        ));
    }

    #[test]
    fn b_wb_requires_simply_laced() {
        let g2 = datum("G2");
        let inp = input(&g2, &[], "1 2");
        let sets = cover_coroots(&inp);
        let mut rd = RightmostDistance::new(&g2, TieBreak::Smallest);
        assert!(matches!(
            build_b_wb(&inp, &sets, &mut rd, TieBreak::Smallest),
            Err(SchubertError::NotSimplyLaced(_))
        ));
    }
}
