//! Weyl group elements and word combinatorics.
//!
//! A [`WeylElement`] is stored as its integer action matrix on the coroot
//! lattice in the simple-coroot basis: column `j` is `w(coroot_j)`. The
//! matrix is the equality and hash key; words are never compared.
//!
//! `element_from_word(&[i1, .., ir])` is `s_i1 * .. * s_ir`, so the letters
//! are read left to right and the last letter acts first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rootdata::{CorootVec, RootDatum};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("simple index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector has length {got}, expected rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("word not reduced: {letters} letters but the element has length {length}")]
    NonReducedWord { letters: usize, length: usize },
    #[error("s_{0} is not below the element in Bruhat order")]
    NotInSupport(usize),
    #[error("{0} is not a positive coroot")]
    NotACoroot(CorootVec),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

type Result<T> = std::result::Result<T, WeylError>;

/// A sequence of 1-based simple indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn check_range(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > rank) {
            Some(&index) => Err(WeylError::IndexOutOfRange { index, rank }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Parses whitespace- or comma-separated indices; range is checked later
/// against a datum.
impl FromStr for Word {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self> {
        parse_index_list(s, "word").map(Word)
    }
}

pub(crate) fn parse_index_list(s: &str, what: &'static str) -> Result<Vec<usize>> {
    let err = || WeylError::Parse {
        what,
        input: s.to_string(),
    };
    let mut out = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        if tok.len() > 4 || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        out.push(tok.parse().map_err(|_| err())?);
    }
    Ok(out)
}

/// The simple indices `I_P` generating the Levi of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicSubset {
    rank: usize,
    inside: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new(rank: usize, inside: impl IntoIterator<Item = usize>) -> Result<Self> {
        let inside: BTreeSet<usize> = inside.into_iter().collect();
        if let Some(&index) = inside.iter().find(|&&i| i == 0 || i > rank) {
            return Err(WeylError::IndexOutOfRange { index, rank });
        }
        Ok(ParabolicSubset { rank, inside })
    }

    /// `I_P` empty.
    pub fn borel(rank: usize) -> Self {
        ParabolicSubset {
            rank,
            inside: BTreeSet::new(),
        }
    }

    /// Parses a list like `"1,3"` or `"1 3"`; the empty string is the Borel.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        Self::new(rank, parse_index_list(s, "parabolic subset")?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, j: usize) -> bool {
        self.inside.contains(&j)
    }

    pub fn is_borel(&self) -> bool {
        self.inside.is_empty()
    }

    pub fn is_everything(&self) -> bool {
        self.inside.len() == self.rank
    }

    /// `I_P` ascending.
    pub fn inside(&self) -> impl Iterator<Item = usize> + '_ {
        self.inside.iter().copied()
    }

    /// `I^P`, the complement, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.rank).filter(|i| !self.contains(*i)).collect()
    }

    /// Every subset of `{1..rank}`, ordered by bitmask.
    pub fn all(rank: usize) -> Vec<ParabolicSubset> {
        (0u32..(1 << rank))
            .map(|mask| ParabolicSubset {
                rank,
                inside: (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0).collect(),
            })
            .collect()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.inside.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Element of the Weyl group, as its action on the coroot lattice.
#[derive(Debug, Clone)]
pub struct WeylElement {
    rank: usize,
    /// row-major, column j = w(coroot_{j+1})
    mat: Vec<i64>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.mat.hash(h);
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![0; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement {
            rank,
            mat,
            length: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Row-major action matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.mat.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    /// `w(coroot_j)` for 1-based `j`.
    pub fn image_of_simple(&self, j: usize) -> CorootVec {
        CorootVec((0..self.rank).map(|r| self.mat[r * self.rank + j - 1]).collect())
    }

    #[inline]
    fn col_sign(&self, j: usize) -> i64 {
        // images of roots are never zero, and all coefficients share a sign
        let n = self.rank;
        (0..n)
            .map(|r| self.mat[r * n + j])
            .find(|&x| x != 0)
            .map_or(0, i64::signum)
    }

    /// True iff `w(coroot_j) < 0`, i.e. `l(w s_j) < l(w)`.
    #[inline]
    pub fn is_right_descent(&self, j: usize) -> bool {
        self.col_sign(j - 1) < 0
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&j| self.is_right_descent(j)).collect()
    }

    pub fn act_on_coroot(&self, c: &CorootVec) -> Result<CorootVec> {
        if c.len() != self.rank {
            return Err(WeylError::DimensionMismatch {
                expected: self.rank,
                got: c.len(),
            });
        }
        Ok(self.apply(c))
    }

    #[inline]
    pub(crate) fn apply(&self, c: &CorootVec) -> CorootVec {
        let n = self.rank;
        CorootVec(
            (0..n)
                .map(|r| (0..n).map(|k| self.mat[r * n + k] * c.0[k]).sum())
                .collect(),
        )
    }

    /// `w * s_i`.
    pub fn mul_simple_right(&self, d: &RootDatum, i: usize) -> WeylElement {
        let n = self.rank;
        let descent = self.is_right_descent(i);
        let mut mat = self.mat.clone();
        // s_i(coroot_j) = coroot_j - C[j][i] coroot_i
        for j in 0..n {
            let a = d.cartan()[j][i - 1];
            if j == i - 1 || a == 0 {
                continue;
            }
            for r in 0..n {
                mat[r * n + j] -= a * self.mat[r * n + i - 1];
            }
        }
        for r in 0..n {
            mat[r * n + i - 1] = -self.mat[r * n + i - 1];
        }
        WeylElement {
            rank: n,
            mat,
            length: if descent {
                self.length - 1
            } else {
                self.length + 1
            },
        }
    }

    /// `s_i * w`.
    pub fn mul_simple_left(&self, d: &RootDatum, i: usize) -> WeylElement {
        let n = self.rank;
        let mut mat = self.mat.clone();
        // s_i(v) changes only coordinate i: v_i -= <alpha_i, v>
        for col in 0..n {
            let pairing: i64 = (0..n)
                .map(|k| self.mat[k * n + col] * d.cartan()[k][i - 1])
                .sum();
            mat[(i - 1) * n + col] -= pairing;
        }
        let mut out = WeylElement {
            rank: n,
            mat,
            length: 0,
        };
        out.length = inversion_count(d, &out);
        out
    }
}

/// Number of positive coroots sent to negative ones.
pub fn inversion_count(d: &RootDatum, w: &WeylElement) -> usize {
    d.positives()
        .iter()
        .filter(|p| w.apply(&p.coroot).is_negative())
        .count()
}

/// Positive coroots sent negative, in canonical index order.
pub fn inversion_set(d: &RootDatum, w: &WeylElement) -> Vec<usize> {
    (0..d.positives().len())
        .filter(|&k| w.apply(d.coroot(k)).is_negative())
        .collect()
}

pub fn element_from_word(d: &RootDatum, word: &Word) -> Result<WeylElement> {
    word.check_range(d.rank())?;
    Ok(word
        .0
        .iter()
        .fold(WeylElement::identity(d.rank()), |w, &i| w.mul_simple_right(d, i)))
}

/// Like [`element_from_word`] but errors if the word is not reduced.
pub fn element_from_reduced_word(d: &RootDatum, word: &Word) -> Result<WeylElement> {
    let w = element_from_word(d, word)?;
    if w.length() != word.len() {
        return Err(WeylError::NonReducedWord {
            letters: word.len(),
            length: w.length(),
        });
    }
    Ok(w)
}

/// Composition `a * b` (apply `b` first).
pub fn compose(d: &RootDatum, a: &WeylElement, b: &WeylElement) -> WeylElement {
    let n = a.rank;
    let mut mat = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            mat[r * n + c] = (0..n).map(|k| a.mat[r * n + k] * b.mat[k * n + c]).sum();
        }
    }
    let mut out = WeylElement {
        rank: n,
        mat,
        length: 0,
    };
    out.length = inversion_count(d, &out);
    out
}

/// A reduced word obtained by peeling right descents; reading it in
/// reverse gives the inverse.
fn right_peeled_word(d: &RootDatum, w: &WeylElement) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.length());
    let mut u = w.clone();
    while !u.is_identity() {
        let j = (1..=u.rank).find(|&j| u.is_right_descent(j)).expect("descent");
        out.push(j);
        u = u.mul_simple_right(d, j);
    }
    out
}

pub fn inverse(d: &RootDatum, w: &WeylElement) -> WeylElement {
    right_peeled_word(d, w)
        .into_iter()
        .fold(WeylElement::identity(d.rank()), |u, j| u.mul_simple_right(d, j))
}

/// Reduced word obtained by repeatedly peeling the smallest left descent.
pub fn canonical_reduced_word(d: &RootDatum, w: &WeylElement) -> Word {
    let mut u = inverse(d, w);
    let mut out = Vec::with_capacity(w.length());
    while !u.is_identity() {
        let i = (1..=u.rank).find(|&i| u.is_right_descent(i)).expect("descent");
        out.push(i);
        u = u.mul_simple_right(d, i);
    }
    Word(out)
}

/// Simple indices `i` with `s_i <= w`.
pub fn support(d: &RootDatum, w: &WeylElement) -> BTreeSet<usize> {
    right_peeled_word(d, w).into_iter().collect()
}

pub fn is_min_coset_rep(w: &WeylElement, p: &ParabolicSubset) -> bool {
    p.inside().all(|j| !w.is_right_descent(j))
}

/// The minimal-length representative of `w W_P`.
pub fn min_coset_rep(d: &RootDatum, w: &WeylElement, p: &ParabolicSubset) -> WeylElement {
    let mut u = w.clone();
    while let Some(j) = p.inside().find(|&j| u.is_right_descent(j)) {
        u = u.mul_simple_right(d, j);
    }
    u
}

/// `k`-th entry is `s_ir .. s_i(r-k+2)(coroot_i(r-k+1))`.
pub fn inversion_sequence(d: &RootDatum, word: &Word) -> Result<Vec<CorootVec>> {
    element_from_reduced_word(d, word)?;
    let mut u = WeylElement::identity(d.rank());
    let mut out = Vec::with_capacity(word.len());
    for &i in word.0.iter().rev() {
        out.push(u.image_of_simple(i));
        u = u.mul_simple_right(d, i);
    }
    Ok(out)
}

/// The reflection in a positive coroot `c`.
pub fn reflection_element(d: &RootDatum, c: &CorootVec) -> Result<WeylElement> {
    let idx = d.coroot_index(c).ok_or_else(|| WeylError::NotACoroot(c.clone()))?;
    let n = d.rank();
    let mut mat = vec![0; n * n];
    for j in 1..=n {
        let img = d.reflect_coroot_by(idx, &d.simple_coroot(j));
        for r in 0..n {
            mat[r * n + j - 1] = img.0[r];
        }
    }
    let mut out = WeylElement {
        rank: n,
        mat,
        length: 0,
    };
    out.length = inversion_count(d, &out);
    Ok(out)
}

/// All `w` in `W^P` with `l(w) <= max_len`, ordered by length then
/// canonical reduced word. Grows by left multiplication, since `W^P` is
/// closed under left prefixes.
pub fn enumerate_coset_reps(
    d: &RootDatum,
    p: &ParabolicSubset,
    max_len: usize,
) -> Vec<WeylElement> {
    let mut out = vec![WeylElement::identity(d.rank())];
    let mut level = out.clone();
    for _ in 0..max_len {
        let mut next: HashMap<WeylElement, Word> = HashMap::new();
        for w in &level {
            for i in 1..=d.rank() {
                let v = w.mul_simple_left(d, i);
                if v.length() < w.length() {
                    continue;
                }
                if is_min_coset_rep(&v, p) && !next.contains_key(&v) {
                    let word = canonical_reduced_word(d, &v);
                    next.insert(v, word);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let mut items: Vec<(Word, WeylElement)> = next.into_iter().map(|(w, k)| (k, w)).collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        level = items.into_iter().map(|(_, w)| w).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Reduced words of `w`, at most `cap` of them, plus a truncation flag.
pub fn all_reduced_words(d: &RootDatum, w: &WeylElement, cap: usize) -> (Vec<Word>, bool) {
    let mut out = Vec::new();
    let mut suffix = Vec::with_capacity(w.length());
    let truncated = reduced_words_rec(d, w, &mut suffix, cap, &mut out);
    (out, truncated)
}

fn reduced_words_rec(
    d: &RootDatum,
    w: &WeylElement,
    suffix: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<Word>,
) -> bool {
    if w.is_identity() {
        if out.len() >= cap {
            return true;
        }
        out.push(Word(suffix.iter().rev().copied().collect()));
        return false;
    }
    for i in w.right_descents() {
        suffix.push(i);
        let stop = reduced_words_rec(d, &w.mul_simple_right(d, i), suffix, cap, out);
        suffix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Bruhat order `u <= w`.
pub fn bruhat_le(d: &RootDatum, u: &WeylElement, w: &WeylElement) -> bool {
    if u.length() > w.length() {
        return false;
    }
    if u.is_identity() {
        return true;
    }
    let s = w.right_descents()[0];
    let ws = w.mul_simple_right(d, s);
    if u.is_right_descent(s) {
        bruhat_le(d, &u.mul_simple_right(d, s), &ws)
    } else {
        bruhat_le(d, u, &ws)
    }
}

/// `u` is covered by `w`.
pub fn bruhat_covers(d: &RootDatum, u: &WeylElement, w: &WeylElement) -> bool {
    u.length() + 1 == w.length() && bruhat_le(d, u, w)
}

/// Which descent wins when several realise the same minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
}

impl TieBreak {
    /// Reorders candidates so the preferred one comes first.
    pub fn order<T>(self, mut v: Vec<T>) -> Vec<T> {
        if self == TieBreak::Largest {
            v.reverse();
        }
        v
    }
}

/// Result of a rightmost-distance query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rightmost {
    /// minimal distance of the rightmost `s_k` from the end, the end being 1
    pub distance: usize,
    /// a reduced word of `w` realising it
    pub witness: Word,
    /// `s_ir .. s_i(r-d+2)(coroot_k)` read off the witness
    pub coroot: CorootVec,
}

/// Memoised rightmost distances for one datum and one tie-break policy.
///
/// Not shared between threads; give each worker its own.
pub struct RightmostDistance<'a> {
    datum: &'a RootDatum,
    policy: TieBreak,
    memo: HashMap<(WeylElement, usize), Option<Rightmost>>,
}

impl<'a> RightmostDistance<'a> {
    pub fn new(datum: &'a RootDatum, policy: TieBreak) -> Self {
        RightmostDistance {
            datum,
            policy,
            memo: HashMap::new(),
        }
    }

    /// `d_w(k)` with a witness word.
    pub fn query(&mut self, w: &WeylElement, k: usize) -> Result<Rightmost> {
        let n = self.datum.rank();
        if k == 0 || k > n {
            return Err(WeylError::IndexOutOfRange { index: k, rank: n });
        }
        self.go(w, k).ok_or(WeylError::NotInSupport(k))
    }

    fn go(&mut self, w: &WeylElement, k: usize) -> Option<Rightmost> {
        if let Some(hit) = self.memo.get(&(w.clone(), k)) {
            return hit.clone();
        }
        let d = self.datum;
        let res = if w.is_right_descent(k) {
            let mut word = canonical_reduced_word(d, &w.mul_simple_right(d, k));
            word.0.push(k);
            Some(Rightmost {
                distance: 1,
                witness: word,
                coroot: d.simple_coroot(k),
            })
        } else {
            let mut best: Option<(usize, Rightmost)> = None;
            for i in self.policy.order(w.right_descents()) {
                let Some(sub) = self.go(&w.mul_simple_right(d, i), k) else {
                    continue;
                };
                if best.as_ref().is_none_or(|(_, b)| sub.distance + 1 < b.distance) {
                    let mut witness = sub.witness;
                    witness.0.push(i);
                    let coroot = reflect_simple(d, i, &sub.coroot);
                    best = Some((
                        i,
                        Rightmost {
                            distance: sub.distance + 1,
                            witness,
                            coroot,
                        },
                    ));
                }
            }
            best.map(|(_, r)| r)
        };
        self.memo.insert((w.clone(), k), res.clone());
        res
    }
}

/// Every value of `s_ir .. s_i(r-d+2)(coroot_k)` over all reduced words of
/// `w` whose rightmost `s_k` sits at the minimal distance `d`, each with one
/// witness word. Sorted by coroot.
pub fn rightmost_all(
    d: &RootDatum,
    w: &WeylElement,
    k: usize,
) -> Result<(usize, Vec<(CorootVec, Word)>)> {
    let mut dist = RightmostDistance::new(d, TieBreak::Smallest);
    let best = dist.query(w, k)?;
    let mut memo = HashMap::new();
    let values = rightmost_all_rec(d, &mut dist, w, k, &mut memo);
    debug_assert!(values.iter().all(|(_, wd)| wd.len() == w.length()));
    Ok((best.distance, values))
}

fn rightmost_all_rec(
    d: &RootDatum,
    dist: &mut RightmostDistance<'_>,
    w: &WeylElement,
    k: usize,
    memo: &mut HashMap<WeylElement, Vec<(CorootVec, Word)>>,
) -> Vec<(CorootVec, Word)> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let out = if w.is_right_descent(k) {
        let mut word = canonical_reduced_word(d, &w.mul_simple_right(d, k));
        word.0.push(k);
        vec![(d.simple_coroot(k), word)]
    } else {
        let target = dist.go(w, k).expect("k in support").distance;
        let mut acc: std::collections::BTreeMap<CorootVec, Word> = Default::default();
        for i in w.right_descents() {
            let ws = w.mul_simple_right(d, i);
            match dist.go(&ws, k) {
                Some(r) if r.distance + 1 == target => {}
                _ => continue,
            }
            for (c, mut word) in rightmost_all_rec(d, dist, &ws, k, memo) {
                word.0.push(i);
                acc.entry(reflect_simple(d, i, &c)).or_insert(word);
            }
        }
        acc.into_iter().collect()
    };
    memo.insert(w.clone(), out.clone());
    out
}

/// `s_i(c) = c - <alpha_i, c> coroot_i`.
pub fn reflect_simple(d: &RootDatum, i: usize, c: &CorootVec) -> CorootVec {
    let mut out = c.clone();
    out.0[i - 1] -= d.pair_simple_root(i, c);
    out
}

/// The longest element.
pub fn longest_element(d: &RootDatum) -> WeylElement {
    let mut w = WeylElement::identity(d.rank());
    while let Some(i) = (1..=d.rank()).find(|&i| !w.is_right_descent(i)) {
        w = w.mul_simple_right(d, i);
    }
    w
}

/// Longest element of the parabolic subgroup `W_P`.
pub fn longest_in_parabolic(d: &RootDatum, p: &ParabolicSubset) -> WeylElement {
    let mut w = WeylElement::identity(d.rank());
    while let Some(i) = p.inside().find(|&i| !w.is_right_descent(i)) {
        w = w.mul_simple_right(d, i);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap())
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn el(d: &RootDatum, s: &str) -> WeylElement {
        element_from_word(d, &word(s)).unwrap()
    }

    fn cv(v: &[i64]) -> CorootVec {
        CorootVec(v.to_vec())
    }

    #[test]
    fn words_parse() {
        assert_eq!(word("3 4 1 2 3").0, vec![3, 4, 1, 2, 3]);
        assert_eq!(word("3,4, 1").0, vec![3, 4, 1]);
        assert_eq!(word("").0, Vec::<usize>::new());
        assert!("1 x".parse::<Word>().is_err());
        assert!("-1".parse::<Word>().is_err());
        assert_eq!(word("2 1 2").to_string(), "2 1 2");
    }

    #[test]
    fn from_word_examples() {
        let a2 = datum("A2");
        assert_eq!(el(&a2, "1 2 1").length(), 3);
        assert!(el(&a2, "1 1").is_identity());
        let g2 = datum("G2");
        assert_eq!(el(&g2, "2 1 2 1").length(), 4);
        assert_eq!(
            element_from_word(&a2, &word("1 3")),
            Err(WeylError::IndexOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn action_examples() {
        let a2 = datum("A2");
        let w0 = el(&a2, "1 2 1");
        assert_eq!(w0.act_on_coroot(&cv(&[1, 0])).unwrap(), cv(&[0, -1]));
        let g2 = datum("G2");
        assert_eq!(el(&g2, "1").act_on_coroot(&cv(&[0, 1])).unwrap(), cv(&[3, 1]));
        for t in ["A3", "B3", "G2", "F4"] {
            let d = datum(t);
            for i in 1..=d.rank() {
                let s = element_from_word(&d, &Word(vec![i])).unwrap();
                assert_eq!(s.act_on_coroot(&d.simple_coroot(i)).unwrap(), d.simple_coroot(i).neg());
            }
        }
        assert!(matches!(
            w0.act_on_coroot(&cv(&[1])),
            Err(WeylError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_words() {
        let a2 = datum("A2");
        assert_eq!(canonical_reduced_word(&a2, &WeylElement::identity(2)).0, Vec::<usize>::new());
        assert_eq!(canonical_reduced_word(&a2, &el(&a2, "2 1 2")).0, vec![1, 2, 1]);
        let g2 = datum("G2");
        let w2 = el(&g2, "2 1 2 1 2");
        let c = canonical_reduced_word(&g2, &w2);
        assert_eq!(c.len(), 5);
        assert_eq!(element_from_word(&g2, &c).unwrap(), w2);
    }

    #[test]
    fn coset_examples() {
        let a2 = datum("A2");
        let w = el(&a2, "1 2 1");
        let p2 = ParabolicSubset::new(2, [2]).unwrap();
        assert!(is_min_coset_rep(&w, &ParabolicSubset::borel(2)));
        assert!(!is_min_coset_rep(&w, &p2));
        let m = min_coset_rep(&a2, &w, &p2);
        assert_eq!(m, el(&a2, "2 1"));
        assert_eq!(m.length(), 2);

        let a4 = datum("A4");
        let p4 = ParabolicSubset::new(4, [4]).unwrap();
        assert!(is_min_coset_rep(&el(&a4, "3 4 1 2 3"), &p4));

        let d5 = datum("D5");
        let p = ParabolicSubset::new(5, [1, 3, 4, 5]).unwrap();
        let w0 = longest_element(&d5);
        assert_eq!(w0.length(), 20);
        assert_eq!(longest_in_parabolic(&d5, &p).length(), 7);
        assert_eq!(min_coset_rep(&d5, &w0, &p).length(), 13);
    }

    #[test]
    fn inversion_sequence_examples() {
        let g2 = datum("G2");
        let seq = inversion_sequence(&g2, &word("1 2 1 2 1 2")).unwrap();
        let expect = vec![
            cv(&[0, 1]),
            cv(&[1, 1]),
            cv(&[3, 2]),
            cv(&[2, 1]),
            cv(&[3, 1]),
            cv(&[1, 0]),
        ];
        assert_eq!(seq, expect);
        let rev = inversion_sequence(&g2, &word("2 1 2 1 2 1")).unwrap();
        assert_eq!(rev, expect.into_iter().rev().collect::<Vec<_>>());
        assert_eq!(inversion_sequence(&g2, &word("2")).unwrap(), vec![cv(&[0, 1])]);
        assert_eq!(
            inversion_sequence(&g2, &word("1 1")),
            Err(WeylError::NonReducedWord {
                letters: 2,
                length: 0
            })
        );
    }

    #[test]
    fn rightmost_examples() {
        let a4 = datum("A4");
        let w = el(&a4, "2 1 3 4 3 2 1");
        let mut rd = RightmostDistance::new(&a4, TieBreak::Smallest);
        assert_eq!(rd.query(&w, 3).unwrap().distance, 3);
        for k in [1, 2, 4] {
            assert_eq!(rd.query(&w, k).unwrap().distance, 1);
        }
        let r = rd.query(&w, 3).unwrap();
        assert_eq!(element_from_word(&a4, &r.witness).unwrap(), w);
        let (d, all) = rightmost_all(&a4, &w, 3).unwrap();
        assert_eq!(d, 3);
        let vals: Vec<CorootVec> = all.into_iter().map(|(c, _)| c).collect();
        assert_eq!(vals, vec![cv(&[0, 1, 1, 1]), cv(&[1, 1, 1, 0])]);
        let s1 = el(&a4, "1");
        assert_eq!(rd.query(&s1, 2), Err(WeylError::NotInSupport(2)));
    }

    #[test]
    fn reflection_examples() {
        let a2 = datum("A2");
        assert_eq!(reflection_element(&a2, &cv(&[1, 1])).unwrap(), el(&a2, "1 2 1"));
        assert_eq!(reflection_element(&a2, &cv(&[1, 0])).unwrap(), el(&a2, "1"));
        let g2 = datum("G2");
        let t = reflection_element(&g2, &cv(&[3, 2])).unwrap();
        assert_eq!(t.length(), 5);
        assert!(matches!(
            reflection_element(&g2, &cv(&[1, 2])),
            Err(WeylError::NotACoroot(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let g2 = datum("G2");
        assert_eq!(enumerate_coset_reps(&g2, &ParabolicSubset::borel(2), 12).len(), 12);
        let p = ParabolicSubset::new(2, [2]).unwrap();
        assert_eq!(enumerate_coset_reps(&g2, &p, 6).len(), 6);
        let a4 = datum("A4");
        assert_eq!(enumerate_coset_reps(&a4, &ParabolicSubset::borel(4), 10).len(), 120);
        let all = enumerate_coset_reps(&a4, &ParabolicSubset::borel(4), 3);
        assert!(all.windows(2).all(|w| w[0].length() <= w[1].length()));
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = datum("A2");
        let (ws, trunc) = all_reduced_words(&a2, &el(&a2, "1 2 1"), 100);
        let set: BTreeSet<Word> = ws.into_iter().collect();
        assert_eq!(set, [word("1 2 1"), word("2 1 2")].into_iter().collect());
        assert!(!trunc);
        let g2 = datum("G2");
        assert_eq!(all_reduced_words(&g2, &longest_element(&g2), 100).0.len(), 2);
        let (ws, _) = all_reduced_words(&g2, &WeylElement::identity(2), 100);
        assert_eq!(ws, vec![Word::default()]);
        let a3 = datum("A3");
        let (ws, trunc) = all_reduced_words(&a3, &longest_element(&a3), 5);
        assert_eq!(ws.len(), 5);
        assert!(trunc);
        assert_eq!(all_reduced_words(&a3, &longest_element(&a3), 1000).0.len(), 16);
    }

    #[test]
    fn bruhat_examples() {
        let a2 = datum("A2");
        let e = WeylElement::identity(2);
        let s1 = el(&a2, "1");
        let s2 = el(&a2, "2");
        let s12 = el(&a2, "1 2");
        let w0 = el(&a2, "1 2 1");
        assert!(bruhat_le(&a2, &e, &w0));
        assert!(bruhat_le(&a2, &s2, &s12));
        assert!(!bruhat_le(&a2, &s1, &s2));
        assert!(bruhat_covers(&a2, &s12, &w0));
        assert!(!bruhat_covers(&a2, &s1, &w0));
        assert_eq!(el(&a2, "2 1").mul_simple_left(&a2, 1), w0);
    }

    #[test]
    fn parabolic_parse() {
        let p = ParabolicSubset::parse(4, "1, 3").unwrap();
        assert_eq!(p.complement(), vec![2, 4]);
        assert!(ParabolicSubset::parse(4, "").unwrap().is_borel());
        assert!(ParabolicSubset::parse(4, "5").is_err());
        assert!(ParabolicSubset::parse(4, "0").is_err());
        assert_eq!(ParabolicSubset::all(3).len(), 8);
        assert_eq!(p.to_string(), "{1,3}");
    }
}
