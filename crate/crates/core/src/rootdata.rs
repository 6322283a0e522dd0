//! Finite root systems of simple Lie type.
//!
//! A [`RootDatum`] holds the Cartan matrix together with the positive roots
//! and positive coroots, stored as paired integer vectors over the simple
//! roots and simple coroots respectively.
//!
//! Conventions:
//!
//! * `cartan[i][j] = <alpha_j, coroot_i>` (row = coroot, column = root).
//! * Nodes are numbered as in Bourbaki. `D_n` forks at node `n - 2`, so in
//!   `D_5` both `a3 + a4` and `a3 + a5` are roots.
//! * `G_2` uses `alpha_1` long: `<alpha_1, coroot_2> = -3` and
//!   `<alpha_2, coroot_1> = -1`.
//! * Positive pairs are ordered by coroot height, then lexicographically on
//!   the coroot coordinates. The position in that list is the *canonical
//!   index* used for deterministic tie-breaking everywhere else.
//!
//! Simple indices are 1-based in every public signature; vector coordinates
//! are stored 0-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlinalg::{fmt_rational, parse_rational};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("cannot parse Cartan type {0:?}: expected a family letter A-G followed by a rank")]
    Parse(String),
    #[error("vector has length {got}, expected rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple Cartan type such as `A4` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootDataError::InvalidType { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// The Cartan matrix, `m[i][j] = <alpha_j, coroot_i>`, 0-based.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |a: usize, b: usize| {
            m[a - 1][b - 1] = -1;
            m[b - 1][a - 1] = -1;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| link(i, i + 1)),
            Family::B | Family::C => (1..n).for_each(|i| link(i, i + 1)),
            Family::D => {
                (1..n - 1).for_each(|i| link(i, i + 1));
                link(n - 2, n);
            }
            Family::E => {
                link(1, 3);
                link(3, 4);
                link(2, 4);
                (4..n).for_each(|i| link(i, i + 1));
            }
            Family::F => (1..4).for_each(|i| link(i, i + 1)),
            Family::G => link(1, 2),
        }
        match self.family {
            // alpha_n short
            Family::B => m[n - 1][n - 2] = -2,
            // alpha_n long
            Family::C => m[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Family::F => m[2][1] = -2,
            // alpha_1 long
            Family::G => m[1][0] = -3,
            _ => {}
        }
        m
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootDataError::Parse(s.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || digits.len() > 3 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RootDataError::Parse(s.to_string()));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| RootDataError::Parse(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! coord_vec {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            /// The `i`-th simple vector (1-based).
            pub fn simple(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i - 1] = 1;
                $name(v)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            /// Coefficient of the `i`-th simple vector (1-based).
            pub fn coeff(&self, i: usize) -> i64 {
                self.0[i - 1]
            }

            pub fn is_positive(&self) -> bool {
                self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
            }

            pub fn is_negative(&self) -> bool {
                self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
            }

            pub fn neg(&self) -> Self {
                $name(self.0.iter().map(|c| -c).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            /// `self + k * other`
            pub fn add_scaled(&self, k: i64, other: &Self) -> Self {
                $name(
                    self.0
                        .iter()
                        .zip(&other.0)
                        .map(|(a, b)| a + k * b)
                        .collect(),
                )
            }

            pub fn scale(&self, k: i64) -> Self {
                $name(self.0.iter().map(|a| k * a).collect())
            }

            /// Indices (1-based) with a nonzero coefficient.
            pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, _)| i + 1)
            }
        }

        impl Index<usize> for $name {
            type Output = i64;
            fn index(&self, i: usize) -> &i64 {
                &self.0[i]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (k, c) in self.0.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

coord_vec!(RootVec, "Integer coefficients over the simple roots.");
coord_vec!(CorootVec, "Integer coefficients over the simple coroots.");

/// Rational coefficients over the fundamental weights. Serialized as a
/// list of `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVec(pub Vec<Rational64>);

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec(vec![Rational64::zero(); rank])
    }

    /// `<sum c_i w_i, c> = sum c_i * (coefficient of coroot_i in c)`.
    pub fn pair(&self, c: &CorootVec) -> Rational64 {
        self.0
            .iter()
            .zip(&c.0)
            .map(|(w, &x)| w * Rational64::from_integer(x))
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Human form such as `2w1-w2+(2/3)w4`; the zero weight prints as `0`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !a.is_one() {
                if a.is_integer() {
                    out.push_str(&a.numer().to_string());
                } else {
                    out.push_str(&format!("({}/{})", a.numer(), a.denom()));
                }
            }
            out.push_str(&format!("w{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Serialize for WeightVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(fmt_rational))
    }
}

impl<'de> Deserialize<'de> for WeightVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(WeightVec)
    }
}

/// Height of a coroot, the sum of its coefficients (equivalently `<rho, c>`).
pub fn height(c: &CorootVec) -> i64 {
    c.0.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCorootPair {
    pub root: RootVec,
    pub coroot: CorootVec,
}

/// Static data of a finite root system.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positives: Vec<RootCorootPair>,
    coroot_index: HashMap<CorootVec, usize>,
}

impl RootDatum {
    /// Builds the positive system by closing the simple pairs under simple
    /// reflections, applied to roots and coroots in parallel.
    pub fn new(cartan_type: CartanType) -> Self {
        let n = cartan_type.rank();
        let cartan = cartan_type.cartan_matrix();

        let mut seen: HashSet<CorootVec> = HashSet::new();
        let mut pairs = Vec::new();
        let mut queue = VecDeque::new();
        for i in 1..=n {
            let p = RootCorootPair {
                root: RootVec::simple(n, i),
                coroot: CorootVec::simple(n, i),
            };
            seen.insert(p.coroot.clone());
            queue.push_back(p);
        }
        while let Some(p) = queue.pop_front() {
            for i in 1..=n {
                let root = reflect_root(&cartan, i, &p.root);
                let coroot = reflect_coroot(&cartan, i, &p.coroot);
                debug_assert_eq!(root.is_positive(), coroot.is_positive());
                if coroot.is_positive() && seen.insert(coroot.clone()) {
                    queue.push_back(RootCorootPair { root, coroot });
                }
            }
            pairs.push(p);
        }
        pairs.sort_by(|a, b| {
            height(&a.coroot)
                .cmp(&height(&b.coroot))
                .then_with(|| a.coroot.cmp(&b.coroot))
        });
        let coroot_index = pairs
            .iter()
            .enumerate()
            .map(|(k, p)| (p.coroot.clone(), k))
            .collect();
        RootDatum {
            cartan_type,
            cartan,
            positives: pairs,
            coroot_index,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.cartan_type.is_simply_laced()
    }

    /// `cartan()[i][j] = <alpha_{j+1}, coroot_{i+1}>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `<alpha_j, coroot_i>` for 1-based `i`, `j`.
    #[inline]
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Positive pairs in canonical order.
    pub fn positives(&self) -> &[RootCorootPair] {
        &self.positives
    }

    pub fn coroot(&self, idx: usize) -> &CorootVec {
        &self.positives[idx].coroot
    }

    pub fn root(&self, idx: usize) -> &RootVec {
        &self.positives[idx].root
    }

    /// Canonical index of a positive coroot.
    pub fn coroot_index(&self, c: &CorootVec) -> Option<usize> {
        self.coroot_index.get(c).copied()
    }

    pub fn simple_coroot(&self, i: usize) -> CorootVec {
        CorootVec::simple(self.rank(), i)
    }

    /// The unique coroot of maximal height.
    pub fn highest_coroot(&self) -> &CorootVec {
        &self.positives.last().expect("nonempty root system").coroot
    }

    /// Bilinear pairing `<r, c>` extended from `<alpha_j, coroot_i> = C[i][j]`.
    pub fn pair_root_coroot(&self, r: &RootVec, c: &CorootVec) -> Result<i64, RootDataError> {
        let n = self.rank();
        for len in [r.len(), c.len()] {
            if len != n {
                return Err(RootDataError::DimensionMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        Ok(self.pair_unchecked(r, c))
    }

    pub(crate) fn pair_unchecked(&self, r: &RootVec, c: &CorootVec) -> i64 {
        let mut total = 0;
        for (i, &ci) in c.0.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &rj) in r.0.iter().enumerate() {
                total += ci * rj * self.cartan[i][j];
            }
        }
        total
    }

    /// `<alpha_i, c>` for a simple root.
    #[inline]
    pub fn pair_simple_root(&self, i: usize, c: &CorootVec) -> i64 {
        c.0.iter()
            .enumerate()
            .map(|(k, &ck)| ck * self.cartan[k][i - 1])
            .sum()
    }

    /// Image of a coroot under the reflection in the positive pair `idx`:
    /// `s_eta(c) = c - <eta, c> eta_check`.
    pub fn reflect_coroot_by(&self, idx: usize, c: &CorootVec) -> CorootVec {
        let p = &self.positives[idx];
        let k = self.pair_unchecked(&p.root, c);
        c.add_scaled(-k, &p.coroot)
    }
}

fn reflect_root(cartan: &[Vec<i64>], i: usize, r: &RootVec) -> RootVec {
    // <r, coroot_i> = sum_j r_j C[i][j]
    let k: i64 = r.0.iter().zip(&cartan[i - 1]).map(|(a, b)| a * b).sum();
    let mut out = r.clone();
    out.0[i - 1] -= k;
    out
}

fn reflect_coroot(cartan: &[Vec<i64>], i: usize, c: &CorootVec) -> CorootVec {
    // <alpha_i, c> = sum_k c_k C[k][i]
    let k: i64 = c.0.iter().enumerate().map(|(j, a)| a * cartan[j][i - 1]).sum();
    let mut out = c.clone();
    out.0[i - 1] -= k;
    out
}

/// Every valid Cartan type up to the given rank.
pub fn all_types_up_to(max_rank: usize) -> Vec<CartanType> {
    let families = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];
    let mut out = Vec::new();
    for f in families {
        for r in 1..=max_rank {
            if let Ok(t) = CartanType::new(f, r) {
                out.push(t);
            }
        }
    }
    out
}
