//! Exact integer and rational matrices.
//!
//! Determinant and rank use fraction-free Bareiss elimination, inverses use
//! Gauss-Jordan over checked `Rational64`, and the Smith normal form is
//! computed by repeated gcd pivoting. Every intermediate is checked; an
//! overflow is reported as an error, never wrapped.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    Shape(usize, usize, usize, usize),
}

type Result<T> = std::result::Result<T, LinalgError>;

fn ck<T>(v: Option<T>) -> Result<T> {
    v.ok_or(LinalgError::Overflow)
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; an empty slice gives the 0x0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count for a
    /// matrix with zero rows.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Ragged {
                    row,
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = ck(acc.checked_add(ck(self.get(i, k).checked_mul(other.get(k, j)))?))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Unit diagonal with zeros above it.
    pub fn is_unipotent_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == 1 && (i + 1..self.cols).all(|j| self.get(i, j) == 0)
            })
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Rational64::from_integer(x)).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix of reduced rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational64>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational64::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged {
                    row,
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Rational64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Rational64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational64>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational64::zero();
                for k in 0..self.cols {
                    let p = ck(self.get(i, k).checked_mul(&other.get(k, j)))?;
                    acc = ck(acc.checked_add(&p))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational64]) -> Result<Vec<Rational64>> {
        if self.cols != v.len() {
            return Err(LinalgError::Shape(self.rows, self.cols, v.len(), 1));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational64::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = ck(acc.checked_add(&ck(self.get(i, k).checked_mul(x))?))?;
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }
}

/// Determinant by Bareiss elimination.
pub fn det(m: &IntMatrix) -> Result<i64> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(LinalgError::Overflow)?;
                debug_assert_eq!(num % prev, 0);
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| LinalgError::Overflow)
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> Result<usize> {
    let mut a: Vec<Vec<i128>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a[i][j]
                    .checked_mul(a[r][c])
                    .and_then(|x| x.checked_sub(a[i][c].checked_mul(a[r][j])?))
                    .ok_or(LinalgError::Overflow)?;
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Ok(r)
}

/// Exact inverse over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.to_rational();
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a.get(r, c).is_zero())
            .ok_or(LinalgError::Singular)?;
        if p != c {
            for j in 0..n {
                let (x, y) = (a.get(c, j), a.get(p, j));
                a.set(c, j, y);
                a.set(p, j, x);
                let (x, y) = (inv.get(c, j), inv.get(p, j));
                inv.set(c, j, y);
                inv.set(p, j, x);
            }
        }
        let piv = a.get(c, c);
        for j in 0..n {
            a.set(c, j, ck(a.get(c, j).checked_div(&piv))?);
            inv.set(c, j, ck(inv.get(c, j).checked_div(&piv))?);
        }
        for r in 0..n {
            let f = a.get(r, c);
            if r == c || f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = ck(a.get(r, j).checked_sub(&ck(f.checked_mul(&a.get(c, j)))?))?;
                a.set(r, j, v);
                let v = ck(inv.get(r, j).checked_sub(&ck(f.checked_mul(&inv.get(c, j)))?))?;
                inv.set(r, j, v);
            }
        }
    }
    Ok(inv)
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of the Smith normal form, `r`
/// the rank. Zero factors are omitted.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<i64>> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = Integer::div_floor(&a[i][t], &p);
                if q != 0 {
                    let pivot = a[t].clone();
                    for (x, &y) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x = ck(x.checked_sub(ck(q.checked_mul(y))?))?;
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&a[t][j], &p);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let src = a[i].clone();
                        for (x, &y) in a[t][t..].iter_mut().zip(&src[t..]) {
                            *x = ck(x.checked_add(y))?;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero of row t / column t to the pivot
            let mut bi = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                a.swap(t, bi.0);
            }
            if bi.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, bi.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational64) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    if d < 0 {
        Some(Rational64::new(n.checked_neg()?, d.checked_neg()?))
    } else {
        Some(Rational64::new(n, d))
    }
}

/// A rational that serializes as the string `"p/q"` (or `"p"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub Rational64);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw)
            .map(Rat)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {raw:?}")))
    }
}

/// Strictly positive rational.
pub fn is_positive(x: &Rational64) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&im(&[&[1, 0], &[2, 3]])).unwrap(), 3);
        assert_eq!(det(&IntMatrix::identity(4)).unwrap(), 1);
        assert_eq!(det(&im(&[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]])).unwrap(), 1);
        assert_eq!(det(&im(&[&[0, 1], &[1, 0]])).unwrap(), -1);
        assert_eq!(det(&im(&[&[1, 2], &[2, 4]])).unwrap(), 0);
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), 1);
        assert_eq!(
            det(&IntMatrix::zeros(2, 3)),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::zeros(3, 4)).unwrap(), 0);
        // inversion coroots of s3 s4 s1 s2 s3 in A4
        let m = im(&[
            &[0, 0, 1, 0],
            &[0, 1, 1, 0],
            &[0, 0, 1, 1],
            &[1, 1, 1, 0],
            &[0, 1, 1, 1],
        ]);
        assert_eq!(rank(&m).unwrap(), 4);
        assert_eq!(rank(&IntMatrix::identity(5)).unwrap(), 5);
        assert_eq!(rank(&im(&[&[1, 2, 3], &[2, 4, 6]])).unwrap(), 1);
    }

    #[test]
    fn inverse_examples() {
        let n = inverse_rational(&im(&[&[1, 0], &[2, 3]])).unwrap();
        assert_eq!(
            n.to_rows(),
            vec![vec![r(1, 1), r(0, 1)], vec![r(-2, 3), r(1, 3)]]
        );
        let n = inverse_rational(&im(&[&[1, 0], &[3, 1]])).unwrap();
        assert_eq!(
            n.to_rows(),
            vec![vec![r(1, 1), r(0, 1)], vec![r(-3, 1), r(1, 1)]]
        );
        assert_eq!(
            inverse_rational(&IntMatrix::identity(3)).unwrap(),
            RatMatrix::identity(3)
        );
        assert_eq!(
            inverse_rational(&im(&[&[1, 2], &[2, 4]])),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&im(&[&[1, 0], &[2, 3]])).unwrap(), vec![1, 3]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).unwrap(), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&im(&[&[2, 0], &[0, 2]])).unwrap(), vec![2, 2]);
        assert_eq!(smith_normal_form(&im(&[&[2, 0], &[0, 3]])).unwrap(), vec![1, 6]);
        assert_eq!(smith_normal_form(&im(&[&[4, 6]])).unwrap(), vec![2]);
        assert!(smith_normal_form(&IntMatrix::zeros(2, 2)).unwrap().is_empty());
    }

    #[test]
    fn unipotent_check() {
        assert!(im(&[&[1, 0], &[5, 1]]).is_unipotent_lower_triangular());
        assert!(!im(&[&[1, 1], &[0, 1]]).is_unipotent_lower_triangular());
        assert!(!im(&[&[2, 0], &[0, 1]]).is_unipotent_lower_triangular());
    }

    #[test]
    fn rational_text() {
        assert_eq!(fmt_rational(&r(5, 3)), "5/3");
        assert_eq!(fmt_rational(&r(-4, 2)), "-2");
        assert_eq!(parse_rational("5/3"), Some(r(5, 3)));
        assert_eq!(parse_rational("-2"), Some(r(-2, 1)));
        assert_eq!(parse_rational("1/-2"), Some(r(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rat_serde() {
        let v = vec![Rat(r(5, 3)), Rat(r(-2, 1))];
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"["5/3","-2"]"#);
        assert_eq!(serde_json::from_str::<Vec<Rat>>(&js).unwrap(), v);
        assert!(serde_json::from_str::<Rat>(r#""1/0""#).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![1, 2], vec![3]];
        assert!(matches!(
            IntMatrix::from_rows(&rows),
            Err(LinalgError::Ragged { row: 1, .. })
        ));
    }
}
