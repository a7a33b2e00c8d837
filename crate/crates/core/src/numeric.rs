//! Scalars shared by the LP engine and the separators, plus exact integer
//! kernels (rank, gcd normalisation) used by the polyhedral checks.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Arithmetic the simplex and the separators need. `f64` compares with a
/// tolerance; `Rational` compares exactly.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(v: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// Strictly positive beyond the scalar's tolerance.
    fn is_pos(&self) -> bool;
    /// Strictly negative beyond the scalar's tolerance.
    fn is_neg(&self) -> bool;
    fn is_zero_tol(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(v: &Rational) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_pos(&self) -> bool {
        *self > 1e-9
    }
    fn is_neg(&self) -> bool {
        *self < -1e-9
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
}

pub fn is_integral(v: &Rational) -> bool {
    v.is_integer()
}

/// Scales a rational row to coprime integers with the same sign pattern.
pub fn integer_row(row: &[Rational]) -> Result<Vec<i128>> {
    let mut lcm = BigInt::one();
    for v in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out = Vec::with_capacity(row.len());
    for v in row {
        let scaled = v.numer() * (&lcm / v.denom());
        out.push(scaled.to_i128().ok_or(Error::Overflow("integer_row"))?);
    }
    normalize(&mut out);
    Ok(out)
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// Divides a vector by the gcd of its entries.
pub fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// `a*x - b*y` entrywise with overflow detection, then gcd-normalised.
pub fn combine(a: i128, x: &[i128], b: i128, y: &[i128]) -> Result<Vec<i128>> {
    let mut out = Vec::with_capacity(x.len());
    for (xi, yi) in x.iter().zip(y) {
        let l = a.checked_mul(*xi).ok_or(Error::Overflow("combine"))?;
        let r = b.checked_mul(*yi).ok_or(Error::Overflow("combine"))?;
        out.push(l.checked_sub(r).ok_or(Error::Overflow("combine"))?);
    }
    normalize(&mut out);
    Ok(out)
}

pub fn dot_i128(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut acc = 0i128;
    for (x, y) in a.iter().zip(b) {
        let p = x.checked_mul(*y).ok_or(Error::Overflow("dot"))?;
        acc = acc.checked_add(p).ok_or(Error::Overflow("dot"))?;
    }
    Ok(acc)
}

/// Row-echelon basis that grows one integer vector at a time.
#[derive(Clone, Debug, Default)]
pub struct IncrementalRank {
    rows: Vec<(usize, Vec<i128>)>,
}

impl IncrementalRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns true if it was independent.
    pub fn insert(&mut self, v: &[i128]) -> Result<bool> {
        let mut v = v.to_vec();
        normalize(&mut v);
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                v = combine(row[*pc], &v, c, row)?;
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(pc) => {
                self.rows.push((pc, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

pub fn rank_i128(rows: &[Vec<i128>]) -> Result<usize> {
    let mut r = IncrementalRank::new();
    for row in rows {
        r.insert(row)?;
    }
    Ok(r.rank())
}

pub fn rank_rational(rows: &[Vec<Rational>]) -> Result<usize> {
    let mut r = IncrementalRank::new();
    for row in rows {
        r.insert(&integer_row(row)?)?;
    }
    Ok(r.rank())
}

/// Solves the square system `m x = rhs` exactly. `None` when singular.
pub fn solve_rational(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for j in col..=n {
            a[col][j] = &a[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}
