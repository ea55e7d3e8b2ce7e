//! Truncated power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^0, ..., q^D` densely. Binary
//! operations require both operands to carry the same truncation order `D`;
//! use [`QSeries::truncate`] to re-truncate explicitly. The operator impls
//! (`+`, `-`, `*`) panic on an order mismatch, the `checked_*` methods return
//! [`Error::OrderMismatch`] instead.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^exp`, which is the zero series when `exp > order`.
    pub fn monomial(c: Rational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// `q^exp` truncated at `order`.
    pub fn q_power(exp: usize, order: usize) -> Self {
        Self::monomial(Rational::one(), exp, order)
    }

    /// The bracket `[n] = 1 - q^n`.
    pub fn bracket(n: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if n <= order {
            s.coeffs[n] -= Rational::one();
        }
        s
    }

    /// Builds a series from its coefficient list; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least one coefficient".into()));
        }
        Ok(QSeries { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs: coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `q^m`; zero beyond the truncation order.
    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-truncates to a smaller (or equal) order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InvalidArgument(format!(
                "cannot extend a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(QSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(QSeries { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(QSeries { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if self.is_integral() && other.is_integral() {
            if let Some(s) = mul_small(&self.coeffs, &other.coeffs) {
                return Ok(s);
            }
            return Ok(mul_big(&self.coeffs, &other.coeffs));
        }
        let d = self.order();
        let mut out = vec![Rational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&Rational::from_integer(c.clone()))
    }

    /// Multiplies by `q^s`, dropping what falls beyond the order.
    pub fn shift(&self, s: usize) -> Self {
        let d = self.order();
        let mut out = Self::zero(d);
        for m in s..=d {
            out.coeffs[m] = self.coeffs[m - s].clone();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let d = self.order();
        let inv0 = a0.recip();
        let mut b = vec![Rational::zero(); d + 1];
        b[0] = inv0.clone();
        for m in 1..=d {
            let mut s = Rational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &b[m - i];
                }
            }
            b[m] = -s * &inv0;
        }
        Ok(QSeries { coeffs: b })
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let d = self.order().max(other.order());
        (0..=d).find(|&m| self.coeff(m) != other.coeff(m))
    }
}

/// `1/(1 - q^n)^k` truncated at `order`, via negative binomial coefficients.
pub fn inv_one_minus_qn(n: usize, k: u32, order: usize) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::NotInvertible);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("exponent k must be positive".into()));
    }
    let mut s = QSeries::zero(order);
    let km1 = BigInt::from(k - 1);
    for t in 0..=order / n {
        s.coeffs[n * t] = Rational::from_integer(binomial(BigInt::from(t) + &km1, km1.clone()));
    }
    Ok(s)
}

fn mul_small(a: &[Rational], b: &[Rational]) -> Option<QSeries> {
    let a: Vec<i128> = a.iter().map(|c| c.numer().to_i128()).collect::<Option<_>>()?;
    let b: Vec<i128> = b.iter().map(|c| c.numer().to_i128()).collect::<Option<_>>()?;
    let d = a.len() - 1;
    let mut out = vec![0i128; d + 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b[..=d - i].iter().enumerate() {
            if y != 0 {
                out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
    }
    Some(QSeries { coeffs: out.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect() })
}

fn mul_big(a: &[Rational], b: &[Rational]) -> QSeries {
    let d = a.len() - 1;
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..=d - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x.numer() * y.numer();
            }
        }
    }
    QSeries { coeffs: out.into_iter().map(Rational::from_integer).collect() }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.checked_add(rhs).expect("series order mismatch")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.checked_sub(rhs).expect("series order mismatch")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.checked_mul(rhs).expect("series order mismatch")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl AddAssign<&QSeries> for QSeries {
    fn add_assign(&mut self, rhs: &QSeries) {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&QSeries> for QSeries {
    fn sub_assign(&mut self, rhs: &QSeries) {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

/// Renders as `q + 2q^2 - (1/2)q^3`; the zero series renders as `0`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if abs.is_integer() { abs.to_string() } else { format!("({abs})") };
            match m {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !abs.is_one() {
                        f.write_str(&mag)?;
                    }
                    if m == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{m}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr { order: self.order(), coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom("coefficient count must equal order + 1"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<BigRational>>>()
            .map_err(D::Error::custom)?;
        Ok(QSeries { coeffs })
    }
}
