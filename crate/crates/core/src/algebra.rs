//! Exact integer polynomials and truncated power series over the rationals.
//!
//! No floating point is used anywhere in this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Truncation order used when callers do not ask for a specific one.
pub const DEFAULT_ORDER: usize = 64;

/// Polynomial with integer coefficients, index = degree.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    /// `c * x^d`.
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        IntPoly::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(1);
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

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigInt::from(d))
                .collect(),
        )
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Power series truncated after `x^order`, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Builds a series from coefficients `c_0..=c_order`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Series::from_poly(&IntPoly::constant(1), order)
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        Series {
            coeffs: (0..=order).map(|d| BigRational::from_integer(p.coeff(d))).collect(),
        }
    }

    pub fn from_integers(values: &[BigInt]) -> Self {
        Series::new(values.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &BigRational {
        &self.coeffs[d]
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series { coeffs: (0..=order).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect() }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series { coeffs: (0..=order).map(|d| &self.coeffs[d] - &rhs.coeffs[d]).collect() }
    }

    pub fn mul(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|d| {
                (0..=d).fold(BigRational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &rhs.coeffs[d - i]
                })
            })
            .collect();
        Series { coeffs }
    }

    /// `self / den` to the smaller of the two orders.
    pub fn div(&self, den: &Series) -> Result<Series> {
        let c0 = &den.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(den.order());
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for d in 0..=order {
            let mut acc = self.coeffs[d].clone();
            for i in 1..=d {
                acc -= &den.coeffs[i] * &q[d - i];
            }
            q.push(acc / c0);
        }
        Ok(Series { coeffs: q })
    }

    /// Square root with constant term 1, by Newton iteration `r <- (r + s/r) / 2`.
    ///
    /// Each step doubles the number of correct coefficients.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstantTerm(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut root = Series::one(0);
        let mut correct = 0usize;
        while correct < order {
            let next = (2 * correct + 1).min(order);
            let widened = root.extend(next);
            let quotient = self.truncate(next).div(&widened)?;
            root = widened.add(&quotient).scale(&half);
            correct = next;
        }
        Ok(root)
    }

    /// Pads with zero coefficients up to `order`.
    fn extend(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    /// Divides by the formal variable `x`; the constant term must vanish.
    pub fn div_x(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonVanishingNumerator(self.coeffs[0].to_string()));
        }
        if self.order() == 0 {
            return Err(Error::TruncationOrder { requested: 1, order: 0 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// The coefficients as integers, if every denominator is 1.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}
