//! Closed-form rational generating functions for the eight word classes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{IntPoly, Series};
use crate::words::{CountTable, Parity, Strictness, Topology, WordClass};
use crate::{Error, Result};

/// A ratio of integer polynomials whose denominator does not vanish at 0.
///
/// The sign is canonical: the denominator's constant term is positive.
/// Numerator and denominator are not reduced by their gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalGF {
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Result<Self> {
        let c0 = denominator.coeff(0);
        if c0.is_zero() {
            return Err(Error::DegenerateDenominator);
        }
        Ok(if c0.is_negative() {
            RationalGF { numerator: -&numerator, denominator: -&denominator }
        } else {
            RationalGF { numerator, denominator }
        })
    }

    pub fn polynomial(p: IntPoly) -> Self {
        RationalGF { numerator: p, denominator: IntPoly::constant(1) }
    }

    pub fn zero() -> Self {
        RationalGF::polynomial(IntPoly::zero())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    pub fn add(&self, rhs: &RationalGF) -> RationalGF {
        let num = &self.numerator * &rhs.denominator + &rhs.numerator * &self.denominator;
        // product of two positive constant terms stays positive
        RationalGF { numerator: num, denominator: &self.denominator * &rhs.denominator }
    }

    pub fn sub(&self, rhs: &RationalGF) -> RationalGF {
        self.add(&RationalGF { numerator: -&rhs.numerator, denominator: rhs.denominator.clone() })
    }

    pub fn mul(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }

    /// Expansion as an exact rational series to `order`.
    pub fn series(&self, order: usize) -> Series {
        Series::from_poly(&self.numerator, order)
            .div(&Series::from_poly(&self.denominator, order))
            .expect("denominator has nonzero constant term")
    }

    /// Integer coefficients `a_0..=a_{n_max}` via the recurrence
    /// `q_0 a_n = p_n - sum_{i>=1} q_i a_{n-i}`.
    ///
    /// Every coefficient must be a nonnegative integer; anything else is an
    /// integrity error.
    pub fn expand(&self, n_max: usize) -> Result<Vec<BigUint>> {
        let q = self.denominator.coeffs();
        let q0 = &q[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = self.numerator.coeff(n);
            for (i, qi) in q.iter().enumerate().skip(1).take(n) {
                acc -= qi * &out[n - i];
            }
            let (value, rem) = acc.div_rem(q0);
            if !rem.is_zero() {
                return Err(Error::Integrity { n, value: format!("{acc}/{q0}") });
            }
            if value.is_negative() {
                return Err(Error::Integrity { n, value: value.to_string() });
            }
            out.push(value);
        }
        Ok(out.into_iter().map(|v| v.to_biguint().expect("checked nonnegative")).collect())
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

fn floor_half(a: u32) -> u32 {
    a / 2
}

fn ceil_half(a: u32) -> u32 {
    a.div_ceil(2)
}

fn one_plus_x() -> IntPoly {
    IntPoly::from_i64s(&[1, 1])
}

fn one_minus_x() -> IntPoly {
    IntPoly::from_i64s(&[1, -1])
}

fn c(v: i64) -> IntPoly {
    IntPoly::constant(v)
}

fn lin(c0: i64, c1: i64) -> IntPoly {
    IntPoly::from_i64s(&[c0, c1])
}

fn ratio(num: IntPoly, den: IntPoly) -> RationalGF {
    RationalGF::new(num, den).expect("closed forms have nonvanishing denominators")
}

/// Builds the closed-form generating function of `class` over `[k]`.
///
/// Additive terms of the closed forms are combined over a common denominator.
pub fn build_gf(class: WordClass, k: u32) -> Result<RationalGF> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let p = one_plus_x();
    let q = one_minus_x();
    let gf = match (class.strictness, class.parity, class.topology) {
        (Strictness::Strict, Parity::Even, Topology::Linear) => {
            ratio(p.pow(floor_half(k)), c(2) - p.pow(floor_half(k + 1)))
        }
        (Strictness::Strict, Parity::Odd, Topology::Linear) => {
            ratio(p.pow(floor_half(k + 1)), lin(2, 1) - p.pow(floor_half(k + 2)))
        }
        (Strictness::Strict, Parity::Even, Topology::Cyclic) => {
            // 1 + x(floor(k/2) - m (x+1)^floor((k-1)/2) / ((x+1)^m - 2)), m = floor((k+1)/2)
            let m = floor_half(k + 1);
            let head = RationalGF::polynomial(lin(1, floor_half(k) as i64));
            let tail = ratio(
                (IntPoly::x() * p.pow(floor_half(k - 1))).scale(&BigInt::from(-(m as i64))),
                p.pow(m) - c(2),
            );
            head.add(&tail)
        }
        (Strictness::Strict, Parity::Odd, Topology::Cyclic) => {
            let m = floor_half(k + 2);
            let head = RationalGF::polynomial(lin(1, floor_half(k + 1) as i64));
            let tail = ratio(
                IntPoly::x() * (p.pow(floor_half(k)).scale(&BigInt::from(m)) - c(1)),
                lin(2, 1) - p.pow(m),
            );
            head.add(&tail)
        }
        (Strictness::Weak, Parity::Even, Topology::Linear) => {
            let den = if k.is_multiple_of(2) {
                let e = (k + 2) / 2;
                q.pow(e) + q.pow(e - 1) + lin(-1, 1)
            } else {
                let e = k.div_ceil(2);
                q.pow(e) + q.pow(e - 1) - c(1)
            };
            ratio(c(1), den)
        }
        (Strictness::Weak, Parity::Odd, Topology::Linear) => {
            let den = if k.is_multiple_of(2) {
                q.pow(k / 2).scale(&BigInt::from(2)) - c(1)
            } else {
                q.pow(k.div_ceil(2)).scale(&BigInt::from(2)) + lin(-1, 1)
            };
            ratio(c(1), den)
        }
        (Strictness::Weak, Parity::Even, Topology::Cyclic) => {
            // floor(k/2) x/(1-x) + (2(1-x)^c + c x - 1) / ((2-x)(1-x)^c + x - 1), c = ceil(k/2)
            let cc = ceil_half(k);
            let constant_words = ratio(lin(0, floor_half(k) as i64), q.clone());
            let rest = ratio(
                q.pow(cc).scale(&BigInt::from(2)) + lin(-1, cc as i64),
                lin(2, -1) * q.pow(cc) + lin(-1, 1),
            );
            constant_words.add(&rest)
        }
        (Strictness::Weak, Parity::Odd, Topology::Cyclic) => {
            // ceil(k/2) x/(1-x) + (2(1-x)^c + c x - 1) / (2(1-x)^c + x - 1), c = ceil((k+1)/2)
            let cc = ceil_half(k + 1);
            let constant_words = ratio(lin(0, ceil_half(k) as i64), q.clone());
            let rest = ratio(
                q.pow(cc).scale(&BigInt::from(2)) + lin(-1, cc as i64),
                q.pow(cc).scale(&BigInt::from(2)) + lin(-1, 1),
            );
            constant_words.add(&rest)
        }
    };
    Ok(gf)
}

/// The cyclic even-up generating function in the shape produced by the
/// telescoping argument: `1 + x(floor(k/2) + m (x+1)^floor((k-1)/2) / (2 - (x+1)^m))`.
pub fn cyclic_even_up_telescoped(k: u32) -> Result<RationalGF> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let m = floor_half(k + 1);
    let p = one_plus_x();
    let head = RationalGF::polynomial(lin(1, floor_half(k) as i64));
    let tail = ratio(
        (IntPoly::x() * p.pow(floor_half(k - 1))).scale(&BigInt::from(m)),
        c(2) - p.pow(m),
    );
    Ok(head.add(&tail))
}

/// Coefficients `0..=n_max` of the closed form of `class` over `[k]`.
pub fn expand_gf(class: WordClass, k: u32, n_max: usize) -> Result<Vec<BigUint>> {
    build_gf(class, k)?.expand(n_max)
}

pub fn gf_table(class: WordClass, k: u32, n_max: usize) -> Result<CountTable> {
    Ok(CountTable { class, k, counts: expand_gf(class, k, n_max)? })
}

/// `G(i) = (i+1)(x+1)^i / (2 - (x+1)^{i+1})`, with `G(-1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescoper {
    pub index: i64,
    pub value: RationalGF,
}

impl Telescoper {
    pub fn new(index: i64) -> Self {
        let value = if index < 0 {
            RationalGF::zero()
        } else {
            let i = index as u32;
            let p = one_plus_x();
            ratio(p.pow(i).scale(&BigInt::from(i + 1)), c(2) - p.pow(i + 1))
        };
        Telescoper { index, value }
    }
}

/// The `i`-th summand of the cyclic even-up sum (without its leading `x`):
///
/// `[(x+1)^{3i} - 4(x+1)^{2i} - 2ix(x+1)^{2i-1} + 4(x+1)^i + 4ix(x+1)^{i-1}]
///  / [(2 - (x+1)^i)^2 (2 - (x+1)^{i+1})]`
pub fn telescoping_summand(i: u32) -> RationalGF {
    let p = one_plus_x();
    let mut num = p.pow(3 * i) - p.pow(2 * i).scale(&BigInt::from(4)) + p.pow(i).scale(&BigInt::from(4));
    if i > 0 {
        let ii = BigInt::from(i);
        num = num - (IntPoly::x() * p.pow(2 * i - 1)).scale(&(&ii * 2));
        num = num + (IntPoly::x() * p.pow(i - 1)).scale(&(&ii * 4));
    }
    let den = (c(2) - p.pow(i)).pow(2) * (c(2) - p.pow(i + 1));
    ratio(num, den)
}

/// Checks `G(i) - G(i-1)` against `summand(i)` as series to `order`, for `0 <= i <= i_max`.
pub fn telescoping_check_with(i_max: u32, order: usize, summand: impl Fn(u32) -> RationalGF) -> bool {
    (0..=i_max).all(|i| {
        let diff = Telescoper::new(i as i64).value.sub(&Telescoper::new(i as i64 - 1).value);
        diff.series(order) == summand(i).series(order)
    })
}

pub fn telescoping_check(i_max: u32, order: usize) -> bool {
    telescoping_check_with(i_max, order, telescoping_summand)
}
