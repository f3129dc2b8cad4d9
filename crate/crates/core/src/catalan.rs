//! Catalan words under the even-up / odd-up restrictions.
//!
//! A Catalan word of length `n` starts with 1 and never climbs by more than one
//! (`w_{i+1} <= w_i + 1`). Restricted counts are produced four ways: exhaustive
//! enumeration, a last-letter DP, the algebraic generating functions, and (for
//! the weak family) the convolution system relating `a`, `b`, `a'`, `b'`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{IntPoly, Series};
use crate::words::{step_allowed, Parity, Strictness, Word};
use crate::{Error, Result};

/// Default cap on the number of Catalan words visited by enumeration.
pub const DEFAULT_CATALAN_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ending {
    Any,
    OddEnd,
    EvenEnd,
}

impl Ending {
    fn accepts(self, last: u32) -> bool {
        match self {
            Ending::Any => true,
            Ending::OddEnd => last % 2 == 1,
            Ending::EvenEnd => last.is_multiple_of(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalanVariant {
    pub strictness: Strictness,
    pub parity: Parity,
    pub ending: Ending,
}

impl CatalanVariant {
    pub const fn new(strictness: Strictness, parity: Parity, ending: Ending) -> Self {
        CatalanVariant { strictness, parity, ending }
    }

    /// The eight variants with closed forms: `a, b, a', b'` of the weak
    /// family, then of the strict family.
    pub const WITH_CLOSED_FORM: [CatalanVariant; 8] = [
        CatalanVariant::new(Strictness::Weak, Parity::Even, Ending::Any),
        CatalanVariant::new(Strictness::Weak, Parity::Odd, Ending::Any),
        CatalanVariant::new(Strictness::Weak, Parity::Even, Ending::OddEnd),
        CatalanVariant::new(Strictness::Weak, Parity::Odd, Ending::EvenEnd),
        CatalanVariant::new(Strictness::Strict, Parity::Even, Ending::Any),
        CatalanVariant::new(Strictness::Strict, Parity::Odd, Ending::Any),
        CatalanVariant::new(Strictness::Strict, Parity::Even, Ending::OddEnd),
        CatalanVariant::new(Strictness::Strict, Parity::Odd, Ending::EvenEnd),
    ];

    /// All twelve strictness/parity/ending combinations.
    pub fn all() -> Vec<CatalanVariant> {
        let mut out = Vec::with_capacity(12);
        for s in [Strictness::Weak, Strictness::Strict] {
            for p in [Parity::Even, Parity::Odd] {
                for e in [Ending::Any, Ending::OddEnd, Ending::EvenEnd] {
                    out.push(CatalanVariant::new(s, p, e));
                }
            }
        }
        out
    }

    /// Names like `weakly-odd-up` or `strict-even-up-odd-end`.
    pub fn name(&self) -> String {
        let mut s = String::from(match self.strictness {
            Strictness::Strict => "strict-",
            Strictness::Weak => "weakly-",
        });
        s.push_str(match self.parity {
            Parity::Even => "even-up",
            Parity::Odd => "odd-up",
        });
        s.push_str(match self.ending {
            Ending::Any => "",
            Ending::OddEnd => "-odd-end",
            Ending::EvenEnd => "-even-end",
        });
        s
    }

    pub fn has_closed_form(&self) -> bool {
        CatalanVariant::WITH_CLOSED_FORM.contains(self)
    }

    /// Whether the convolution system of the weak family produces this variant.
    pub fn has_convolution(&self) -> bool {
        self.strictness == Strictness::Weak && self.has_closed_form()
    }

    fn admits(&self, letters: &[u32]) -> bool {
        letters
            .windows(2)
            .all(|w| step_allowed(self.strictness, self.parity, w[0], w[1]))
            && letters.last().is_none_or(|&l| self.ending.accepts(l))
    }
}

impl fmt::Display for CatalanVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CatalanVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalanVariant::all()
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

pub fn catalan_number(n: usize) -> BigUint {
    // C_n = prod_{j=2..n} (n + j) / j, exact at every step
    let mut c = BigUint::one();
    for j in 0..n {
        c = c * BigUint::from(2 * (2 * j + 1)) / BigUint::from(j + 2);
    }
    c
}

/// Lexicographic stream of the Catalan words of one length.
#[derive(Debug)]
pub struct CatalanWords {
    current: Option<Vec<u32>>,
}

impl Iterator for CatalanWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let letters = self.current.as_mut()?;
        let out = letters.clone();
        // bump the rightmost letter that may still grow, then reset the tail
        match (1..letters.len()).rev().find(|&i| letters[i] <= letters[i - 1]) {
            Some(i) => {
                letters[i] += 1;
                letters[i + 1..].iter_mut().for_each(|l| *l = 1);
            }
            None => self.current = None,
        }
        let k = (out.len() as u32).max(1);
        Some(Word::new(out, k).expect("Catalan words stay within [n]"))
    }
}

pub fn enumerate_catalan(n: usize, budget: u64) -> Result<CatalanWords> {
    let size = catalan_number(n);
    if size.to_u64().is_none_or(|s| s > budget) {
        return Err(Error::BudgetExceeded { size: size.to_string(), budget });
    }
    Ok(CatalanWords { current: Some(vec![1; n]) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Enum,
    Dp,
}

/// Counts by last letter `1..=n` (index 0 holds letter 1) over Catalan words
/// of length `n >= 1` whose consecutive letters satisfy `allow`.
fn dp_by_last_letter(n: usize, allow: impl Fn(u32, u32) -> bool) -> Vec<BigUint> {
    let mut cur = vec![BigUint::zero(); n];
    cur[0] = BigUint::one();
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); n];
        for (wi, count) in cur.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let w = wi as u32 + 1;
            for w2 in 1..=(w + 1).min(n as u32) {
                if allow(w, w2) {
                    next[w2 as usize - 1] += count;
                }
            }
        }
        cur = next;
    }
    cur
}

fn sum_endings(by_last: &[BigUint], ending: Ending) -> BigUint {
    by_last
        .iter()
        .enumerate()
        .filter(|(i, _)| ending.accepts(*i as u32 + 1))
        .map(|(_, c)| c)
        .sum()
}

fn count_dp(variant: CatalanVariant, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let by_last = dp_by_last_letter(n, |a, b| step_allowed(variant.strictness, variant.parity, a, b));
    sum_endings(&by_last, variant.ending)
}

/// Unrestricted Catalan words of length `n` with the given ending, by the same DP.
pub fn count_unrestricted_dp(n: usize, ending: Ending) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    sum_endings(&dp_by_last_letter(n, |_, _| true), ending)
}

/// Catalan words of length `n` satisfying the variant's up-rule and ending filter.
///
/// The empty word counts once for every variant.
pub fn count_catalan_filtered(
    variant: CatalanVariant,
    n: usize,
    method: CountMethod,
    budget: u64,
) -> Result<BigUint> {
    match method {
        CountMethod::Dp => Ok(count_dp(variant, n)),
        CountMethod::Enum => {
            if n == 0 {
                enumerate_catalan(0, budget)?;
                return Ok(BigUint::one());
            }
            let count = enumerate_catalan(n, budget)?
                .filter(|w| variant.admits(w.letters()))
                .count();
            Ok(BigUint::from(count))
        }
    }
}

/// `(poly + coeff * sqrt(radicand)) / (x * denominator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicGF {
    pub poly: IntPoly,
    pub radical_coeff: IntPoly,
    pub radicand: IntPoly,
    pub denominator: IntPoly,
}

impl AlgebraicGF {
    /// Coefficients `0..=n_max`, checked to be nonnegative integers.
    pub fn expand(&self, n_max: usize) -> Result<Vec<BigUint>> {
        let order = n_max + 1;
        let root = Series::from_poly(&self.radicand, order).sqrt()?;
        let numerator = Series::from_poly(&self.poly, order)
            .add(&Series::from_poly(&self.radical_coeff, order).mul(&root));
        let series = numerator
            .div_x()?
            .div(&Series::from_poly(&self.denominator, n_max))?;
        series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::Integrity { n, value: c.to_string() });
                }
                Ok(c.to_integer().to_biguint().expect("checked nonnegative"))
            })
            .collect()
    }
}

/// `(1 + x^2)^2 - 4x`
pub fn weak_radicand() -> IntPoly {
    IntPoly::from_i64s(&[1, 0, 1]).pow(2) - IntPoly::from_i64s(&[0, 4])
}

/// `(1 + x)(1 - 3x)`
pub fn strict_radicand() -> IntPoly {
    IntPoly::from_i64s(&[1, 1]) * IntPoly::from_i64s(&[1, -3])
}

pub fn catalan_gf(variant: CatalanVariant) -> Result<AlgebraicGF> {
    let p = IntPoly::from_i64s;
    let gf = |poly, radical_coeff, radicand, denominator| AlgebraicGF {
        poly,
        radical_coeff,
        radicand,
        denominator,
    };
    use Ending::*;
    use Parity::*;
    use Strictness::*;
    let (s, par, e) = (variant.strictness, variant.parity, variant.ending);
    Ok(match (s, par, e) {
        // (1 - x - r) / x
        (Weak, Even, Any) => gf(p(&[1, -1]), p(&[-1]), weak_radicand(), p(&[1])),
        // -(x^3 + 2x^2 + x - 2 + (x + 2) r) / (2x)
        (Weak, Odd, Any) => gf(p(&[2, -1, -2, -1]), p(&[-2, -1]), weak_radicand(), p(&[2])),
        // (1 + x^2 - r) / (2x)
        (Weak, Even, OddEnd) => gf(p(&[1, 0, 1]), p(&[-1]), weak_radicand(), p(&[2])),
        // (1 - x^2 - r) / (2x)
        (Weak, Odd, EvenEnd) => gf(p(&[1, 0, -1]), p(&[-1]), weak_radicand(), p(&[2])),
        // (2 - x)/(2x) - (2 + x) r / (2x(1 + x))
        (Strict, Even, Any) => gf(p(&[2, 1, -1]), p(&[-2, -1]), strict_radicand(), p(&[2, 2])),
        // (1 - r) / (x(1 + x))
        (Strict, Odd, Any) => gf(p(&[1]), p(&[-1]), strict_radicand(), p(&[1, 1])),
        // (1 + x - r) / (2x)
        (Strict, Even, OddEnd) => gf(p(&[1, 1]), p(&[-1]), strict_radicand(), p(&[2])),
        // (1 + x - r) / (2x(1 + x))
        (Strict, Odd, EvenEnd) => gf(p(&[1, 1]), p(&[-1]), strict_radicand(), p(&[2, 2])),
        _ => return Err(Error::NoClosedForm(variant.name())),
    })
}

pub fn expand_catalan_gf(variant: CatalanVariant, n_max: usize) -> Result<Vec<BigUint>> {
    catalan_gf(variant)?.expand(n_max)
}

/// The four weak-family sequences produced jointly by the convolution system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakFamily {
    /// weakly even-up
    pub a: Vec<BigUint>,
    /// weakly odd-up
    pub b: Vec<BigUint>,
    /// weakly even-up ending in an odd letter
    pub a_odd_end: Vec<BigUint>,
    /// weakly odd-up ending in an even letter
    pub b_even_end: Vec<BigUint>,
}

impl WeakFamily {
    pub fn get(&self, variant: CatalanVariant) -> Option<&[BigUint]> {
        if variant.strictness != Strictness::Weak {
            return None;
        }
        match (variant.parity, variant.ending) {
            (Parity::Even, Ending::Any) => Some(&self.a),
            (Parity::Odd, Ending::Any) => Some(&self.b),
            (Parity::Even, Ending::OddEnd) => Some(&self.a_odd_end),
            (Parity::Odd, Ending::EvenEnd) => Some(&self.b_even_end),
            _ => None,
        }
    }
}

/// Runs the recurrences, for `n >= 2`,
///
/// ```text
/// a_n  = b_{n-1}  + sum_{i=2..n} b'_{i-2} a_{n-i+1}
/// b_n  = a_{n-1}  + sum_{i=2..n} a'_{i-2} b_{n-i+1}
/// a'_n = b'_{n-1} + sum_{i=2..n} b'_{i-2} a'_{n-i+1}
/// b'_n = a'_{n-1} + sum_{i=2..n} a'_{i-2} b'_{n-i+1}
/// ```
///
/// seeded with the `n = 0, 1` coefficients of the closed forms.
pub fn convolution_counts(n_max: usize) -> Result<WeakFamily> {
    let seed = |v: CatalanVariant| -> Result<Vec<BigUint>> {
        let mut s = expand_catalan_gf(v, 1)?;
        s.truncate(n_max + 1);
        Ok(s)
    };
    let [va, vb, va1, vb1, ..] = CatalanVariant::WITH_CLOSED_FORM;
    let (mut a, mut b, mut a1, mut b1) = (seed(va)?, seed(vb)?, seed(va1)?, seed(vb1)?);
    let conv = |lead: &BigUint, weights: &[BigUint], body: &[BigUint], n: usize| -> BigUint {
        (2..=n).fold(lead.clone(), |acc, i| acc + &weights[i - 2] * &body[n - i + 1])
    };
    for n in 2..=n_max {
        let an = conv(&b[n - 1], &b1, &a, n);
        let bn = conv(&a[n - 1], &a1, &b, n);
        let a1n = conv(&b1[n - 1], &b1, &a1, n);
        let b1n = conv(&a1[n - 1], &a1, &b1, n);
        a.push(an);
        b.push(bn);
        a1.push(a1n);
        b1.push(b1n);
    }
    Ok(WeakFamily { a, b, a_odd_end: a1, b_even_end: b1 })
}

/// Converts nonnegative counts into an integer series of order `len - 1`.
pub fn as_series(values: &[BigUint]) -> Series {
    Series::from_integers(&values.iter().map(|v| BigInt::from(v.clone())).collect::<Vec<_>>())
}
