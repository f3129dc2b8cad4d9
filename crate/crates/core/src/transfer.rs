//! Transfer-matrix counting.
//!
//! Linear counts come from iterated matrix-vector products, cyclic counts from
//! traces of matrix powers. All arithmetic is on exact big integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::words::{step_allowed, CountTable, Parity, Strictness, Topology, WordClass};
use crate::{Error, Result};

/// 0/1 adjacency of letters: `allows(a, b)` iff `b` may follow `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    k: u32,
    strictness: Strictness,
    parity: Parity,
    entries: Vec<bool>,
}

impl TransitionMatrix {
    pub fn new(strictness: Strictness, parity: Parity, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let entries = (1..=k)
            .flat_map(|a| (1..=k).map(move |b| step_allowed(strictness, parity, a, b)))
            .collect();
        Ok(TransitionMatrix { k, strictness, parity, entries })
    }

    pub fn for_class(class: WordClass, k: u32) -> Result<Self> {
        TransitionMatrix::new(class.strictness, class.parity, k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Entry for letters `a -> b`, both 1-based.
    pub fn allows(&self, a: u32, b: u32) -> bool {
        self.entries[((a - 1) * self.k + (b - 1)) as usize]
    }

    /// Rows as 0/1 integers.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries
            .chunks(self.k as usize)
            .map(|r| r.iter().map(|&e| e as u8).collect())
            .collect()
    }

    fn dim(&self) -> usize {
        self.k as usize
    }

    /// `v <- M v`: entry a becomes the number of continuations from letter a.
    fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                (0..d)
                    .filter(|&b| self.entries[a * d + b])
                    .fold(BigUint::zero(), |acc, b| acc + &v[b])
            })
            .collect()
    }

    /// `u <- u M`: entry b becomes the number of words ending in letter b.
    fn apply_left(&self, u: &[BigUint]) -> Vec<BigUint> {
        let d = self.dim();
        (0..d)
            .map(|b| {
                (0..d)
                    .filter(|&a| self.entries[a * d + b])
                    .fold(BigUint::zero(), |acc, a| acc + &u[a])
            })
            .collect()
    }

    fn dense(&self) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim(),
            cells: self
                .entries
                .iter()
                .map(|&e| if e { BigUint::one() } else { BigUint::zero() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct DenseMatrix {
    dim: usize,
    cells: Vec<BigUint>,
}

impl DenseMatrix {
    fn identity(dim: usize) -> Self {
        let mut cells = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            cells[i * dim + i] = BigUint::one();
        }
        DenseMatrix { dim, cells }
    }

    fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let d = self.dim;
        let mut cells = vec![BigUint::zero(); d * d];
        for i in 0..d {
            for l in 0..d {
                let a = &self.cells[i * d + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    cells[i * d + j] += a * &rhs.cells[l * d + j];
                }
            }
        }
        DenseMatrix { dim: d, cells }
    }

    fn pow(&self, mut e: usize) -> DenseMatrix {
        let mut base = self.clone();
        let mut acc = DenseMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn trace(&self) -> BigUint {
        (0..self.dim).map(|i| &self.cells[i * self.dim + i]).sum()
    }
}

/// Number of linear words of length `n`: `1^T M^{n-1} 1`, and 1 for `n = 0`.
pub fn count_linear(m: &TransitionMatrix, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut v = vec![BigUint::one(); m.dim()];
    for _ in 1..n {
        v = m.apply(&v);
    }
    v.into_iter().sum()
}

/// Number of cyclic words of length `n`: `trace(M^n)` for `n >= 2`.
///
/// Lengths 0 and 1 are special-cased to 1 and `k`, since single letters are
/// exempt from the wrap-around rule.
pub fn count_cyclic(m: &TransitionMatrix, n: usize) -> BigUint {
    match n {
        0 => BigUint::one(),
        1 => BigUint::from(m.k),
        _ => m.dense().pow(n).trace(),
    }
}

/// Number of linear words of length `n >= 1` whose last letter is `letter`.
pub fn count_by_last_letter(m: &TransitionMatrix, n: usize, letter: u32) -> Result<BigUint> {
    if letter == 0 || letter > m.k {
        return Err(Error::LetterOutOfRange { letter, k: m.k });
    }
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let mut u = vec![BigUint::one(); m.dim()];
    for _ in 1..n {
        u = m.apply_left(&u);
    }
    Ok(u.swap_remove(letter as usize - 1))
}

/// Counts for `class` over `[k]` at lengths `0..=n_max`.
pub fn transfer_table(class: WordClass, k: u32, n_max: usize) -> Result<CountTable> {
    let m = TransitionMatrix::for_class(class, k)?;
    let counts = (0..=n_max)
        .map(|n| match class.topology {
            Topology::Linear => count_linear(&m, n),
            Topology::Cyclic => count_cyclic(&m, n),
        })
        .collect();
    Ok(CountTable { class, k, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPoly;
    use crate::genfunc::{expand_gf, RationalGF};
    use crate::words::{count_brute_force, DEFAULT_BUDGET};

    fn matrix(s: Strictness, p: Parity, k: u32) -> TransitionMatrix {
        TransitionMatrix::new(s, p, k).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn matrix_examples() {
        use Parity::*;
        use Strictness::*;
        assert_eq!(matrix(Strict, Even, 2).rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(matrix(Weak, Even, 2).rows(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(matrix(Strict, Odd, 2).rows(), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn unconstrained_rows_are_full() {
        for s in [Strictness::Strict, Strictness::Weak] {
            for p in [Parity::Even, Parity::Odd] {
                let m = matrix(s, p, 7);
                for a in 1..=7 {
                    if !p.constrains(a) {
                        assert!((1..=7).all(|b| m.allows(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        use Parity::*;
        use Strictness::*;
        assert_eq!(count_linear(&matrix(Strict, Even, 3), 4), big(41));
        assert_eq!(count_linear(&matrix(Strict, Odd, 4), 5), big(351));
        for k in 1..=6 {
            assert_eq!(count_linear(&matrix(Weak, Odd, k), 1), big(k as u64));
        }
        assert_eq!(count_cyclic(&matrix(Strict, Even, 4), 5), big(82));
        assert_eq!(count_cyclic(&matrix(Strict, Odd, 2), 6), big(18));
        assert_eq!(count_cyclic(&matrix(Weak, Even, 5), 8), big(76725));
        // trace(M) alone would drop the letter 2 here
        assert_eq!(count_cyclic(&matrix(Strict, Even, 2), 1), big(2));
    }

    #[test]
    fn last_letter_examples() {
        let m = matrix(Strictness::Strict, Parity::Even, 4);
        assert_eq!(count_by_last_letter(&m, 1, 3).unwrap(), big(1));
        assert_eq!(count_by_last_letter(&m, 3, 1).unwrap(), big(5));
        let total: BigUint = (1..=4).map(|i| count_by_last_letter(&m, 3, i).unwrap()).sum();
        assert_eq!(total, big(24));
        assert!(matches!(count_by_last_letter(&m, 3, 5), Err(Error::LetterOutOfRange { .. })));
        assert!(count_by_last_letter(&m, 3, 0).is_err());
    }

    /// `x (x+1)^floor((i-1)/2) / (2 - (x+1)^floor((k+1)/2))`.
    fn ending_letter_gf(k: u32, i: u32) -> RationalGF {
        let p = IntPoly::from_i64s(&[1, 1]);
        RationalGF::new(IntPoly::x() * p.pow((i - 1) / 2), IntPoly::constant(2) - p.pow(k.div_ceil(2))).unwrap()
    }

    #[test]
    fn last_letter_matches_closed_form() {
        for k in 1..=6 {
            let m = matrix(Strictness::Strict, Parity::Even, k);
            for i in 1..=k {
                let coeffs = ending_letter_gf(k, i).expand(12).unwrap();
                for n in 1..=12 {
                    assert_eq!(count_by_last_letter(&m, n, i).unwrap(), coeffs[n], "k={k} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn last_letter_sums_to_linear() {
        for class in WordClass::ALL.iter().filter(|c| c.topology == Topology::Linear) {
            for k in 1..=5 {
                let m = TransitionMatrix::for_class(*class, k).unwrap();
                for n in 1..=8 {
                    let total: BigUint = (1..=k).map(|i| count_by_last_letter(&m, n, i).unwrap()).sum();
                    assert_eq!(total, count_linear(&m, n));
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_and_gf() {
        for class in WordClass::ALL {
            for k in 1..=4 {
                let t = transfer_table(class, k, 12).unwrap().counts;
                assert_eq!(t, expand_gf(class, k, 12).unwrap(), "{class} k={k}");
                for (n, v) in t.iter().enumerate().take(8) {
                    assert_eq!(v, &count_brute_force(class, k, n, DEFAULT_BUDGET).unwrap());
                }
            }
        }
    }
}
