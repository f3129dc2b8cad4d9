//! Words over `[k]`, the eight word classes, and the brute-force oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::{Error, Result};

/// Default cap on the number of words an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strictness {
    /// The follower must be strictly larger.
    Strict,
    /// The follower must be at least as large.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Whether `letter` carries this parity, i.e. is subject to the up-rule.
    pub fn constrains(self, letter: u32) -> bool {
        match self {
            Parity::Even => letter.is_multiple_of(2),
            Parity::Odd => letter % 2 == 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topology {
    Linear,
    Cyclic,
}

/// The up-rule shared by words and Catalan words: a letter of the constrained
/// parity must be followed by a larger (or, for weak, not smaller) letter.
pub fn step_allowed(strictness: Strictness, parity: Parity, from: u32, to: u32) -> bool {
    if !parity.constrains(from) {
        return true;
    }
    match strictness {
        Strictness::Strict => to > from,
        Strictness::Weak => to >= from,
    }
}

/// One of the eight restricted word classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordClass {
    pub strictness: Strictness,
    pub parity: Parity,
    pub topology: Topology,
}

impl WordClass {
    /// All eight classes, in the order the tables are usually listed.
    pub const ALL: [WordClass; 8] = [
        WordClass::new(Strictness::Strict, Parity::Even, Topology::Linear),
        WordClass::new(Strictness::Strict, Parity::Odd, Topology::Linear),
        WordClass::new(Strictness::Strict, Parity::Even, Topology::Cyclic),
        WordClass::new(Strictness::Strict, Parity::Odd, Topology::Cyclic),
        WordClass::new(Strictness::Weak, Parity::Even, Topology::Linear),
        WordClass::new(Strictness::Weak, Parity::Odd, Topology::Linear),
        WordClass::new(Strictness::Weak, Parity::Even, Topology::Cyclic),
        WordClass::new(Strictness::Weak, Parity::Odd, Topology::Cyclic),
    ];

    pub const fn new(strictness: Strictness, parity: Parity, topology: Topology) -> Self {
        WordClass { strictness, parity, topology }
    }

    /// Kebab-case name such as `cyclic-weakly-odd-up`.
    pub fn name(&self) -> String {
        let mut s = String::new();
        if self.topology == Topology::Cyclic {
            s.push_str("cyclic-");
        }
        if self.strictness == Strictness::Weak {
            s.push_str("weakly-");
        }
        s.push_str(match self.parity {
            Parity::Even => "even-up",
            Parity::Odd => "odd-up",
        });
        s
    }

    /// Whether the letter sequence belongs to this class.
    ///
    /// The wrap-around condition of cyclic classes only applies to words of
    /// length at least 2; single letters are always admitted.
    pub fn admits(&self, letters: &[u32]) -> bool {
        let ok = |a: u32, b: u32| step_allowed(self.strictness, self.parity, a, b);
        if !letters.windows(2).all(|w| ok(w[0], w[1])) {
            return false;
        }
        match (self.topology, letters) {
            (Topology::Cyclic, [first, .., last]) => ok(*last, *first),
            _ => true,
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for WordClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WordClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A word over the alphabet `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    k: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l > k) {
            return Err(Error::LetterOutOfRange { letter, k });
        }
        Ok(Word { letters, k })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn satisfies(word: &Word, class: WordClass) -> bool {
    class.admits(&word.letters)
}

/// Counts for one class and alphabet, indexed by length starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub class: WordClass,
    pub k: u32,
    pub counts: Vec<BigUint>,
}

fn check_budget(k: u32, n: usize, budget: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let size = BigUint::from(k).pow(n as u32);
    match size.to_u64() {
        Some(s) if s <= budget => Ok(()),
        _ => Err(Error::BudgetExceeded { size: size.to_string(), budget }),
    }
}

/// Advances `letters` to the lexicographically next word over `[k]`, starting
/// at position `from`. Returns false once every position has wrapped.
fn advance(letters: &mut [u32], k: u32, from: usize) -> bool {
    for slot in letters[from..].iter_mut().rev() {
        if *slot < k {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// Exhaustively counts the words of `[k]^n` in `class`.
///
/// The search is split by first letter and run in parallel; the result does
/// not depend on scheduling.
pub fn count_brute_force(class: WordClass, k: u32, n: usize, budget: u64) -> Result<BigUint> {
    check_budget(k, n, budget)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    let total: u64 = (1..=k)
        .into_par_iter()
        .map(|first| {
            let mut letters = vec![1u32; n];
            letters[0] = first;
            let mut count = 0u64;
            loop {
                if class.admits(&letters) {
                    count += 1;
                }
                if !advance(&mut letters, k, 1) {
                    break;
                }
            }
            count
        })
        .sum();
    Ok(BigUint::from(total))
}

/// Brute-force counts for lengths `0..=n_max`.
pub fn brute_force_table(class: WordClass, k: u32, n_max: usize, budget: u64) -> Result<CountTable> {
    let counts = (0..=n_max)
        .map(|n| count_brute_force(class, k, n, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { class, k, counts })
}

/// Lexicographic stream of the words of `[k]^n` belonging to a class.
#[derive(Debug)]
pub struct Enumeration {
    class: WordClass,
    k: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for Enumeration {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let letters = self.current.as_mut()?;
            let candidate = self.class.admits(letters).then(|| letters.clone());
            if !advance(letters, self.k, 0) {
                self.current = None;
            }
            if let Some(letters) = candidate {
                return Some(Word { letters, k: self.k });
            }
        }
    }
}

pub fn enumerate(class: WordClass, k: u32, n: usize, budget: u64) -> Result<Enumeration> {
    check_budget(k, n, budget)?;
    Ok(Enumeration { class, k, current: Some(vec![1; n]) })
}
