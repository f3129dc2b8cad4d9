use std::fmt;

use clap::ValueEnum;
use num_bigint::BigUint;

use evenup::catalan::{self, CatalanVariant, CountMethod};
use evenup::transfer::{self, TransitionMatrix};
use evenup::words::{self, Topology, WordClass};
use evenup::{genfunc, Error};

/// Exit codes.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_FETCH: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn fetch(err: Error) -> Self {
        CliError { code: EXIT_FETCH, message: err.to_string() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Network { .. } | Error::Io { .. } => EXIT_FETCH,
            Error::UnknownName(_)
            | Error::EmptyAlphabet
            | Error::NoClosedForm(_)
            | Error::MalformedId(_)
            | Error::LetterOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        CliError { code, message: err.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// exhaustive enumeration of [k]^n (word classes)
    Brute,
    /// closed-form generating function
    Gf,
    /// transfer matrix (word classes)
    Transfer,
    /// last-letter dynamic programming (Catalan variants)
    Dp,
    /// convolution system (weak Catalan variants)
    Conv,
    /// enumeration of Catalan words (Catalan variants)
    Enum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// What is being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Words { class: WordClass, k: u32 },
    Catalan(CatalanVariant),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Words { class, k } => format!("{class} k={k}"),
            Target::Catalan(v) => v.name(),
        }
    }

    /// Engines that can count this target, in display order.
    pub fn methods(&self) -> Vec<Method> {
        match self {
            Target::Words { .. } => vec![Method::Brute, Method::Transfer, Method::Gf],
            Target::Catalan(v) => {
                let mut m = vec![Method::Enum, Method::Dp];
                if v.has_closed_form() {
                    m.push(Method::Gf);
                }
                if v.has_convolution() {
                    m.push(Method::Conv);
                }
                m
            }
        }
    }
}

/// Counts for lengths `0..=n_max` with one engine.
pub fn counts(target: Target, method: Method, n_max: usize, budget: u64) -> Result<Vec<BigUint>, CliError> {
    if !target.methods().contains(&method) {
        return Err(CliError::usage(format!("method {method} does not apply to {}", target.label())));
    }
    Ok(match (target, method) {
        (Target::Words { class, k }, Method::Brute) => words::brute_force_table(class, k, n_max, budget)?.counts,
        (Target::Words { class, k }, Method::Transfer) => transfer::transfer_table(class, k, n_max)?.counts,
        (Target::Words { class, k }, Method::Gf) => genfunc::expand_gf(class, k, n_max)?,
        (Target::Catalan(v), Method::Gf) => catalan::expand_catalan_gf(v, n_max)?,
        (Target::Catalan(v), Method::Conv) => {
            catalan::convolution_counts(n_max)?.get(v).expect("weak variant").to_vec()
        }
        (Target::Catalan(v), Method::Dp) => (0..=n_max)
            .map(|n| catalan::count_catalan_filtered(v, n, CountMethod::Dp, budget))
            .collect::<Result<_, _>>()?,
        (Target::Catalan(v), Method::Enum) => (0..=n_max)
            .map(|n| catalan::count_catalan_filtered(v, n, CountMethod::Enum, budget))
            .collect::<Result<_, _>>()?,
        _ => unreachable!("filtered by Target::methods"),
    })
}

/// A single count, avoiding work on shorter lengths where the engine allows it.
pub fn count_one(target: Target, method: Method, n: usize, budget: u64) -> Result<BigUint, CliError> {
    match (target, method) {
        (Target::Words { class, k }, Method::Brute) => Ok(words::count_brute_force(class, k, n, budget)?),
        (Target::Words { class, k }, Method::Transfer) => {
            let m = TransitionMatrix::for_class(class, k)?;
            Ok(match class.topology {
                Topology::Linear => transfer::count_linear(&m, n),
                Topology::Cyclic => transfer::count_cyclic(&m, n),
            })
        }
        (Target::Catalan(v), Method::Dp | Method::Enum) if target.methods().contains(&method) => {
            let cm = if method == Method::Dp { CountMethod::Dp } else { CountMethod::Enum };
            Ok(catalan::count_catalan_filtered(v, n, cm, budget)?)
        }
        _ => Ok(counts(target, method, n, budget)?.swap_remove(n)),
    }
}

/// Per-length results of one engine; `None` where the engine was skipped.
pub fn counts_within_budget(
    target: Target,
    method: Method,
    n_max: usize,
    budget: u64,
) -> Result<Vec<Option<BigUint>>, CliError> {
    match method {
        Method::Brute | Method::Enum => (0..=n_max)
            .map(|n| match count_one(target, method, n, budget) {
                Ok(v) => Ok(Some(v)),
                Err(e) if e.code == EXIT_BUDGET => Ok(None),
                Err(e) => Err(e),
            })
            .collect(),
        _ => Ok(counts(target, method, n_max, budget)?.into_iter().map(Some).collect()),
    }
}
