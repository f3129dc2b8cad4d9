//! `evenup`: count restricted words and Catalan words, reproduce tables,
//! cross-check engines and compare against OEIS b-files.

mod engines;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;

use evenup::catalan::CatalanVariant;
use evenup::oeis::{compare_with_skip, to_bigints, OeisClient, OeisId};
use evenup::words::{WordClass, DEFAULT_BUDGET};

use engines::{CliError, Method, Target, EXIT_MISMATCH};
use render::Row;

#[derive(Parser)]
#[command(name = "evenup", version, about = "Exact counts of even-up / odd-up words and Catalan words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count
    Count {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Gf)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print a table of counts, rows k = 1..k-max (or Catalan variants), columns n = 0..n-max
    Table {
        /// word class, e.g. cyclic-weakly-odd-up
        #[arg(long, required_unless_present = "catalan", conflicts_with = "catalan")]
        class: Option<String>,
        /// Catalan variant, or `all` for the eight variants with closed forms
        #[arg(long)]
        catalan: Option<String>,
        /// largest alphabet size; rows k = 1..=k-max
        #[arg(long, conflicts_with_all = ["k", "catalan"])]
        k_max: Option<u32>,
        /// a single row at this alphabet size
        #[arg(long, conflicts_with = "catalan")]
        k: Option<u32>,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Method::Gf)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run every applicable engine and report per-length agreement
    Crosscheck {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare the closed-form sequence with an OEIS b-file
    Oeis {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        /// allow fetching from oeis.org (otherwise cache and vendored snapshots only)
        #[arg(long)]
        live: bool,
        #[arg(long, default_value_t = 5)]
        max_offset: u32,
        /// leading computed terms that may be ignored
        #[arg(long, default_value_t = 2)]
        max_skip: usize,
        /// agreeing terms required for a full match
        #[arg(long, default_value_t = 11)]
        min_match: usize,
    },
}

#[derive(Args)]
struct TargetArgs {
    /// word class, e.g. even-up, cyclic-weakly-odd-up
    #[arg(long, required_unless_present = "catalan", conflicts_with = "catalan", requires = "k")]
    class: Option<String>,
    /// alphabet size for --class
    #[arg(long)]
    k: Option<u32>,
    /// Catalan variant, e.g. weakly-odd-up, strict-even-up-odd-end
    #[arg(long)]
    catalan: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
    Bfile,
}

fn parse_class(name: &str) -> Result<WordClass, CliError> {
    name.parse().map_err(|_| {
        let known: Vec<String> = WordClass::ALL.iter().map(|c| c.name()).collect();
        CliError::usage(format!("unknown class {name:?}; expected one of {}", known.join(", ")))
    })
}

fn parse_variant(name: &str) -> Result<CatalanVariant, CliError> {
    name.parse().map_err(|_| {
        let known: Vec<String> = CatalanVariant::all().iter().map(|v| v.name()).collect();
        CliError::usage(format!("unknown Catalan variant {name:?}; expected one of {}", known.join(", ")))
    })
}

fn resolve_k(k: Option<u32>) -> Result<u32, CliError> {
    match k {
        Some(0) => Err(CliError::usage("--k must be at least 1")),
        Some(k) => Ok(k),
        None => Err(CliError::usage("--class requires --k")),
    }
}

impl TargetArgs {
    fn resolve(&self) -> Result<Target, CliError> {
        match (&self.class, &self.catalan) {
            (Some(c), None) => Ok(Target::Words { class: parse_class(c)?, k: resolve_k(self.k)? }),
            (None, Some(v)) => {
                if self.k.is_some() {
                    return Err(CliError::usage("--k does not apply to Catalan variants"));
                }
                Ok(Target::Catalan(parse_variant(v)?))
            }
            _ => Err(CliError::usage("give exactly one of --class or --catalan")),
        }
    }
}

fn cmd_count(target: Target, n: usize, method: Method, budget: u64) -> Result<String, CliError> {
    let value = engines::count_one(target, method, n, budget)?;
    Ok(format!("{value}\n"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    class: Option<&str>,
    catalan: Option<&str>,
    k_max: Option<u32>,
    k: Option<u32>,
    n_max: usize,
    format: Format,
    method: Method,
    budget: u64,
) -> Result<String, CliError> {
    let (rows, caption, is_catalan) = match (class, catalan) {
        (Some(name), None) => {
            let class = parse_class(name)?;
            let ks: Vec<u32> = match (k, k_max) {
                (Some(k), None) => vec![resolve_k(Some(k))?],
                (None, Some(0)) => return Err(CliError::usage("--k-max must be at least 1")),
                (None, Some(k_max)) => (1..=k_max).collect(),
                _ => return Err(CliError::usage("table --class needs --k-max or --k")),
            };
            let rows = ks
                .into_iter()
                .map(|k| {
                    let counts = engines::counts(Target::Words { class, k }, method, n_max, budget)?;
                    Ok(Row { name: class.name(), k: Some(k), counts })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (rows, format!("Number of {class} words."), false)
        }
        (None, Some(name)) => {
            let variants = if name == "all" {
                CatalanVariant::WITH_CLOSED_FORM.to_vec()
            } else {
                vec![parse_variant(name)?]
            };
            let rows = variants
                .into_iter()
                .map(|v| {
                    let counts = engines::counts(Target::Catalan(v), method, n_max, budget)?;
                    Ok(Row { name: v.name(), k: None, counts })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (rows, "Number of restricted Catalan words.".to_string(), true)
        }
        _ => return Err(CliError::usage("give exactly one of --class or --catalan")),
    };
    Ok(match format {
        Format::Csv => render::csv(&rows, is_catalan),
        Format::Json => render::json(&rows),
        Format::Markdown => render::markdown(&rows, &caption, is_catalan),
        Format::Bfile => match rows.as_slice() {
            [row] => render::bfile(row),
            _ => return Err(CliError::usage("--format bfile needs exactly one row (use --k or a single variant)")),
        },
    })
}

fn cmd_crosscheck(target: Target, n_max: usize, budget: u64) -> Result<String, CliError> {
    let methods = target.methods();
    let results = methods
        .par_iter()
        .map(|&m| engines::counts_within_budget(target, m, n_max, budget))
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = format!("crosscheck {} for n = 0..={n_max}\n", target.label());
    for (m, col) in methods.iter().zip(&results) {
        if let Some(first) = col.iter().position(Option::is_none) {
            out.push_str(&format!("note: {m} skipped for n >= {first} (over the budget of {budget})\n"));
        }
    }
    out.push_str(&format!("{:>4}", "n"));
    for m in &methods {
        out.push_str(&format!(" {:>14}", m.to_string()));
    }
    out.push_str("  status\n");

    let mut disagreement: Option<(usize, Vec<(Method, BigUint)>)> = None;
    for n in 0..=n_max {
        out.push_str(&format!("{n:>4}"));
        let present: Vec<(Method, BigUint)> = methods
            .iter()
            .zip(&results)
            .filter_map(|(m, col)| col[n].clone().map(|v| (*m, v)))
            .collect();
        for col in &results {
            let cell = col[n].as_ref().map_or("-".to_string(), |v| v.to_string());
            out.push_str(&format!(" {cell:>14}"));
        }
        let agree = present.windows(2).all(|w| w[0].1 == w[1].1);
        out.push_str(if agree { "  agree\n" } else { "  DISAGREE\n" });
        if !agree && disagreement.is_none() {
            disagreement = Some((n, present));
        }
    }
    match disagreement {
        None => {
            out.push_str("all engines agree\n");
            Ok(out)
        }
        Some((n, values)) => {
            print!("{out}");
            let detail: Vec<String> = values.iter().map(|(m, v)| format!("{m}={v}")).collect();
            Err(CliError { code: EXIT_MISMATCH, message: format!("engines disagree at n = {n}: {}", detail.join(", ")) })
        }
    }
}

fn cmd_oeis(
    target: Target,
    id: &str,
    n_max: usize,
    live: bool,
    max_offset: u32,
    max_skip: usize,
    min_match: usize,
) -> Result<String, CliError> {
    let id: OeisId = id.parse().map_err(|e: evenup::Error| CliError::usage(e.to_string()))?;
    let computed = engines::counts(target, Method::Gf, n_max, DEFAULT_BUDGET)?;
    let seq = OeisClient::new().allow_network(live).fetch(&id).map_err(CliError::fetch)?;
    let report = compare_with_skip(&to_bigints(&computed), &seq, max_offset, max_skip);
    let verdict = report.is_full_match() && report.matched >= min_match;
    let text = format!(
        "{} vs {id} ({} terms from index {}): {report}\n{}\n",
        target.label(),
        seq.len(),
        seq.first_index,
        if verdict { "full match" } else { "MISMATCH" },
    );
    if verdict {
        Ok(text)
    } else {
        print!("{text}");
        let reason = if report.first_mismatch.is_some() {
            "sequence does not match".to_string()
        } else {
            format!("only {} terms matched (need {min_match})", report.matched)
        };
        Err(CliError { code: EXIT_MISMATCH, message: reason })
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Count { target, n, method, budget } => cmd_count(target.resolve()?, n, method, budget),
        Command::Table { class, catalan, k_max, k, n_max, format, method, budget } => {
            cmd_table(class.as_deref(), catalan.as_deref(), k_max, k, n_max, format, method, budget)
        }
        Command::Crosscheck { target, n_max, budget } => cmd_crosscheck(target.resolve()?, n_max, budget),
        Command::Oeis { target, id, n_max, live, max_offset, max_skip, min_match } => {
            cmd_oeis(target.resolve()?, &id, n_max, live, max_offset, max_skip, min_match)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
