use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::time::Instant;

use fibsum_core::verify::{
    check_107, enumerate_fnlm, verify_power_class, verify_ratio_squares, verify_theorem1,
};
use fibsum_core::{
    fib, fib_mod, lucas, lucas_mod, normalize_pair, search, sum_factorization, Index, SearchConfig,
    SeqKind, VerificationReport, WideInt,
};

use crate::cli::{Cli, Command, SeqArg, SignChoice, VerifyTarget};
use crate::config::FileConfig;
use crate::output::{report_json, write_records};
use crate::threads::Threads;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("output error: {0}")]
    Io(#[from] io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => EXIT_USAGE,
            AppError::Resource(_) | AppError::Io(_) => EXIT_RESOURCE,
        }
    }
}

/// Whether the command's own check succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => EXIT_OK,
            Outcome::Failed => EXIT_FAILED,
        }
    }
}

fn index(value: i64) -> Result<Index, AppError> {
    Index::new(value).map_err(|e| AppError::Usage(e.to_string()))
}

fn runner(workers: Option<NonZeroUsize>) -> Threads {
    workers.map(Threads::new).unwrap_or_else(Threads::available)
}

pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> Result<Outcome, AppError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(|e| AppError::Usage(e.to_string()))?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Seq { kind, n, modulus } => {
            let n = index(n)?;
            let value = match modulus {
                None => match kind {
                    SeqArg::Fib => fib(n),
                    SeqArg::Lucas => lucas(n),
                },
                Some(text) => {
                    let m: WideInt = text
                        .parse()
                        .map_err(|_| AppError::Usage(format!("invalid modulus '{text}'")))?;
                    let r = match kind {
                        SeqArg::Fib => fib_mod(n, &m),
                        SeqArg::Lucas => lucas_mod(n, &m),
                    };
                    r.map_err(|e| AppError::Usage(e.to_string()))?
                }
            };
            writeln!(out, "{value}")?;
            Ok(Outcome::Success)
        }
        Command::Factor { n, m, sign } => {
            let pair = normalize_pair(index(n)?, index(m)?, sign);
            if (pair.n, pair.m, pair.sign) != (index(n)?, index(m)?, sign) {
                writeln!(
                    out,
                    "normalized: F_{n} {sign} F_{m} = {}(F_{} {} F_{})",
                    if pair.scale.as_i64() < 0 { "-" } else { "" },
                    pair.n,
                    pair.sign,
                    pair.m
                )?;
            }
            match sum_factorization(pair.n, pair.m, pair.sign) {
                Ok(f) => {
                    let (fv, lv) = (fib(f.fib_index), lucas(f.lucas_index));
                    writeln!(
                        out,
                        "epsilon={} N={} M={} branch={}",
                        f.epsilon.as_i64(),
                        f.fib_index,
                        f.lucas_index,
                        f.branch
                    )?;
                    writeln!(
                        out,
                        "F_{} * L_{} = {fv} * {lv} = {}",
                        f.fib_index,
                        f.lucas_index,
                        &fv * &lv
                    )?;
                    Ok(Outcome::Success)
                }
                Err(e) => {
                    writeln!(err, "{e}")?;
                    Ok(Outcome::Failed)
                }
            }
        }
        Command::Search {
            max_n,
            sign,
            parity,
            format,
            workers,
            include_degenerate,
        } => {
            let max_n = max_n.or(file.max_n).ok_or_else(|| {
                AppError::Usage("search needs --max-n (or max-n in the config file)".into())
            })?;
            let (plus, minus) = sign.or(file.sign).unwrap_or(SignChoice::Both).flags();
            let config = SearchConfig {
                max_n,
                plus,
                minus,
                parity: parity.or(file.parity).map(Into::into).unwrap_or_default(),
                include_degenerate: include_degenerate
                    .or(file.include_degenerate)
                    .unwrap_or(true),
            };
            let runner = runner(workers.or(file.workers));
            let started = Instant::now();
            let records =
                search(&config, &runner).map_err(|e| AppError::Resource(e.to_string()))?;
            write_records(out, format.or(file.format).unwrap_or_default(), &records)?;
            writeln!(
                err,
                "search max-n={max_n}: {} records in {:.2?} ({} workers)",
                records.len(),
                started.elapsed(),
                runner.workers()
            )?;
            Ok(Outcome::Success)
        }
        Command::Verify {
            target,
            bound,
            workers,
        } => {
            let bound = bound.or(file.bound).unwrap_or(target.default_bound());
            let runner = runner(workers.or(file.workers));
            let started = Instant::now();
            let reports = run_verification(target, bound, &runner)
                .map_err(|e| AppError::Usage(e.to_string()))?;
            let mut outcome = Outcome::Success;
            for report in &reports {
                writeln!(out, "{}", report_json(report))?;
                writeln!(
                    err,
                    "{}: {} ({} witnesses, {} expected)",
                    report.theorem_id,
                    report.verdict.as_str(),
                    report.witnesses.len(),
                    report.expected.len()
                )?;
                if !report.passed() {
                    outcome = Outcome::Failed;
                }
            }
            writeln!(err, "elapsed {:.2?}", started.elapsed())?;
            Ok(outcome)
        }
    }
}

/// Runs one `verify` target; composite targets yield one report per sequence.
pub fn run_verification(
    target: VerifyTarget,
    bound: u64,
    runner: &Threads,
) -> Result<Vec<VerificationReport>, fibsum_core::VerifyError> {
    let both = [SeqKind::Fib, SeqKind::Lucas];
    match target {
        VerifyTarget::Powers2 => both
            .iter()
            .map(|&k| verify_power_class(2, k, bound, runner))
            .collect(),
        VerifyTarget::Powers3 => both
            .iter()
            .map(|&k| verify_power_class(3, k, bound, runner))
            .collect(),
        VerifyTarget::RatioSquares => both
            .iter()
            .map(|&k| verify_ratio_squares(k, bound, runner))
            .collect(),
        VerifyTarget::Fnlm => Ok(vec![enumerate_fnlm(bound, bound, runner)?]),
        VerifyTarget::L18 => Ok(vec![check_107(bound, runner)?]),
        VerifyTarget::Theorem1 => Ok(vec![verify_theorem1(bound, runner)?]),
    }
}
