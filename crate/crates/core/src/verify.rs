//! Finite-range verification engines.
//!
//! Each engine scans an index range, collects witnesses, and compares them
//! with the corresponding set in [`crate::known`]. A report passes iff the
//! witness set equals the expected set exactly; a missing or extra witness
//! is a failure.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use thiserror::Error;

use crate::identity::{normalize_pair, sum_factorization, Sign};
use crate::known;
use crate::power::{iroot_floor, PowerClassifier, PowerRepr};
use crate::sequence::{fib_unsigned, lucas_mod_u64, lucas_unsigned, Index, WideInt};
use crate::stripes::Stripes;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("bound {got} is below the minimum {need} needed to contain the expected set")]
    BoundTooSmall { need: u64, got: u64 },
    #[error("no known classification for q = {0}; only 2 and 3 are supported")]
    UnsupportedPrime(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqKind {
    Fib,
    Lucas,
}

impl SeqKind {
    fn value(self, n: u64) -> BigUint {
        match self {
            SeqKind::Fib => fib_unsigned(n),
            SeqKind::Lucas => lucas_unsigned(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    PowersOfTwo(SeqKind),
    PowersOfThree(SeqKind),
    RatioSquares(SeqKind),
    FibLucasProduct,
    Obstruction107,
    SameParity,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::PowersOfTwo(SeqKind::Fib) => "powers2-fib",
            TheoremId::PowersOfTwo(SeqKind::Lucas) => "powers2-lucas",
            TheoremId::PowersOfThree(SeqKind::Fib) => "powers3-fib",
            TheoremId::PowersOfThree(SeqKind::Lucas) => "powers3-lucas",
            TheoremId::RatioSquares(SeqKind::Fib) => "ratio-squares-fib",
            TheoremId::RatioSquares(SeqKind::Lucas) => "ratio-squares-lucas",
            TheoremId::FibLucasProduct => "fnlm",
            TheoremId::Obstruction107 => "l18",
            TheoremId::SameParity => "theorem1",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// Outcome of one finite-range scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub bounds: Vec<u64>,
    /// Sorted, deduplicated index tuples found by the scan.
    pub witnesses: Vec<Vec<i64>>,
    /// Sorted index tuples the scan must find.
    pub expected: Vec<Vec<i64>>,
    pub verdict: Verdict,
    /// Informational key/value facts; never part of the verdict.
    pub notes: Vec<(String, String)>,
}

impl VerificationReport {
    fn new(
        theorem_id: TheoremId,
        bounds: Vec<u64>,
        mut witnesses: Vec<Vec<i64>>,
        mut expected: Vec<Vec<i64>>,
    ) -> Self {
        witnesses.sort();
        witnesses.dedup();
        expected.sort();
        expected.dedup();
        let verdict = if witnesses == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            theorem_id,
            bounds,
            witnesses,
            expected,
            verdict,
            notes: Vec::new(),
        }
    }

    fn note(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.notes.push((key.into(), format!("{value}")));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn require(bound: u64, need: u64) -> Result<(), VerifyError> {
    if bound < need {
        Err(VerifyError::BoundTooSmall { need, got: bound })
    } else {
        Ok(())
    }
}

fn singletons(values: &[i64]) -> Vec<Vec<i64>> {
    values.iter().map(|&v| alloc::vec![v]).collect()
}

fn pairs(values: &[(i64, i64)]) -> Vec<Vec<i64>> {
    values.iter().map(|&(a, b)| alloc::vec![a, b]).collect()
}

fn flatten<T>(parts: Vec<Vec<T>>) -> Vec<T> {
    parts.into_iter().flatten().collect()
}

/// Bit length bound for `F_n` and `L_n` (`L_n < 2^{0.7 n + 2}`).
fn sequence_bits(n: u64) -> u64 {
    n * 7 / 10 + 3
}

/// Scans `1 ≤ n ≤ bound` for `F_n` (or `L_n`) `= q^s · y^b` with `b ≥ 2`.
pub fn verify_power_class<S: Stripes>(
    q: u32,
    kind: SeqKind,
    bound: u64,
    runner: &S,
) -> Result<VerificationReport, VerifyError> {
    let (id, expected) = match (q, kind) {
        (2, SeqKind::Fib) => (TheoremId::PowersOfTwo(kind), known::FIB_TIMES_POWER_OF_TWO),
        (2, SeqKind::Lucas) => (
            TheoremId::PowersOfTwo(kind),
            known::LUCAS_TIMES_POWER_OF_TWO,
        ),
        (3, SeqKind::Fib) => (
            TheoremId::PowersOfThree(kind),
            known::FIB_TIMES_POWER_OF_THREE,
        ),
        (3, SeqKind::Lucas) => (
            TheoremId::PowersOfThree(kind),
            known::LUCAS_TIMES_POWER_OF_THREE,
        ),
        _ => return Err(VerifyError::UnsupportedPrime(q)),
    };
    require(bound, 12)?;
    let classifier = PowerClassifier::new(sequence_bits(bound));
    let found = runner.run(bound as usize, |range| {
        range
            .map(|i| i as u64 + 1)
            .filter(|&n| {
                let value = kind.value(n).into();
                classifier
                    .stripped_power_test(&value, q)
                    .map(|s| s.admits_power())
                    .unwrap_or(false)
            })
            .map(|n| alloc::vec![n as i64])
            .collect::<Vec<_>>()
    });
    Ok(VerificationReport::new(
        id,
        alloc::vec![bound],
        flatten(found),
        singletons(expected),
    ))
}

/// Scans `1 ≤ u < v ≤ bound`, `u | v` for square ratios `F_v / F_u`, or for
/// the Lucas kind, square `L_v / L_u` with `v / u` odd.
pub fn verify_ratio_squares<S: Stripes>(
    kind: SeqKind,
    bound: u64,
    runner: &S,
) -> Result<VerificationReport, VerifyError> {
    require(bound, 12)?;
    let table: Vec<BigUint> = (0..=bound).map(|n| kind.value(n)).collect();
    let found = runner.run(bound as usize, |range| {
        let mut hits = Vec::new();
        for v in range.map(|i| i as u64 + 1) {
            for u in (1..v).filter(|u| v % u == 0) {
                if kind == SeqKind::Lucas && (v / u) % 2 == 0 {
                    continue;
                }
                let (ratio, rem) = table[v as usize].div_rem(&table[u as usize]);
                assert!(rem.is_zero(), "divisibility failed for ({v}, {u})");
                if Pow::pow(&iroot_floor(&ratio, 2), 2u32) == ratio {
                    hits.push(alloc::vec![v as i64, u as i64]);
                }
            }
        }
        hits
    });
    let expected = match kind {
        SeqKind::Fib => known::FIB_SQUARE_RATIOS,
        SeqKind::Lucas => known::LUCAS_SQUARE_RATIOS,
    };
    Ok(VerificationReport::new(
        TheoremId::RatioSquares(kind),
        alloc::vec![bound],
        flatten(found),
        pairs(expected),
    ))
}

/// Scans `1 ≤ N ≤ bound_n`, `1 ≤ M ≤ bound_m` for `F_N · L_M = 2^s · y^p`.
pub fn enumerate_fnlm<S: Stripes>(
    bound_n: u64,
    bound_m: u64,
    runner: &S,
) -> Result<VerificationReport, VerifyError> {
    require(bound_n, 24)?;
    require(bound_m, 12)?;
    let fibs: Vec<BigInt> = (0..=bound_n).map(|n| fib_unsigned(n).into()).collect();
    let lucases: Vec<BigInt> = (0..=bound_m).map(|m| lucas_unsigned(m).into()).collect();
    let classifier = PowerClassifier::new(sequence_bits(bound_n) + sequence_bits(bound_m));
    let found = runner.run(bound_n as usize, |range| {
        let mut hits = Vec::new();
        for big_n in range.map(|i| i + 1) {
            for (big_m, lucas) in lucases.iter().enumerate().skip(1) {
                let product = &fibs[big_n] * lucas;
                let stripped = classifier
                    .stripped_power_test(&product, 2)
                    .expect("positive product");
                if stripped.admits_power() {
                    hits.push(alloc::vec![big_n as i64, big_m as i64]);
                }
            }
        }
        hits
    });
    Ok(VerificationReport::new(
        TheoremId::FibLucasProduct,
        alloc::vec![bound_n, bound_m],
        flatten(found),
        pairs(known::FIB_LUCAS_PRODUCT_PAIRS),
    ))
}

/// Checks `107 ∥ L_18` and that `107^2 | L_n` never happens for
/// `n ≤ bound` unless `1926 | n`. Works modulo `107^2` throughout.
///
/// Witnesses are `[18]` when `107 ∥ L_18` holds, plus `[n]` for every
/// violating index; the expected set is `[[18]]`.
pub fn check_107<S: Stripes>(bound: u64, runner: &S) -> Result<VerificationReport, VerifyError> {
    let period = known::OBSTRUCTION_PERIOD as u64;
    require(bound, period)?;
    let p = known::OBSTRUCTION_PRIME;
    let p2 = p * p;
    let anchor = known::OBSTRUCTION_INDEX;
    let anchor_residue = lucas_mod_u64(anchor, p2);
    let exactly_once = anchor_residue.is_multiple_of(p) && anchor_residue != 0;

    let violations = runner.run(bound as usize, |range| {
        range
            .map(|i| i as u64 + 1)
            .filter(|n| n % period != 0 && lucas_mod_u64(*n as i64, p2) == 0)
            .map(|n| alloc::vec![n as i64])
            .collect::<Vec<_>>()
    });
    let mut witnesses = flatten(violations);
    if exactly_once {
        witnesses.push(alloc::vec![anchor]);
    }
    let period_residue = lucas_mod_u64(period as i64, p2);
    Ok(VerificationReport::new(
        TheoremId::Obstruction107,
        alloc::vec![bound],
        witnesses,
        alloc::vec![alloc::vec![anchor]],
    )
    .note("L_18 mod 11449", anchor_residue)
    .note("L_1926 mod 11449", period_residue)
    .note("11449 divides L_1926", period_residue == 0))
}

/// One solution of `F_n + sign·F_m = ±y^p` found by [`theorem1_hits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Hit {
    pub n: i64,
    pub m: i64,
    pub sign: Sign,
    /// Signed left-hand side.
    pub value: WideInt,
    /// Classification of `|value|`.
    pub repr: PowerRepr,
}

impl Theorem1Hit {
    /// `|value| ≤ 1`.
    pub fn degenerate(&self) -> bool {
        self.repr.degenerate
    }

    fn max_index(&self) -> i64 {
        self.n.abs().max(self.m.abs())
    }
}

/// Whether a signed value is `y^p` for some integer `y` and `p ≥ 2`.
fn signed_power(value: &BigInt, repr: &PowerRepr) -> bool {
    if repr.degenerate {
        return true;
    }
    if !value.is_negative() {
        return repr.max_exponent >= 2;
    }
    // -y^e = (-y')^p needs an odd prime p dividing e.
    let e = repr.max_exponent;
    e >> e.trailing_zeros() > 1
}

/// Every `(n, m, sign)` with `|n|, |m| ≤ bound`, `n ≡ m (mod 2)` and
/// `F_n + sign·F_m` equal to `y^p` for some integer `y`, `p ≥ 2`, including
/// the degenerate values `0` and `±1`. Sorted by `(n, m, sign)`.
pub fn theorem1_hits<S: Stripes>(bound: u64, runner: &S) -> Vec<Theorem1Hit> {
    let table: Vec<BigInt> = (0..=bound).map(|k| fib_unsigned(k).into()).collect();
    let signed_fib = |k: i64| -> BigInt {
        let v = &table[k.unsigned_abs() as usize];
        if k < 0 && k % 2 == 0 {
            -v
        } else {
            v.clone()
        }
    };
    let classifier = PowerClassifier::new(sequence_bits(bound) + 1);
    let b = bound as i64;
    let found = runner.run(2 * bound as usize + 1, |range| {
        let mut hits = Vec::new();
        for n in range.map(|i| i as i64 - b) {
            let fn_ = signed_fib(n);
            for m in (-b..=b).filter(|m| (n - m).rem_euclid(2) == 0) {
                let fm = signed_fib(m);
                for sign in [Sign::Plus, Sign::Minus] {
                    let value = match sign {
                        Sign::Plus => &fn_ + &fm,
                        Sign::Minus => &fn_ - &fm,
                    };
                    let repr = classifier.classify_unsigned(value.magnitude());
                    if signed_power(&value, &repr) {
                        hits.push(Theorem1Hit {
                            n,
                            m,
                            sign,
                            value,
                            repr,
                        });
                    }
                }
            }
        }
        hits
    });
    let mut hits = flatten(found);
    hits.sort_by_key(|h| (h.n, h.m, h.sign));
    hits
}

/// Checks that every same-parity solution with `|n|, |m| ≤ bound` has
/// `max(|n|, |m|) ≤ 36` or is `y = 0` with `|n| = |m|`, and that each
/// non-degenerate hit descends to a listed `(N, M)` product pair.
///
/// Witnesses are the violations `[n, m, ±1]`; the expected set is empty.
/// Values `±1` are exempt from the index bound.
pub fn verify_theorem1<S: Stripes>(
    bound: u64,
    runner: &S,
) -> Result<VerificationReport, VerifyError> {
    require(bound, 40)?;
    let hits = theorem1_hits(bound, runner);
    let mut violations = Vec::new();
    let mut largest: Option<&Theorem1Hit> = None;
    let mut descents = 0usize;
    for hit in &hits {
        let witness = || alloc::vec![hit.n, hit.m, hit.sign.as_i64()];
        if hit.value.is_zero() {
            if hit.n.abs() != hit.m.abs() && hit.max_index() > known::SAME_PARITY_INDEX_BOUND {
                violations.push(witness());
            }
            continue;
        }
        if hit.degenerate() {
            continue;
        }
        if hit.max_index() > known::SAME_PARITY_INDEX_BOUND {
            violations.push(witness());
        }
        if largest.is_none_or(|l| hit.max_index() > l.max_index()) {
            largest = Some(hit);
        }
        let pair = normalize_pair(
            Index::new(hit.n).unwrap(),
            Index::new(hit.m).unwrap(),
            hit.sign,
        );
        let factored = sum_factorization(pair.n, pair.m, pair.sign).expect("same parity");
        let (big_n, big_m) = (factored.fib_index.get(), factored.lucas_index.get());
        if big_n >= 1 && big_m >= 1 {
            descents += 1;
            if !known::FIB_LUCAS_PRODUCT_PAIRS.contains(&(big_n, big_m)) {
                violations.push(witness());
            }
        }
    }
    let nondegenerate = hits.iter().filter(|h| !h.degenerate()).count();
    let mut report = VerificationReport::new(
        TheoremId::SameParity,
        alloc::vec![bound],
        violations,
        Vec::new(),
    )
    .note("hits", hits.len())
    .note("nondegenerate hits", nondegenerate)
    .note("descended to (N, M)", descents);
    if let Some(l) = largest {
        report = report.note("largest hit", format!("({}, {}, {})", l.n, l.m, l.sign));
    }
    Ok(report)
}
