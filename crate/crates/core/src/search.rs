//! Exhaustive search for `F_n ± F_m = y^p` over `0 ≤ m ≤ n ≤ max_n`.
//!
//! The Fibonacci table is built once by the recurrence and shared read-only
//! by all stripes; the inner loop runs over `m` so the table is read
//! sequentially. Records are sorted by `(sign, n, m)` after the merge, so the
//! output does not depend on how the range was split.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::identity::Sign;
use crate::power::PowerClassifier;
use crate::sequence::{Index, WideInt};
use crate::stripes::Stripes;

/// Upper limit on the memory of the Fibonacci table, in bytes.
pub const TABLE_BYTE_LIMIT: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max_n = {max_n} needs about {bytes} bytes of table, above the {limit} byte limit")]
    TableTooLarge { max_n: u64, bytes: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parity {
    #[default]
    Any,
    Same,
    Mixed,
}

impl Parity {
    fn accepts(self, n: u64, m: u64) -> bool {
        let same = (n + m).is_multiple_of(2);
        match self {
            Parity::Any => true,
            Parity::Same => same,
            Parity::Mixed => !same,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_n: u64,
    pub plus: bool,
    pub minus: bool,
    pub parity: Parity,
    pub include_degenerate: bool,
}

impl SearchConfig {
    pub fn new(max_n: u64) -> Self {
        SearchConfig {
            max_n,
            plus: true,
            minus: true,
            parity: Parity::Any,
            include_degenerate: true,
        }
    }

    pub fn with_signs(mut self, plus: bool, minus: bool) -> Self {
        self.plus = plus;
        self.minus = minus;
        self
    }

    fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        [(self.plus, Sign::Plus), (self.minus, Sign::Minus)]
            .into_iter()
            .filter_map(|(on, s)| on.then_some(s))
    }
}

/// Which left-hand sides a record stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indices {
    /// The whole family `F_n - F_n = 0`.
    Diagonal,
    Pair {
        n: u64,
        m: u64,
    },
}

/// One solution `F_n ± F_m = y^p` with `p` maximal.
///
/// Degenerate records (value 0 or 1) carry `y = value` and `p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub sign: Sign,
    pub indices: Indices,
    pub value: WideInt,
    pub y: WideInt,
    pub p: u32,
    pub degenerate: bool,
}

impl SolutionRecord {
    pub fn n(&self) -> Option<u64> {
        match self.indices {
            Indices::Pair { n, .. } => Some(n),
            Indices::Diagonal => None,
        }
    }

    pub fn m(&self) -> Option<u64> {
        match self.indices {
            Indices::Pair { m, .. } => Some(m),
            Indices::Diagonal => None,
        }
    }

    fn degenerate_pair(sign: Sign, n: u64, m: u64, value: BigUint) -> Self {
        let value = WideInt::from(value);
        SolutionRecord {
            sign,
            indices: Indices::Pair { n, m },
            y: value.clone(),
            value,
            p: 0,
            degenerate: true,
        }
    }

    fn diagonal_family() -> Self {
        SolutionRecord {
            sign: Sign::Minus,
            indices: Indices::Diagonal,
            value: WideInt::zero(),
            y: WideInt::zero(),
            p: 0,
            degenerate: true,
        }
    }

    fn order(&self, other: &Self) -> Ordering {
        (self.sign, self.indices).cmp(&(other.sign, other.indices))
    }
}

/// Approximate heap bytes of `F_0..=F_max_n`.
fn table_bytes(max_n: u64) -> u64 {
    // F_k has about 0.6943 k bits.
    let bits = max_n.saturating_mul(max_n.saturating_add(1)) / 2;
    bits.saturating_mul(7) / 80 + max_n.saturating_add(1).saturating_mul(32)
}

fn fib_table(max_n: usize) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(max_n + 1);
    table.push(BigUint::zero());
    if max_n >= 1 {
        table.push(BigUint::one());
    }
    for k in 2..=max_n {
        let next = &table[k - 1] + &table[k - 2];
        table.push(next);
    }
    table
}

/// Runs the search described by `config`.
pub fn search<S: Stripes>(
    config: &SearchConfig,
    runner: &S,
) -> Result<Vec<SolutionRecord>, SearchError> {
    let bytes = table_bytes(config.max_n);
    if bytes > TABLE_BYTE_LIMIT || config.max_n > Index::MAX as u64 {
        return Err(SearchError::TableTooLarge {
            max_n: config.max_n,
            bytes,
            limit: TABLE_BYTE_LIMIT,
        });
    }
    let max_n = config.max_n as usize;
    let table = fib_table(max_n);
    let classifier = PowerClassifier::new(table[max_n].bits() + 1);
    let signs: Vec<Sign> = config.signs().collect();

    let stripes = runner.run(max_n + 1, |range| {
        let mut found = Vec::new();
        for n in range {
            let fn_ = &table[n];
            for (m, fm) in table[..=n].iter().enumerate() {
                let (nu, mu) = (n as u64, m as u64);
                if !config.parity.accepts(nu, mu) {
                    continue;
                }
                for &sign in &signs {
                    if sign == Sign::Minus && n == m {
                        continue;
                    }
                    let value = match sign {
                        Sign::Plus => fn_ + fm,
                        // F is nondecreasing on n ≥ 0, so this never underflows.
                        Sign::Minus => fn_ - fm,
                    };
                    if value <= BigUint::one() {
                        if config.include_degenerate {
                            found.push(SolutionRecord::degenerate_pair(sign, nu, mu, value));
                        }
                        continue;
                    }
                    let repr = classifier.classify_unsigned(&value);
                    if repr.max_exponent >= 2 {
                        found.push(SolutionRecord {
                            sign,
                            indices: Indices::Pair { n: nu, m: mu },
                            value: value.into(),
                            y: repr.base,
                            p: repr.max_exponent,
                            degenerate: false,
                        });
                    }
                }
            }
        }
        found
    });

    let mut records: Vec<SolutionRecord> = stripes.into_iter().flatten().collect();
    if config.minus && config.include_degenerate && config.parity != Parity::Mixed {
        records.push(SolutionRecord::diagonal_family());
    }
    records.sort_by(SolutionRecord::order);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stripes::Sequential;

    #[test]
    fn zero_bound_plus_gives_single_degenerate_row() {
        let config = SearchConfig::new(0).with_signs(true, false);
        let records = search(&config, &Sequential).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!((r.sign, r.n(), r.m()), (Sign::Plus, Some(0), Some(0)));
        assert_eq!(r.value, WideInt::zero());
        assert!(r.degenerate);
        assert_eq!(r.p, 0);
    }

    #[test]
    fn diagonal_family_is_a_single_marker() {
        let config = SearchConfig::new(20).with_signs(false, true);
        let records = search(&config, &Sequential).unwrap();
        assert_eq!(records[0].indices, Indices::Diagonal);
        assert!(records.iter().skip(1).all(|r| r.n() != r.m()));
    }

    #[test]
    fn degenerate_rows_can_be_suppressed() {
        let mut config = SearchConfig::new(40);
        config.include_degenerate = false;
        let records = search(&config, &Sequential).unwrap();
        assert!(records.iter().all(|r| !r.degenerate && r.p >= 2));
    }

    #[test]
    fn parity_filters() {
        let mut config = SearchConfig::new(40);
        config.parity = Parity::Mixed;
        let mixed = search(&config, &Sequential).unwrap();
        assert!(mixed
            .iter()
            .all(|r| (r.n().unwrap() + r.m().unwrap()) % 2 == 1));
        config.parity = Parity::Same;
        let same = search(&config, &Sequential).unwrap();
        assert!(same
            .iter()
            .all(|r| r.n().is_none_or(|n| (n + r.m().unwrap()) % 2 == 0)));
        config.parity = Parity::Any;
        let all = search(&config, &Sequential).unwrap();
        assert_eq!(all.len(), mixed.len() + same.len());
    }

    #[test]
    fn oversized_search_is_refused() {
        let config = SearchConfig::new(1_000_000);
        assert!(matches!(
            search(&config, &Sequential),
            Err(SearchError::TableTooLarge { .. })
        ));
    }

    #[test]
    fn table_matches_recurrence_seed() {
        let t = fib_table(12);
        assert_eq!(t[12], BigUint::from(144u32));
        assert_eq!(fib_table(0).len(), 1);
    }
}
