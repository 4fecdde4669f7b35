//! Structural identities between Fibonacci and Lucas numbers.
//!
//! * [`sum_factorization`]: for `n ≡ m (mod 2)`, `F_n ± F_m = F_N · L_M` with
//!   `N = (n + εm)/2`, `M = (n - εm)/2` and `ε` fixed by `n - m (mod 4)`.
//! * [`gcd_predict`]: the gcd of two terms from the 2-adic valuations of
//!   their indices.
//! * [`check_doubling`] / [`check_tripling`]: `F_{2n} = F_n L_n` and
//!   `L_{3n} = L_n (L_n^2 - 3(-1)^n)`.

use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::sequence::{fib, fib_signed, lucas, lucas_signed, Index, WideInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("indices {n} and {m} have different parity; no factorization exists")]
    ParityMismatch { n: i64, m: i64 },
    #[error("expected n ≥ m ≥ 0, got n = {n}, m = {m}")]
    NotNormalized { n: i64, m: i64 },
    #[error("gcd laws need positive indices, got n = {n}, m = {m}")]
    NonPositiveIndex { n: i64, m: i64 },
}

/// The `±` in `F_n ± F_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sign must be '+' or '-'")]
pub struct ParseSignError;

impl FromStr for Sign {
    type Err = ParseSignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(ParseSignError),
        }
    }
}

/// Which residue class of `n - m (mod 4)` selected the factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `n ≡ m (mod 4)`
    Congruent,
    /// `n ≡ m + 2 (mod 4)`
    Shifted,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Congruent => "n = m (mod 4)",
            Branch::Shifted => "n = m + 2 (mod 4)",
        })
    }
}

/// `F_n ± F_m = F_N · L_M`, with `N` stored as `fib_index` and `M` as
/// `lucas_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationResult {
    pub epsilon: Sign,
    pub fib_index: Index,
    pub lucas_index: Index,
    pub branch: Branch,
}

impl FactorizationResult {
    /// `F_N · L_M`, evaluated exactly.
    pub fn product(&self) -> WideInt {
        fib(self.fib_index) * lucas(self.lucas_index)
    }
}

/// Factorization of `F_n + sign·F_m` for `n ≥ m ≥ 0` of equal
/// parity.
pub fn sum_factorization(
    n: Index,
    m: Index,
    sign: Sign,
) -> Result<FactorizationResult, IdentityError> {
    let (ni, mi) = (n.get(), m.get());
    if mi < 0 || ni < mi {
        return Err(IdentityError::NotNormalized { n: ni, m: mi });
    }
    let diff = ni - mi;
    if diff % 2 != 0 {
        return Err(IdentityError::ParityMismatch { n: ni, m: mi });
    }
    let branch = if diff % 4 == 0 {
        Branch::Congruent
    } else {
        Branch::Shifted
    };
    let epsilon = match (sign, branch) {
        (Sign::Plus, Branch::Congruent) | (Sign::Minus, Branch::Shifted) => Sign::Plus,
        (Sign::Plus, Branch::Shifted) | (Sign::Minus, Branch::Congruent) => Sign::Minus,
    };
    let big_n = (ni + epsilon.as_i64() * mi) / 2;
    let big_m = (ni - epsilon.as_i64() * mi) / 2;
    // Both halves lie in [0, n], so they stay in range.
    let result = FactorizationResult {
        epsilon,
        fib_index: Index::new(big_n).expect("half-sum within index range"),
        lucas_index: Index::new(big_m).expect("half-difference within index range"),
        branch,
    };
    let lhs = fib(n) + fib(m) * sign.as_i64();
    assert_eq!(
        result.product(),
        lhs,
        "factorization identity failed for ({ni}, {mi}, {sign})"
    );
    Ok(result)
}

/// `F_n + sign·F_m` rewritten as `scale · (F_hi + sign'·F_lo)` with
/// `hi ≥ lo ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedPair {
    pub scale: Sign,
    pub n: Index,
    pub m: Index,
    pub sign: Sign,
}

/// Moves an arbitrary signed pair onto nonnegative indices via
/// `F_{-k} = (-1)^{k+1} F_k`, then orders it. Parity is preserved.
pub fn normalize_pair(n: Index, m: Index, sign: Sign) -> NormalizedPair {
    let reflect = |i: Index| {
        if i.is_negative() && i.unsigned_abs().is_multiple_of(2) {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let (s1, s2) = (reflect(n), reflect(m));
    let a = Index::new(n.get().abs()).expect("|n| in range");
    let b = Index::new(m.get().abs()).expect("|m| in range");
    // value = s1 · (F_a + t·F_b)
    let t = sign.times(s1).times(s2);
    if a >= b {
        NormalizedPair {
            scale: s1,
            n: a,
            m: b,
            sign: t,
        }
    } else {
        // F_a + t·F_b = t · (F_b + t·F_a)
        NormalizedPair {
            scale: s1.times(t),
            n: b,
            m: a,
            sign: t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcdKind {
    FibFib,
    LucasLucas,
    FibLucas,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdOutcome {
    Determinate(WideInt),
    /// The gcd is 1 or 2.
    OneOrTwo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdPrediction {
    pub kind: GcdKind,
    pub outcome: GcdOutcome,
}

impl GcdPrediction {
    pub fn determinate(&self) -> Option<&WideInt> {
        match &self.outcome {
            GcdOutcome::Determinate(v) => Some(v),
            GcdOutcome::OneOrTwo => None,
        }
    }

    pub fn ambiguous_set(&self) -> Option<[u8; 2]> {
        match self.outcome {
            GcdOutcome::Determinate(_) => None,
            GcdOutcome::OneOrTwo => Some([1, 2]),
        }
    }

    /// Whether `gcd` is consistent with the prediction.
    pub fn admits(&self, gcd: &WideInt) -> bool {
        match &self.outcome {
            GcdOutcome::Determinate(v) => v == gcd,
            GcdOutcome::OneOrTwo => gcd.is_one() || *gcd == WideInt::from(2),
        }
    }
}

/// Predicted gcd of `(F_n, F_m)`, `(L_n, L_m)` or `(F_n, L_m)` for
/// `n, m ≥ 1`.
pub fn gcd_predict(kind: GcdKind, n: Index, m: Index) -> Result<GcdPrediction, IdentityError> {
    let (ni, mi) = (n.get(), m.get());
    if ni < 1 || mi < 1 {
        return Err(IdentityError::NonPositiveIndex { n: ni, m: mi });
    }
    let d = Index::new(ni.gcd(&mi)).expect("gcd bounded by inputs");
    let a = ni.trailing_zeros();
    let b = mi.trailing_zeros();
    let outcome = match kind {
        GcdKind::FibFib => GcdOutcome::Determinate(fib(d)),
        GcdKind::LucasLucas if a == b => GcdOutcome::Determinate(lucas(d)),
        GcdKind::FibLucas if a > b => GcdOutcome::Determinate(lucas(d)),
        _ => GcdOutcome::OneOrTwo,
    };
    Ok(GcdPrediction { kind, outcome })
}

/// `F_{2n} = F_n · L_n`, evaluated on both sides.
pub fn check_doubling(n: Index) -> bool {
    let k = n.get();
    fib_signed(2 * k) == fib(n) * lucas(n)
}

/// `L_{3n} = L_n · (L_n^2 - 3(-1)^n)`, evaluated on both sides.
pub fn check_tripling(n: Index) -> bool {
    let k = n.get();
    let l = lucas(n);
    let parity_term = if k % 2 == 0 { 3 } else { -3 };
    lucas_signed(3 * k) == &l * (&l * &l - parity_term)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: i64) -> Index {
        Index::new(n).unwrap()
    }

    #[test]
    fn factorization_examples() {
        let r = sum_factorization(idx(36), idx(12), Sign::Plus).unwrap();
        assert_eq!(
            (r.epsilon, r.fib_index, r.lucas_index),
            (Sign::Plus, idx(24), idx(12))
        );
        assert_eq!(r.branch, Branch::Congruent);
        assert_eq!(r.product(), WideInt::from(46368 * 322));
        assert_eq!(r.product(), WideInt::from(14_930_496));

        let r = sum_factorization(idx(9), idx(3), Sign::Plus).unwrap();
        assert_eq!(
            (r.epsilon, r.fib_index, r.lucas_index),
            (Sign::Minus, idx(3), idx(6))
        );
        assert_eq!(r.branch, Branch::Shifted);
        assert_eq!(r.product(), WideInt::from(36));

        for n in [0, 1, 7, 30] {
            let r = sum_factorization(idx(n), idx(n), Sign::Minus).unwrap();
            assert_eq!((r.fib_index, r.lucas_index), (idx(0), idx(n)));
            assert_eq!(r.product(), WideInt::from(0));
        }
    }

    #[test]
    fn factorization_errors() {
        assert_eq!(
            sum_factorization(idx(5), idx(2), Sign::Plus),
            Err(IdentityError::ParityMismatch { n: 5, m: 2 })
        );
        assert_eq!(
            sum_factorization(idx(2), idx(4), Sign::Plus),
            Err(IdentityError::NotNormalized { n: 2, m: 4 })
        );
        assert_eq!(
            sum_factorization(idx(4), idx(-2), Sign::Minus),
            Err(IdentityError::NotNormalized { n: 4, m: -2 })
        );
    }

    #[test]
    fn normalization_preserves_value_and_parity() {
        for n in -15i64..=15 {
            for m in -15i64..=15 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let p = normalize_pair(idx(n), idx(m), sign);
                    assert!(p.n >= p.m && p.m.get() >= 0);
                    assert_eq!((p.n.get() - p.m.get()).rem_euclid(2), (n - m).rem_euclid(2));
                    let original = fib(idx(n)) + fib(idx(m)) * sign.as_i64();
                    let rebuilt = (fib(p.n) + fib(p.m) * p.sign.as_i64()) * p.scale.as_i64();
                    assert_eq!(original, rebuilt, "({n}, {m}, {sign})");
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        let p = gcd_predict(GcdKind::FibFib, idx(12), idx(8)).unwrap();
        assert_eq!(p.determinate(), Some(&WideInt::from(3)));
        let p = gcd_predict(GcdKind::FibLucas, idx(12), idx(6)).unwrap();
        assert_eq!(p.determinate(), Some(&WideInt::from(18)));
        let p = gcd_predict(GcdKind::LucasLucas, idx(6), idx(9)).unwrap();
        assert_eq!(p.ambiguous_set(), Some([1, 2]));
        assert!(p.admits(&WideInt::from(2)));
        assert!(!p.admits(&WideInt::from(3)));
    }

    #[test]
    fn gcd_rejects_nonpositive_indices() {
        assert_eq!(
            gcd_predict(GcdKind::FibFib, idx(0), idx(4)),
            Err(IdentityError::NonPositiveIndex { n: 0, m: 4 })
        );
        assert!(gcd_predict(GcdKind::FibLucas, idx(3), idx(-3)).is_err());
    }

    #[test]
    fn doubling_and_tripling_examples() {
        assert!(check_doubling(idx(12)));
        assert_eq!(fib(idx(12)) * lucas(idx(12)), WideInt::from(46368));
        assert!(check_doubling(idx(0)));
        assert!(check_tripling(idx(6)));
        assert_eq!(lucas(idx(18)), WideInt::from(18 * 321));
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("+".parse::<Sign>(), Ok(Sign::Plus));
        assert_eq!("minus".parse::<Sign>(), Ok(Sign::Minus));
        assert!("*".parse::<Sign>().is_err());
    }
}
