//! Fibonacci and Lucas numbers at signed indices.
//!
//! Everything here is computed by fast doubling on `|n|` followed by the
//! reflection formulas `F_{-n} = (-1)^{n+1} F_n` and `L_{-n} = (-1)^n L_n`.
//! The modular routines run the same doubling steps with every intermediate
//! reduced, so no full-size value is ever built.

use core::fmt;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer used for every sequence value.
pub type WideInt = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("index {0} is outside the supported range ±{max}", max = Index::MAX)]
    IndexOutOfRange(i64),
    #[error("index {0} must be nonnegative")]
    NegativeIndex(i64),
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
}

/// A signed sequence index with `|n| ≤ 2^31 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(i64);

impl Index {
    pub const MAX: i64 = (1 << 31) - 1;

    pub fn new(value: i64) -> Result<Self, SequenceError> {
        if value.unsigned_abs() > Self::MAX as u64 {
            return Err(SequenceError::IndexOutOfRange(value));
        }
        Ok(Index(value))
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }

    #[inline]
    pub fn unsigned_abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl TryFrom<i64> for Index {
    type Error = SequenceError;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        Index::new(value)
    }
}

impl TryFrom<i32> for Index {
    type Error = SequenceError;

    fn try_from(value: i32) -> Result<Self, Self::Error> {
        Index::new(value.into())
    }
}

impl From<u16> for Index {
    fn from(value: u16) -> Self {
        Index(value.into())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `(F_k, F_{k+1})` for nonnegative `k`.
pub(crate) fn fib_pair_unsigned(k: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    if k == 0 {
        return (a, b);
    }
    for bit in (0..64 - k.leading_zeros()).rev() {
        // F_{2j} = F_j (2 F_{j+1} - F_j), F_{2j+1} = F_j^2 + F_{j+1}^2
        let twice_b: BigUint = &b << 1u32;
        let c = &a * (twice_b - &a);
        let d = &a * &a + &b * &b;
        if (k >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

pub(crate) fn fib_unsigned(k: u64) -> BigUint {
    fib_pair_unsigned(k).0
}

pub(crate) fn lucas_unsigned(k: u64) -> BigUint {
    // L_k = F_{k-1} + F_{k+1} = 2 F_{k+1} - F_k
    let (f, f_next) = fib_pair_unsigned(k);
    (f_next << 1u32) - f
}

/// `F_n` for any `i64` index; the sign follows the reflection formula.
pub(crate) fn fib_signed(n: i64) -> BigInt {
    let k = n.unsigned_abs();
    let magnitude = fib_unsigned(k);
    let negate = n < 0 && k.is_multiple_of(2);
    BigInt::from_biguint(
        if negate {
            BigSign::Minus
        } else {
            BigSign::Plus
        },
        magnitude,
    )
}

pub(crate) fn lucas_signed(n: i64) -> BigInt {
    let k = n.unsigned_abs();
    let magnitude = lucas_unsigned(k);
    let negate = n < 0 && k % 2 == 1;
    BigInt::from_biguint(
        if negate {
            BigSign::Minus
        } else {
            BigSign::Plus
        },
        magnitude,
    )
}

/// The Fibonacci number `F_n`.
pub fn fib(n: Index) -> WideInt {
    fib_signed(n.get())
}

/// The Lucas number `L_n`.
pub fn lucas(n: Index) -> WideInt {
    lucas_signed(n.get())
}

/// `(F_n, F_{n+1})` for `n ≥ 0`.
pub fn fib_pair(n: Index) -> Result<(WideInt, WideInt), SequenceError> {
    if n.is_negative() {
        return Err(SequenceError::NegativeIndex(n.get()));
    }
    let (a, b) = fib_pair_unsigned(n.unsigned_abs());
    Ok((a.into(), b.into()))
}

/// `(F_k mod m, F_{k+1} mod m)` for a word-sized modulus.
pub(crate) fn fib_pair_mod_u64(k: u64, modulus: u64) -> (u64, u64) {
    debug_assert!(modulus >= 2);
    let m = u128::from(modulus);
    let mut a: u128 = 0;
    let mut b: u128 = 1 % m;
    if k == 0 {
        return (0, b as u64);
    }
    for bit in (0..64 - k.leading_zeros()).rev() {
        let c = a * ((2 * b + m - a) % m) % m;
        let d = (a * a % m + b * b % m) % m;
        if (k >> bit) & 1 == 1 {
            b = (c + d) % m;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a as u64, b as u64)
}

fn fib_pair_mod_big(k: u64, m: &BigUint) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one() % m;
    if k == 0 {
        return (a, b);
    }
    for bit in (0..64 - k.leading_zeros()).rev() {
        let twice_b: BigUint = (&b << 1u32) + m - &a;
        let c = (&a * (twice_b % m)) % m;
        let d = (&a * &a + &b * &b) % m;
        if (k >> bit) & 1 == 1 {
            b = (&c + &d) % m;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

pub(crate) fn lucas_mod_u64(n: i64, modulus: u64) -> u64 {
    let k = n.unsigned_abs();
    let m = u128::from(modulus);
    let (f, f_next) = fib_pair_mod_u64(k, modulus);
    let value = ((2 * u128::from(f_next)) + m - u128::from(f)) % m;
    let value = value as u64;
    if n < 0 && k % 2 == 1 && value != 0 {
        modulus - value
    } else {
        value
    }
}

pub(crate) fn fib_mod_u64(n: i64, modulus: u64) -> u64 {
    let k = n.unsigned_abs();
    let value = fib_pair_mod_u64(k, modulus).0;
    if n < 0 && k.is_multiple_of(2) && value != 0 {
        modulus - value
    } else {
        value
    }
}

fn checked_modulus(modulus: &WideInt) -> Result<BigUint, SequenceError> {
    match modulus.to_biguint() {
        Some(m) if m >= BigUint::from(2u8) => Ok(m),
        _ => Err(SequenceError::ModulusTooSmall),
    }
}

fn reflect_residue(value: BigUint, negate: bool, m: &BigUint) -> WideInt {
    if negate && !value.is_zero() {
        (m - value).into()
    } else {
        value.into()
    }
}

/// Least nonnegative residue of `F_n` modulo `modulus` (`modulus ≥ 2`).
pub fn fib_mod(n: Index, modulus: &WideInt) -> Result<WideInt, SequenceError> {
    let m = checked_modulus(modulus)?;
    if let Some(small) = m.to_u64() {
        return Ok(fib_mod_u64(n.get(), small).into());
    }
    let k = n.unsigned_abs();
    let value = fib_pair_mod_big(k, &m).0;
    Ok(reflect_residue(
        value,
        n.is_negative() && k.is_multiple_of(2),
        &m,
    ))
}

/// Least nonnegative residue of `L_n` modulo `modulus` (`modulus ≥ 2`).
pub fn lucas_mod(n: Index, modulus: &WideInt) -> Result<WideInt, SequenceError> {
    let m = checked_modulus(modulus)?;
    if let Some(small) = m.to_u64() {
        return Ok(lucas_mod_u64(n.get(), small).into());
    }
    let k = n.unsigned_abs();
    let (f, f_next) = fib_pair_mod_big(k, &m);
    let value = ((f_next << 1u32) + &m - f) % &m;
    Ok(reflect_residue(value, n.is_negative() && k % 2 == 1, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn idx(n: i64) -> Index {
        Index::new(n).unwrap()
    }

    fn naive(len: usize, seed: (i64, i64)) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(len);
        out.push(BigInt::from(seed.0));
        out.push(BigInt::from(seed.1));
        while out.len() < len {
            let next = &out[out.len() - 1] + &out[out.len() - 2];
            out.push(next);
        }
        out
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib(idx(0)), BigInt::from(0));
        assert_eq!(fib(idx(12)), BigInt::from(144));
        assert_eq!(fib(idx(24)), BigInt::from(2 * 2 * 2 * 2 * 2 * 9 * 7 * 23));
        assert_eq!(fib(idx(-2)), BigInt::from(-1));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas(idx(4)), BigInt::from(7));
        assert_eq!(lucas(idx(12)), BigInt::from(2 * 7 * 23));
        let l3 = naive(4, (2, 1))[3].clone();
        assert_eq!(l3, BigInt::from(4));
        assert_eq!(lucas(idx(-3)), -l3);
    }

    #[test]
    fn fib_pair_examples() {
        let f = naive(26, (0, 1));
        assert_eq!(
            fib_pair(idx(0)).unwrap(),
            (BigInt::from(0), BigInt::from(1))
        );
        assert_eq!(fib_pair(idx(11)).unwrap(), (f[11].clone(), f[12].clone()));
        assert_eq!(f[11], BigInt::from(89));
        assert_eq!(fib_pair(idx(24)).unwrap(), (f[24].clone(), f[25].clone()));
        assert_eq!(f[25], BigInt::from(75025));
        assert_eq!(fib_pair(idx(-1)), Err(SequenceError::NegativeIndex(-1)));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(
            fib_mod(idx(12), &BigInt::from(100)).unwrap(),
            BigInt::from(44)
        );
        let l18 = naive(19, (2, 1))[18].clone();
        assert_eq!(l18, BigInt::from(5778));
        assert_eq!(lucas_mod(idx(18), &BigInt::from(11449)).unwrap(), l18);
        assert_eq!(fib_mod(idx(-2), &BigInt::from(7)).unwrap(), BigInt::from(6));
    }

    #[test]
    fn modulus_below_two_is_rejected() {
        for m in [-5, 0, 1] {
            assert_eq!(
                fib_mod(idx(3), &BigInt::from(m)),
                Err(SequenceError::ModulusTooSmall)
            );
            assert_eq!(
                lucas_mod(idx(3), &BigInt::from(m)),
                Err(SequenceError::ModulusTooSmall)
            );
        }
    }

    #[test]
    fn index_range_is_enforced() {
        assert!(Index::new(Index::MAX).is_ok());
        assert!(Index::new(-Index::MAX).is_ok());
        assert_eq!(
            Index::new(1 << 31),
            Err(SequenceError::IndexOutOfRange(1 << 31))
        );
        assert!(Index::try_from(i32::MIN).is_err());
        assert!(Index::new(i64::MIN).is_err());
    }

    #[test]
    fn wide_modulus_matches_exact_value() {
        let m: BigInt = BigInt::from(10u8).pow(30) + 57;
        for n in [-301i64, -300, -1, 0, 1, 2, 150, 299, 300] {
            let expected_f = ((fib(idx(n)) % &m) + &m) % &m;
            let expected_l = ((lucas(idx(n)) % &m) + &m) % &m;
            assert_eq!(fib_mod(idx(n), &m).unwrap(), expected_f, "F_{n}");
            assert_eq!(lucas_mod(idx(n), &m).unwrap(), expected_l, "L_{n}");
        }
    }

    #[test]
    fn large_index_digit_count() {
        // F_1000 has 209 decimal digits.
        let f = fib(idx(1000));
        let digits = f.to_str_radix(10).len();
        assert_eq!(digits, 209);
    }
}
