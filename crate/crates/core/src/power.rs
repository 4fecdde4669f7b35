//! Integer roots, perfect-power classification and q-adic valuation.
//!
//! Classification reports the *maximal* exponent: `16` is `2^4`, never
//! `4^2`. Every prime `p` with `x = y^p` solvable divides that exponent.
//!
//! Candidate exponents are the primes `p ≤ log2 x`. Before an exact root is
//! attempted, `x` must be a `p`-th power residue modulo up to
//! [`AUX_PRIMES_PER_EXPONENT`] primes `q ≡ 1 (mod p)` below
//! [`AUX_PRIME_LIMIT`]. Modulo such a `q` only `(q - 1)/p + 1` residues are
//! `p`-th powers, so almost every non-power is rejected after one or two
//! table lookups.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::sequence::WideInt;

pub const AUX_PRIMES_PER_EXPONENT: usize = 12;
pub const AUX_PRIME_LIMIT: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    #[error("root degree must be at least 1")]
    ZeroDegree,
    #[error("input must be nonnegative")]
    NegativeInput,
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(u32),
}

/// `x = base^max_exponent` with `max_exponent` as large as possible.
///
/// For `x ∈ {0, 1}` the record is degenerate: `base = x`, `max_exponent = 1`,
/// and every exponent is admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerRepr {
    pub base: WideInt,
    pub max_exponent: u32,
    pub degenerate: bool,
}

impl PowerRepr {
    fn degenerate(value: u8) -> Self {
        PowerRepr {
            base: value.into(),
            max_exponent: 1,
            degenerate: true,
        }
    }

    /// True for `y^e` with `y ≥ 2`, `e ≥ 2`.
    pub fn is_perfect_power(&self) -> bool {
        !self.degenerate && self.max_exponent >= 2
    }

    /// Whether `x = y^p` has an integer solution `y ≥ 0`.
    pub fn admits_exponent(&self, p: u32) -> bool {
        p >= 2 && (self.degenerate || self.max_exponent.is_multiple_of(p))
    }
}

/// Result of removing every factor `q` from `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrippedPower {
    pub q: u32,
    pub s: u64,
    pub core: WideInt,
    pub core_repr: PowerRepr,
}

impl StrippedPower {
    /// `x = q^s · y^b` is solvable with `b ≥ 2`.
    pub fn admits_power(&self) -> bool {
        self.core.is_one() || self.core_repr.is_perfect_power()
    }
}

/// `⌊x^{1/k}⌋` for nonnegative `x`, with an exactness flag.
pub fn iroot(x: &WideInt, k: u32) -> Result<(WideInt, bool), PowerError> {
    if k == 0 {
        return Err(PowerError::ZeroDegree);
    }
    let x = x.to_biguint().ok_or(PowerError::NegativeInput)?;
    let root = iroot_floor(&x, k);
    let exact = Pow::pow(&root, k) == x;
    Ok((root.into(), exact))
}

/// Integer Newton iteration from an overestimate; stops at the floor root.
pub(crate) fn iroot_floor(x: &BigUint, k: u32) -> BigUint {
    debug_assert!(k >= 1);
    if k == 1 || x < &BigUint::from(2u8) {
        return x.clone();
    }
    let bits = x.bits();
    if u64::from(k) >= bits {
        // 2^k > x ≥ 2
        return BigUint::one();
    }
    let k_big = BigUint::from(k);
    let k_minus_one = BigUint::from(k - 1);
    let mut r = BigUint::one() << bits.div_ceil(u64::from(k));
    loop {
        let t = (&k_minus_one * &r + x / Pow::pow(&r, k - 1)) / &k_big;
        if t >= r {
            return r;
        }
        r = t;
    }
}

fn is_small_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn primitive_root(q: u32) -> u32 {
    let order = q - 1;
    let mut factors = Vec::new();
    let mut rest = order;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    (2..q)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| pow_mod(g.into(), (order / f).into(), q.into()) != 1)
        })
        .unwrap_or(1)
}

/// Membership bitmap of the `p`-th power residues modulo one prime `q`.
#[derive(Debug, Clone)]
struct ResidueSet {
    modulus: u32,
    bits: Vec<u64>,
}

impl ResidueSet {
    fn new(p: u32, q: u32) -> Self {
        let mut bits = vec![0u64; (q as usize).div_ceil(64)];
        let mut set = |r: u64| bits[(r / 64) as usize] |= 1 << (r % 64);
        set(0);
        // The p-th powers form the subgroup generated by g^p.
        let step = pow_mod(primitive_root(q).into(), p.into(), q.into());
        let mut r = 1u64;
        for _ in 0..(q - 1) / p {
            set(r);
            r = r * step % u64::from(q);
        }
        ResidueSet { modulus: q, bits }
    }

    #[inline]
    fn contains(&self, residue: u32) -> bool {
        self.bits[(residue / 64) as usize] >> (residue % 64) & 1 == 1
    }
}

#[derive(Debug, Clone)]
struct ExponentFilter {
    exponent: u32,
    residues: Vec<ResidueSet>,
}

impl ExponentFilter {
    fn new(p: u32) -> Self {
        let residues = (1u32..)
            .map_while(|k| {
                k.checked_mul(p)
                    .map(|kp| kp + 1)
                    .filter(|&q| q < AUX_PRIME_LIMIT)
            })
            .filter(|&q| is_small_prime(q))
            .take(AUX_PRIMES_PER_EXPONENT)
            .map(|q| ResidueSet::new(p, q))
            .collect();
        ExponentFilter {
            exponent: p,
            residues,
        }
    }

    fn admits(&self, limbs: &[u64]) -> bool {
        self.residues
            .iter()
            .all(|set| set.contains(residue(limbs, set.modulus)))
    }
}

fn residue(limbs: &[u64], modulus: u32) -> u32 {
    let m = u128::from(modulus);
    let r = limbs
        .iter()
        .rev()
        .fold(0u128, |acc, &limb| ((acc << 64) | u128::from(limb)) % m);
    r as u32
}

/// Perfect-power classifier with precomputed residue filters.
///
/// Tables are immutable after construction; one instance can be shared by
/// any number of threads.
#[derive(Debug, Clone)]
pub struct PowerClassifier {
    max_bits: u64,
    filters: Vec<ExponentFilter>,
}

impl PowerClassifier {
    /// Builds filters for every prime exponent that can occur for inputs of
    /// at most `max_bits` bits.
    pub fn new(max_bits: u64) -> Self {
        let top = u32::try_from(max_bits.saturating_sub(1)).unwrap_or(u32::MAX);
        let filters = (2..=top)
            .filter(|&p| is_small_prime(p))
            .map(ExponentFilter::new)
            .collect();
        PowerClassifier { max_bits, filters }
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    fn filter_for(&self, p: u32) -> Option<&ExponentFilter> {
        self.filters
            .binary_search_by_key(&p, |f| f.exponent)
            .ok()
            .map(|i| &self.filters[i])
    }

    /// Whether the residue filters for prime exponent `p` let `x` through.
    /// A `false` answer proves `x` is not a `p`-th power.
    pub fn prefilter_admits(&self, x: &BigUint, p: u32) -> bool {
        let limbs: Vec<u64> = x.iter_u64_digits().collect();
        match self.filter_for(p) {
            Some(filter) => filter.admits(&limbs),
            None => ExponentFilter::new(p).admits(&limbs),
        }
    }

    /// Classifies a nonnegative value.
    pub fn perfect_power(&self, x: &WideInt) -> Result<PowerRepr, PowerError> {
        let x = x.to_biguint().ok_or(PowerError::NegativeInput)?;
        Ok(self.classify_unsigned(&x))
    }

    pub fn classify_unsigned(&self, x: &BigUint) -> PowerRepr {
        if x.is_zero() {
            return PowerRepr::degenerate(0);
        }
        if x.is_one() {
            return PowerRepr::degenerate(1);
        }
        let mut current = x.clone();
        let mut limbs: Vec<u64> = current.iter_u64_digits().collect();
        let mut exponent = 1u32;
        let mut extra: Option<ExponentFilter> = None;
        let mut p = 2u32;
        // Invariant: current is not a q-th power for any prime q < p.
        while u64::from(p) < current.bits() {
            let admits = match self.filter_for(p) {
                Some(filter) => filter.admits(&limbs),
                None => {
                    let filter = match extra.take() {
                        Some(f) if f.exponent == p => f,
                        _ => ExponentFilter::new(p),
                    };
                    let ok = filter.admits(&limbs);
                    extra = Some(filter);
                    ok
                }
            };
            if admits {
                let root = iroot_floor(&current, p);
                if Pow::pow(&root, p) == current {
                    current = root;
                    limbs = current.iter_u64_digits().collect();
                    exponent *= p;
                    continue;
                }
            }
            p = next_prime(p);
        }
        PowerRepr {
            base: current.into(),
            max_exponent: exponent,
            degenerate: false,
        }
    }

    pub fn stripped_power_test(&self, x: &WideInt, q: u32) -> Result<StrippedPower, PowerError> {
        let (s, core) = padic_val(x, q)?;
        let core_repr = self.perfect_power(&core)?;
        Ok(StrippedPower {
            q,
            s,
            core,
            core_repr,
        })
    }
}

fn next_prime(p: u32) -> u32 {
    let mut c = p + 1;
    while !is_small_prime(c) {
        c += 1;
    }
    c
}

/// Maximal-exponent classification of a nonnegative value.
///
/// Builds filter tables sized for `x`; scans that classify many values
/// should hold one [`PowerClassifier`] instead.
pub fn perfect_power(x: &WideInt) -> Result<PowerRepr, PowerError> {
    if x.is_negative() {
        return Err(PowerError::NegativeInput);
    }
    PowerClassifier::new(x.bits()).perfect_power(x)
}

/// `x = q^s · rest` with `q ∤ rest`, for `x ≥ 1` and prime `q`.
pub fn padic_val(x: &WideInt, q: u32) -> Result<(u64, WideInt), PowerError> {
    if !is_small_prime(q) {
        return Err(PowerError::NotPrime(q));
    }
    if x.is_negative() {
        return Err(PowerError::NegativeInput);
    }
    if x.is_zero() {
        return Err(PowerError::ZeroValuation);
    }
    if q == 2 {
        let s = x.trailing_zeros().unwrap_or(0);
        return Ok((s, x >> s));
    }
    let divisor = BigInt::from(q);
    let mut rest = x.clone();
    let mut s = 0u64;
    loop {
        let (quot, rem) = rest.div_rem(&divisor);
        if !rem.is_zero() {
            return Ok((s, rest));
        }
        rest = quot;
        s += 1;
    }
}

/// Strips `q^s` from `x` and classifies the remaining core.
pub fn stripped_power_test(x: &WideInt, q: u32) -> Result<StrippedPower, PowerError> {
    let (s, core) = padic_val(x, q)?;
    let core_repr = perfect_power(&core)?;
    Ok(StrippedPower {
        q,
        s,
        core,
        core_repr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: u64) -> WideInt {
        WideInt::from(x)
    }

    fn repr(base: u64, e: u32) -> PowerRepr {
        PowerRepr {
            base: w(base),
            max_exponent: e,
            degenerate: false,
        }
    }

    #[test]
    fn iroot_examples() {
        // F_36 + F_12 = 14930352 + 144
        assert_eq!(iroot(&w(14_930_352 + 144), 2).unwrap(), (w(3864), true));
        assert_eq!(iroot(&w(1000), 3).unwrap(), (w(10), true));
        assert_eq!(iroot(&w(26), 3).unwrap(), (w(2), false));
    }

    #[test]
    fn iroot_errors() {
        assert_eq!(iroot(&w(5), 0), Err(PowerError::ZeroDegree));
        assert_eq!(iroot(&WideInt::from(-8), 3), Err(PowerError::NegativeInput));
    }

    #[test]
    fn iroot_small_edges() {
        assert_eq!(iroot(&w(0), 5).unwrap(), (w(0), true));
        assert_eq!(iroot(&w(1), 5).unwrap(), (w(1), true));
        assert_eq!(iroot(&w(7), 1).unwrap(), (w(7), true));
        assert_eq!(iroot(&w(1 << 40), 40).unwrap(), (w(2), true));
        assert_eq!(iroot(&w((1 << 40) - 1), 40).unwrap(), (w(1), false));
        assert_eq!(iroot(&w(3), 200).unwrap(), (w(1), false));
    }

    #[test]
    fn perfect_power_examples() {
        assert_eq!(perfect_power(&w(16)).unwrap(), repr(2, 4));
        assert_eq!(perfect_power(&w(81)).unwrap(), repr(3, 4));
        assert_eq!(perfect_power(&w(12)).unwrap(), repr(12, 1));
        let zero = perfect_power(&w(0)).unwrap();
        assert!(zero.degenerate);
        assert_eq!(zero.base, w(0));
        assert_eq!(zero.max_exponent, 1);
        assert!(perfect_power(&w(1)).unwrap().degenerate);
        assert_eq!(
            perfect_power(&WideInt::from(-4)),
            Err(PowerError::NegativeInput)
        );
    }

    #[test]
    fn exponents_compose() {
        assert_eq!(perfect_power(&w(1 << 60)).unwrap(), repr(2, 60));
        assert_eq!(perfect_power(&w(6u64.pow(15))).unwrap(), repr(6, 15));
        assert_eq!(perfect_power(&w(3864 * 3864)).unwrap(), repr(3864, 2));
        let r = perfect_power(&w(343)).unwrap();
        assert!(r.admits_exponent(3) && !r.admits_exponent(2));
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_val(&w(144), 2).unwrap(), (4, w(9)));
        assert_eq!(padic_val(&w(9), 2).unwrap(), (0, w(9)));
        assert_eq!(padic_val(&w(5778), 107).unwrap(), (1, w(54)));
        assert_eq!(padic_val(&w(0), 3), Err(PowerError::ZeroValuation));
        assert_eq!(padic_val(&w(12), 4), Err(PowerError::NotPrime(4)));
    }

    #[test]
    fn stripped_examples() {
        let a = stripped_power_test(&w(144), 2).unwrap();
        assert_eq!(
            (a.s, a.core.clone(), a.core_repr.clone()),
            (4, w(9), repr(3, 2))
        );
        assert!(a.admits_power());

        let b = stripped_power_test(&w(8), 2).unwrap();
        assert_eq!((b.s, b.core.clone()), (3, w(1)));
        assert!(b.admits_power());

        let c = stripped_power_test(&w(144), 3).unwrap();
        assert_eq!(
            (c.s, c.core.clone(), c.core_repr.clone()),
            (2, w(16), repr(2, 4))
        );

        assert!(!stripped_power_test(&w(2 * 3 * 5), 2)
            .unwrap()
            .admits_power());
    }

    #[test]
    fn residue_sets_have_expected_size() {
        for (p, q) in [(2u32, 7u32), (3, 7), (5, 11), (3, 31)] {
            let set = ResidueSet::new(p, q);
            let count = (0..q).filter(|&r| set.contains(r)).count() as u32;
            assert_eq!(count, (q - 1) / p + 1, "p={p} q={q}");
            for r in 0..u64::from(q) {
                assert!(set.contains(pow_mod(r, p.into(), q.into()) as u32));
            }
        }
    }

    #[test]
    fn aux_primes_are_congruent_to_one() {
        for p in [2u32, 3, 5, 97, 691] {
            let f = ExponentFilter::new(p);
            assert!(!f.residues.is_empty());
            assert!(f.residues.len() <= AUX_PRIMES_PER_EXPONENT);
            for set in &f.residues {
                assert_eq!(set.modulus % p, 1);
                assert!(is_small_prime(set.modulus) && set.modulus < AUX_PRIME_LIMIT);
            }
        }
    }

    #[test]
    fn classifier_handles_inputs_larger_than_its_tables() {
        let small = PowerClassifier::new(8);
        let x = BigUint::from(7u8).pow(40u32);
        let r = small.classify_unsigned(&x);
        assert_eq!((r.base, r.max_exponent), (w(7), 40));
    }
}
