//! Exact arithmetic for the equation `F_n ± F_m = y^p`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithmic
//! piece of the toolkit:
//!
//! * [`sequence`]: Fibonacci and Lucas numbers at signed indices, exact and
//!   modular, by fast doubling.
//! * [`power`]: integer roots, maximal-exponent perfect-power classification,
//!   q-adic valuations.
//! * [`identity`]: the sum-to-product factorization of `F_n ± F_m`, gcd laws
//!   for Fibonacci/Lucas pairs, the doubling and tripling identities.
//! * [`verify`]: finite-range verification engines for the classification
//!   theorems, each producing a [`verify::VerificationReport`].
//! * [`search`]: the exhaustive `0 ≤ m ≤ n ≤ B` solution search.
//!
//! Parallelism is abstracted by [`stripes::Stripes`]; this crate only ships
//! the sequential runner; the `fibsum` binary provides a threaded one.

#![no_std]

extern crate alloc;

pub mod identity;
pub mod known;
pub mod power;
pub mod search;
pub mod sequence;
pub mod stripes;
pub mod verify;

pub use identity::{
    check_doubling, check_tripling, gcd_predict, normalize_pair, sum_factorization, Branch,
    FactorizationResult, GcdKind, GcdOutcome, GcdPrediction, IdentityError, NormalizedPair,
    ParseSignError, Sign,
};
pub use power::{
    iroot, padic_val, perfect_power, stripped_power_test, PowerClassifier, PowerError, PowerRepr,
    StrippedPower,
};
pub use search::{search, Indices, Parity, SearchConfig, SearchError, SolutionRecord};
pub use sequence::{fib, fib_mod, fib_pair, lucas, lucas_mod, Index, SequenceError, WideInt};
pub use stripes::{Sequential, Stripes};
pub use verify::{
    check_107, enumerate_fnlm, theorem1_hits, verify_power_class, verify_ratio_squares,
    verify_theorem1, SeqKind, Theorem1Hit, TheoremId, Verdict, VerificationReport, VerifyError,
};
