//! Exact rational scalars for densities and homomorphism counts.

use alloc::string::String;
use alloc::format;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

/// Machine-word rational, enough for all density computations.
pub type Rat = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

/// Renders as `p/q` (or just `p` for integers), the CLI-facing form.
pub fn rat_string(r: Rat) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn big_rational(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for big rationals.
pub fn big_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::new(BigInt::from(1), BigInt::from(1));
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
