//! Digits of the Stoneham numbers `α_{b,c} = Σ_{n≥1} 1 / (c^n · b^{c^n})`.
//!
//! Two routes produce the same digits. The oracle long-divides a partial sum
//! far enough out that its leading digits are final. The fast path, available
//! when `c` is prime, tiles the expansion with the periods of
//! `((c^m − 1)/(c − 1)) / c^m`, each repeated across positions
//! `c^m + 1 ..= c^{m+1}`.

mod blocks;
mod stream;

pub use blocks::{
    block_decomposition, block_word, block_word_sq, check_pairing, verify_block_structure,
    BlockDecomposition, BlockLevel, BlockMismatch, BlockReport,
};
pub use stream::{digit_stream, DigitStream, StreamOutput, StreamPath};

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::radix_core::arith::gcd_u64;
use crate::radix_core::{Digit, LongDivision, ReducedFraction};

/// Largest `c^m` accepted when building partial sums (it is the exponent of
/// `b` in the denominator).
pub const MAX_PARTIAL_SUM_EXPONENT: u64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StonehamSpec {
    b: u32,
    c: u32,
}

impl StonehamSpec {
    pub fn new(b: u32, c: u32) -> Result<Self> {
        if b < 2 || c < 2 {
            return Err(Error::OutOfRange(format!("need b, c ≥ 2, got b={b} c={c}")));
        }
        if gcd_u64(b as u64, c as u64) != 1 {
            return Err(Error::Precondition(format!(
                "b={b} and c={c} are not coprime"
            )));
        }
        Ok(Self { b, c })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }
}

impl fmt::Display for StonehamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α({},{})", self.b, self.c)
    }
}

/// Digit alphabet of a stream: base `b`, or base `b²` (pairs of base-`b` digits).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadixMode {
    Base,
    Squared,
}

impl RadixMode {
    pub fn radix(self, spec: &StonehamSpec) -> Result<u32> {
        match self {
            RadixMode::Base => Ok(spec.b),
            RadixMode::Squared => spec
                .b
                .checked_mul(spec.b)
                .ok_or_else(|| Error::TooLarge(format!("{}²", spec.b))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RadixMode::Base => "b",
            RadixMode::Squared => "b2",
        }
    }
}

fn checked_pow(c: u32, e: u32) -> Result<u64> {
    (c as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::TooLarge(format!("{c}^{e}")))
}

/// `Σ_{n=1}^{m} 1 / (c^n b^{c^n})` in lowest terms.
pub fn partial_sum(spec: &StonehamSpec, m: u32) -> Result<ReducedFraction> {
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let top = checked_pow(spec.c, m)?;
    if top > MAX_PARTIAL_SUM_EXPONENT {
        return Err(Error::TooLarge(format!("partial sum with exponent {top}")));
    }
    let (b, c) = (BigUint::from(spec.b), BigUint::from(spec.c));
    // common denominator c^m · b^{c^m}
    let mut numerator = BigUint::from(0u32);
    for n in 1..=m {
        let cn = checked_pow(spec.c, n)?;
        numerator += c.pow(m - n) * b.pow((top - cn) as u32);
    }
    let denominator = c.pow(m) * b.pow(top as u32);
    let f = ReducedFraction::new(numerator, denominator)?;
    let bc = BigUint::from(spec.b as u64 * spec.c as u64);
    if !num_integer::Integer::gcd(f.numerator(), &bc).is_one() {
        return Err(Error::InvariantViolated(format!(
            "numerator of {f} shares a factor with bc"
        )));
    }
    Ok(f)
}

/// Last position whose digit, computed from the `m`-th partial sum, is final:
/// `c^{m+1}` in base `b`, `⌈c^{m+1}/2⌉` in base `b²`.
pub fn stability_index(spec: &StonehamSpec, m: u32, mode: RadixMode) -> Result<u64> {
    let full = checked_pow(spec.c, m + 1)?;
    Ok(match mode {
        RadixMode::Base => full,
        RadixMode::Squared => full.div_ceil(2),
    })
}

/// Positions of the `m`-th partial sum that are final for every `b`: the
/// base-`b²` digit `k` is built from base-`b` places `2k − 1` and `2k`, so only
/// `⌊c^{m+1}/2⌋` of them are covered by the base-`b` bound. The ceiling in
/// [`stability_index`] can fail when the next block starts with a nonzero
/// digit, e.g. `α_{5,3}` at `m = 1`.
pub fn oracle_horizon(spec: &StonehamSpec, m: u32, mode: RadixMode) -> Result<u64> {
    let full = checked_pow(spec.c, m + 1)?;
    Ok(match mode {
        RadixMode::Base => full,
        RadixMode::Squared => full / 2,
    })
}

/// Smallest `m ≥ 1` whose partial sum fixes the first `count` digits.
pub fn level_for(spec: &StonehamSpec, mode: RadixMode, count: u64) -> Result<u32> {
    let mut m = 1;
    while oracle_horizon(spec, m, mode)? < count {
        m += 1;
    }
    Ok(m)
}

/// Checks `α_{b,c} < b^{-c}`, which forces the first `c` base-`b` digits to be
/// zero. Uses `α < 1/(c·b^c) + b^{-c²}` and a lower bound on `c² − c`.
pub fn zero_prefix_bound_holds(spec: &StonehamSpec) -> bool {
    let c = spec.c as u64;
    let gap = (c * (c - 1)).min(64) as u32;
    let bound = Ratio::new(BigUint::one(), BigUint::from(c))
        + Ratio::new(BigUint::one(), BigUint::from(spec.b).pow(gap));
    bound < Ratio::from_integer(BigUint::one())
}

/// First `count` digits of the `m`-th partial sum.
pub fn partial_sum_digits(
    spec: &StonehamSpec,
    m: u32,
    mode: RadixMode,
    count: u64,
) -> Result<Vec<Digit>> {
    let f = partial_sum(spec, m)?;
    Ok(LongDivision::new(&f, mode.radix(spec)?)?
        .take(count as usize)
        .collect())
}

/// Compares the digits of partial sums `m` and `m + 1` through the stability
/// index of `m`; returns the first differing position, if any.
pub fn prefix_agreement(spec: &StonehamSpec, m: u32, mode: RadixMode) -> Result<Option<u64>> {
    let upto = stability_index(spec, m, mode)?;
    let a = partial_sum_digits(spec, m, mode, upto)?;
    let b = partial_sum_digits(spec, m + 1, mode, upto)?;
    Ok(a.iter()
        .zip(&b)
        .position(|(x, y)| x != y)
        .map(|i| i as u64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(b: u32, c: u32) -> StonehamSpec {
        StonehamSpec::new(b, c).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(StonehamSpec::new(2, 4).is_err());
        assert!(StonehamSpec::new(1, 3).is_err());
        assert!(StonehamSpec::new(6, 3).is_err());
        assert!(StonehamSpec::new(10, 3).is_ok());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(&spec(2, 3), 1).unwrap().to_string(), "1/24");
        assert_eq!(partial_sum(&spec(2, 3), 2).unwrap().to_string(), "193/4608");
        assert_eq!(partial_sum(&spec(3, 5), 1).unwrap().to_string(), "1/1215");
        assert!(partial_sum(&spec(3, 5), 0).is_err());
    }

    #[test]
    fn stability_examples() {
        assert_eq!(stability_index(&spec(2, 3), 1, RadixMode::Base), Ok(9));
        assert_eq!(stability_index(&spec(2, 3), 2, RadixMode::Squared), Ok(14));
        assert_eq!(stability_index(&spec(3, 5), 1, RadixMode::Base), Ok(25));
        assert_eq!(level_for(&spec(3, 5), RadixMode::Base, 10_000), Ok(5));
        assert_eq!(level_for(&spec(3, 5), RadixMode::Base, 1), Ok(1));
    }

    #[test]
    fn ceiling_bound_needs_a_leading_zero_block() {
        // the base-25 digit at ⌈27/2⌉ = 14 straddles place 28, which the next
        // term of the series changes
        assert_eq!(
            prefix_agreement(&spec(5, 3), 1, RadixMode::Squared),
            Ok(Some(5))
        );
        assert_eq!(oracle_horizon(&spec(5, 3), 1, RadixMode::Squared), Ok(4));
    }

    #[test]
    fn oracle_digits_are_final_in_both_modes() {
        for (b, c) in [(5, 3), (7, 3), (4, 3), (2, 3)] {
            let s = spec(b, c);
            for mode in [RadixMode::Base, RadixMode::Squared] {
                for m in 1..=3 {
                    let upto = oracle_horizon(&s, m, mode).unwrap();
                    let a = partial_sum_digits(&s, m, mode, upto).unwrap();
                    let b = partial_sum_digits(&s, m + 1, mode, upto).unwrap();
                    assert_eq!(a, b, "{s} {mode:?} m={m}");
                }
            }
        }
    }

    #[test]
    fn zero_prefix_bound() {
        for (b, c) in [(2, 3), (3, 2), (3, 5), (2, 5), (3, 7), (15, 2), (2, 101)] {
            assert!(zero_prefix_bound_holds(&spec(b, c)));
        }
    }

    #[test]
    fn partial_sum_prefixes_are_final() {
        for (b, c) in [(2, 3), (3, 5), (2, 5), (3, 2), (5, 6), (2, 7)] {
            let s = spec(b, c);
            for m in 1..=3 {
                for mode in [RadixMode::Base, RadixMode::Squared] {
                    assert_eq!(
                        prefix_agreement(&s, m, mode),
                        Ok(None),
                        "{s} m={m} {mode:?}"
                    );
                }
            }
        }
    }
}
