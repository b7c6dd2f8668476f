use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A nonnegative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedFraction(Ratio<BigUint>);

impl ReducedFraction {
    /// Reduces `numerator / denominator`; a zero denominator is rejected.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::OutOfRange("denominator must be positive".into()));
        }
        Ok(Self(Ratio::new(numerator, denominator)))
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Result<Self> {
        Self::new(numerator.into(), denominator.into())
    }

    pub fn numerator(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    /// True when `0 < self < 1`.
    pub fn is_proper(&self) -> bool {
        !self.0.numer().is_zero() && self.0.numer() < self.0.denom()
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{self} is not in (0, 1)")))
        }
    }
}

impl From<Ratio<BigUint>> for ReducedFraction {
    fn from(r: Ratio<BigUint>) -> Self {
        Self(r)
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let f = ReducedFraction::from_u64(192 + 1, 4608).unwrap();
        assert_eq!(f.to_string(), "193/4608");
        let g = ReducedFraction::from_u64(6, 24).unwrap();
        assert_eq!(g.numerator(), &BigUint::from(1u32));
        assert_eq!(g.denominator(), &BigUint::from(4u32));
        assert!(ReducedFraction::from_u64(1, 0).is_err());
        assert!(!ReducedFraction::from_u64(0, 3).unwrap().is_proper());
        assert!(!ReducedFraction::from_u64(3, 3).unwrap().is_proper());
    }
}
