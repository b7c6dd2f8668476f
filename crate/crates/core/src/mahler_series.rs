//! Sparse truncated power series with exact rational coefficients, and the
//! functional equation `F_c(x^c) = c·F_c(x) − x^c` for
//! `F_c(x) = Σ_{n≥1} x^{c^n} / c^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Power series modulo `x^{D+1}`; absent exponents have coefficient zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    degree_bound: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl TruncatedSeries {
    pub fn zero(degree_bound: u64) -> Self {
        Self {
            degree_bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(degree_bound: u64, exponent: u64, coeff: BigRational) -> Self {
        let mut s = Self::zero(degree_bound);
        s.add_term(exponent, coeff);
        s
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn coeff(&self, exponent: u64) -> BigRational {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, exponent: u64, coeff: BigRational) {
        if exponent > self.degree_bound || coeff.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(exponent)
            .or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    /// Sum truncated to the smaller of the two degree bounds.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree_bound.min(other.degree_bound));
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.degree_bound);
        for (e, c) in self.terms() {
            out.add_term(e, c * k);
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    /// One `exponent: p/q` line per nonzero coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            writeln!(f, "{e}: {c}")?;
        }
        Ok(())
    }
}

fn rational(n: i64, d: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(n), d.clone())
}

/// `F_c(x)` through degree `D`: coefficient `1/c^n` at each `c^n ≤ D`.
pub fn f_c_series(c: u64, degree_bound: u64) -> Result<TruncatedSeries> {
    if c < 2 {
        return Err(Error::OutOfRange(format!("c = {c} must be at least 2")));
    }
    let mut s = TruncatedSeries::zero(degree_bound);
    let (mut exponent, mut c_pow) = (c, BigInt::from(c));
    while exponent <= degree_bound {
        s.add_term(exponent, rational(1, &c_pow));
        match exponent.checked_mul(c) {
            Some(next) => exponent = next,
            None => break,
        }
        c_pow *= c;
    }
    Ok(s)
}

/// `x ↦ x^c`, dropping terms beyond the degree bound.
pub fn substitute_power(s: &TruncatedSeries, c: u64) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(s.degree_bound);
    for (e, coeff) in s.terms() {
        if let Some(e) = e.checked_mul(c) {
            out.add_term(e, coeff.clone());
        }
    }
    out
}

/// `F_c(x^c) − c·F_c(x) + x^c` through degree `D`; identically zero.
pub fn functional_residual(c: u64, degree_bound: u64) -> Result<TruncatedSeries> {
    if degree_bound < c {
        return Err(Error::OutOfRange(format!(
            "degree {degree_bound} is below c = {c}"
        )));
    }
    let f = f_c_series(c, degree_bound)?;
    let lhs = substitute_power(&f, c);
    let c_f = f.scale(&BigRational::from_integer(BigInt::from(c)));
    let x_c = TruncatedSeries::monomial(degree_bound, c, BigRational::one());
    Ok(lhs.sub(&c_f).add(&x_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn series(d: u64, terms: &[(u64, i64, i64)]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(d);
        for &(e, n, den) in terms {
            s.add_term(e, q(n, den));
        }
        s
    }

    #[test]
    fn f_c_examples() {
        assert_eq!(
            f_c_series(2, 10).unwrap(),
            series(10, &[(2, 1, 2), (4, 1, 4), (8, 1, 8)])
        );
        assert!(f_c_series(3, 2).unwrap().is_zero());
        assert_eq!(
            f_c_series(5, 30).unwrap(),
            series(30, &[(5, 1, 5), (25, 1, 25)])
        );
        assert!(f_c_series(1, 30).is_err());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            substitute_power(&series(10, &[(2, 1, 2)]), 2),
            series(10, &[(4, 1, 2)])
        );
        assert_eq!(
            substitute_power(&f_c_series(2, 16).unwrap(), 2),
            series(16, &[(4, 1, 2), (8, 1, 4), (16, 1, 8)])
        );
        assert!(substitute_power(&TruncatedSeries::zero(9), 3).is_zero());
    }

    #[test]
    fn residual_examples() {
        assert!(functional_residual(2, 16).unwrap().is_zero());
        assert!(functional_residual(3, 81).unwrap().is_zero());
        assert!(functional_residual(5, 4).is_err());
        for c in [2u64, 3, 5, 7] {
            assert!(functional_residual(c, c.pow(5)).unwrap().is_zero(), "c={c}");
        }
        // large degree bounds stay sparse
        assert!(functional_residual(2, u64::MAX).unwrap().is_zero());
    }

    #[test]
    fn display_lines() {
        assert_eq!(f_c_series(2, 4).unwrap().to_string(), "2: 1/2\n4: 1/4\n");
    }

    fn sparse(d: u64) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((0..=d, -50i64..50, 1i64..20), 0..12)
            .prop_map(move |terms| series(d, &terms))
    }

    proptest! {
        #[test]
        fn series_laws(
            a in sparse(10_000), b in sparse(10_000), c in sparse(10_000),
            k in -9i64..9, power in 1u64..6,
        ) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert!(a.sub(&a).is_zero());
            let k = q(k, 1);
            prop_assert_eq!(a.add(&b).scale(&k), a.scale(&k).add(&b.scale(&k)));
            prop_assert_eq!(
                substitute_power(&a.add(&b), power),
                substitute_power(&a, power).add(&substitute_power(&b, power))
            );
            prop_assert!(a.terms().all(|(e, _)| e <= 10_000));
        }
    }
}
