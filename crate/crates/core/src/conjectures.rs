//! Per-`n` exact verification of the two Stoneham digit-sum identities.
//!
//! FC1: base-4 digits `d_k` of `α_{2,3}`; over
//! `k ∈ [(3^{n+1}+3)/2, (3^{n+1}+3)/2 + 3^n − 1]` the sum of `i^{d_k}` is `−i`
//! for odd `n` and `−1` for even `n`, and the window repeats three times.
//!
//! FC2: base-3 digits `a_k` of `α_{3,5}`. As printed, the sum of
//! `(e^{πi/3})^{a_k}` over `4·5^n + 1` terms starting at `1 + 5^{n+1}` is claimed
//! to equal `(−1)^n e^{πi/3}`. That reading fails already at `n = 0`. The
//! corrected reading sums `ζ₃^{a_k}` over exactly one period
//! `k ∈ [5^{n+1} + 1, 5^{n+1} + 4·5^n]` and expects `(−1)^n ζ₃`. Both are
//! available; the five-fold repetition is the same in both.

use std::fmt;

use crate::census::{
    census_closed_form, count_in_class, exp_sum, exp_sum_census, orbit_census, residue_for_digit,
    CongruenceSpec, CyclotomicInt, DigitCensus,
};
use crate::error::{Error, Result};
use crate::radix_core::arith::pow_mod;
use crate::radix_core::Digit;
use crate::stoneham::{digit_stream, RadixMode, StonehamSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conjecture {
    Fc1,
    Fc2,
}

impl Conjecture {
    pub fn label(self) -> &'static str {
        match self {
            Conjecture::Fc1 => "fc1",
            Conjecture::Fc2 => "fc2",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The statement as printed.
    Literal,
    /// The statement consistent with its proof.
    Corrected,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Literal => "literal",
            Mode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub n: u32,
    pub mode: Mode,
    pub sum: CyclotomicInt,
    pub expected: CyclotomicInt,
    pub part_i_pass: bool,
    pub part_ii_pass: bool,
    /// Summation range, 1-based and inclusive.
    pub range: (u64, u64),
    /// Census of the digits in `range`.
    pub census: DigitCensus,
    /// Digits agree with the independently computed residue-class census.
    pub cross_check_pass: bool,
    /// First `k` where the repetition in part (ii) breaks.
    pub first_mismatch: Option<u64>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.part_i_pass && self.part_ii_pass && self.cross_check_pass
    }
}

fn pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e)
        .ok_or_else(|| Error::TooLarge(format!("{base}^{e}")))
}

/// First `k` in `range` with `digits[k] != digits[k + t·shift]` for some
/// `t ∈ 1..=copies`. `digits` is 0-based, positions are 1-based.
fn first_repeat_mismatch(
    digits: &[Digit],
    range: (u64, u64),
    shift: u64,
    copies: u64,
) -> Option<u64> {
    let at = |k: u64| digits[(k - 1) as usize];
    (range.0..=range.1).find(|&k| (1..=copies).any(|t| at(k) != at(k + t * shift)))
}

fn window(digits: &[Digit], range: (u64, u64)) -> &[Digit] {
    &digits[(range.0 - 1) as usize..range.1 as usize]
}

pub fn verify_fc1(n: u32) -> Result<ConjectureReport> {
    let block = pow(3, n)?;
    let start = (pow(3, n + 1)? + 3) / 2;
    let range = (start, start + block - 1);
    let spec = StonehamSpec::new(2, 3)?;
    let digits = digit_stream(&spec, RadixMode::Squared, range.1 + 2 * block)?.digits;
    let summed = window(&digits, range);

    let sum = exp_sum(summed, 4)?;
    let expected = if n % 2 == 1 {
        -CyclotomicInt::zeta_pow(4, 1)?
    } else {
        -CyclotomicInt::one(4)?
    };
    let first_mismatch = first_repeat_mismatch(&digits, range, block, 2);
    let census = DigitCensus::from_digits(4, summed)?;
    let orbit = orbit_census(8, 3, n + 1, 4)?;
    let cross_check_pass = census == orbit && exp_sum_census(&orbit, 4)? == sum;

    Ok(ConjectureReport {
        conjecture: Conjecture::Fc1,
        n,
        mode: Mode::Literal,
        part_i_pass: sum == expected,
        part_ii_pass: first_mismatch.is_none(),
        sum,
        expected,
        range,
        census,
        cross_check_pass,
        first_mismatch,
    })
}

pub fn verify_fc2(n: u32, mode: Mode) -> Result<ConjectureReport> {
    let block = 4 * pow(5, n)?;
    let level_start = pow(5, n + 1)? + 1;
    let period = (level_start, level_start + block - 1);
    let (range, root_order) = match mode {
        Mode::Corrected => (period, 3),
        Mode::Literal => ((level_start, level_start + block), 6),
    };
    let spec = StonehamSpec::new(3, 5)?;
    let digits = digit_stream(&spec, RadixMode::Base, period.1 + 4 * block)?.digits;
    let summed = window(&digits, range);

    let sum = exp_sum(summed, root_order)?;
    let zeta = CyclotomicInt::zeta_pow(root_order, 1)?;
    let expected = if n % 2 == 1 { -zeta } else { zeta };
    let first_mismatch = first_repeat_mismatch(&digits, period, block, 4);
    let census = DigitCensus::from_digits(3, summed)?;
    let period_census = DigitCensus::from_digits(3, window(&digits, period))?;
    let closed = census_closed_form(5, n + 1, 3)?;
    let cross_check_pass = period_census == closed
        && (mode == Mode::Literal || exp_sum_census(&closed, root_order)? == sum);

    Ok(ConjectureReport {
        conjecture: Conjecture::Fc2,
        n,
        mode,
        part_i_pass: sum == expected,
        part_ii_pass: first_mismatch.is_none(),
        sum,
        expected,
        range,
        census,
        cross_check_pass,
        first_mismatch,
    })
}

/// `g^n mod modulus` for `n = 0..=n_max`, indexed by `n`. For `(5, 15)` and
/// `(3, 12)` the alternating pattern for `n ≥ 1` is asserted.
pub fn power_residue_cases(g: u64, modulus: u64, n_max: u32) -> Result<Vec<u64>> {
    if modulus == 0 {
        return Err(Error::OutOfRange("modulus must be positive".into()));
    }
    let table: Vec<u64> = (0..=n_max).map(|n| pow_mod(g, n as u64, modulus)).collect();
    let pattern = match (g, modulus) {
        (5, 15) => Some((5, 10)),
        (3, 12) => Some((3, 9)),
        _ => None,
    };
    if let Some((odd, even)) = pattern {
        for (n, &r) in table.iter().enumerate().skip(1) {
            let want = if n % 2 == 1 { odd } else { even };
            if r != want {
                return Err(Error::InvariantViolated(format!(
                    "{g}^{n} ≡ {r} (mod {modulus}), expected {want}"
                )));
            }
        }
    }
    Ok(table)
}

fn agree(what: &str, n: u32, a: &DigitCensus, b: &DigitCensus) -> Result<()> {
    if a != b {
        return Err(Error::InvariantViolated(format!(
            "{what} census mismatch at n={n}: {a:?} vs {b:?}"
        )));
    }
    Ok(())
}

/// Digit census of `8/3^n` in base 4 from the parity-case formulas, checked
/// against the residue-class count and the remainder orbit.
pub fn fc1_census_cases(n: u32) -> Result<DigitCensus> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let x = pow(3, n)?;
    let f = x / 12;
    let formula = if n % 2 == 1 {
        [f, f, f + 1, f]
    } else {
        [f + 1, f, f + 1, f + 1]
    };
    let formula = DigitCensus::from_counts(4, (0..4).zip(formula))?;

    let mut by_class = Vec::with_capacity(4);
    for d in 0..4 {
        let class = residue_for_digit(d, x, 4)?;
        // the orbit of 8 under ×4 is exactly the residues ≡ 2 (mod 3)
        let spec = CongruenceSpec::new(x, 4, class).with_residues(3, [2]);
        by_class.push((d, count_in_class(&spec)?));
    }
    agree(
        "fc1 class-count",
        n,
        &formula,
        &DigitCensus::from_counts(4, by_class)?,
    )?;
    agree("fc1 orbit", n, &formula, &orbit_census(8, 3, n, 4)?)?;
    Ok(formula)
}

/// Digit census of `1/5^n` in base 3 from the parity-case formulas, checked
/// against the closed-form census.
pub fn fc2_census_cases(n: u32) -> Result<DigitCensus> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let f = pow(5, n)? / 15;
    let formula = if n % 2 == 1 {
        [4 * f + 1, 4 * f + 2, 4 * f + 1]
    } else {
        [4 * f + 3, 4 * f + 2, 4 * f + 3]
    };
    let formula = DigitCensus::from_counts(3, (0..3).zip(formula))?;
    agree(
        "fc2 closed-form",
        n,
        &formula,
        &census_closed_form(5, n, 3)?,
    )?;
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: u32, c: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_i64s(order, c).unwrap()
    }

    #[test]
    fn fc1_small_cases() {
        let r = verify_fc1(0).unwrap();
        assert_eq!(r.range, (3, 3));
        assert_eq!(r.sum, z(4, &[-1]));
        assert!(r.passed());
        let r = verify_fc1(1).unwrap();
        assert_eq!(r.range, (6, 8));
        assert_eq!(r.sum, z(4, &[0, -1]));
        assert!(r.passed());
    }

    #[test]
    fn fc2_small_cases() {
        let r = verify_fc2(0, Mode::Corrected).unwrap();
        assert_eq!(r.range, (6, 9));
        assert_eq!(r.sum, z(3, &[0, 1]));
        assert!(r.passed());
        let r = verify_fc2(1, Mode::Corrected).unwrap();
        assert_eq!(
            r.census,
            DigitCensus::from_counts(3, [(0, 7), (1, 6), (2, 7)]).unwrap()
        );
        assert_eq!(r.sum, z(3, &[0, -1]));
        assert!(r.passed());
    }

    #[test]
    fn fc2_literal_reading_fails_at_zero() {
        let r = verify_fc2(0, Mode::Literal).unwrap();
        assert_eq!(r.range, (6, 10));
        assert_eq!(r.sum, z(6, &[1, 3]));
        assert_eq!(r.expected, z(6, &[0, 1]));
        assert!(!r.part_i_pass);
        assert!(r.part_ii_pass && r.cross_check_pass);
    }

    #[test]
    fn residue_tables() {
        assert_eq!(
            power_residue_cases(5, 15, 6).unwrap()[1..],
            [5, 10, 5, 10, 5, 10]
        );
        assert_eq!(
            power_residue_cases(3, 12, 6).unwrap()[1..],
            [3, 9, 3, 9, 3, 9]
        );
        assert_eq!(power_residue_cases(7, 10, 0).unwrap(), [1]);
        assert_eq!(power_residue_cases(5, 15, 40).unwrap().len(), 41);
    }

    #[test]
    fn census_case_formulas() {
        let fc1 = fc1_census_cases(2).unwrap();
        assert_eq!(
            (0..4).map(|d| fc1.count(d)).collect::<Vec<_>>(),
            [1, 0, 1, 1]
        );
        assert_eq!(
            fc2_census_cases(1).unwrap(),
            DigitCensus::from_counts(3, [(0, 1), (1, 2), (2, 1)]).unwrap()
        );
        assert_eq!(
            fc2_census_cases(2).unwrap(),
            DigitCensus::from_counts(3, [(0, 7), (1, 6), (2, 7)]).unwrap()
        );
        for n in 1..=12 {
            fc1_census_cases(n).unwrap();
        }
        for n in 1..=9 {
            fc2_census_cases(n).unwrap();
        }
    }
}
