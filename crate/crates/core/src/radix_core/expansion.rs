//! The base-`b` division recurrence `r_{j-1}·b = q_j·k + r_j`.
//!
//! Denominators sharing primes with the base are split as `k = T·U`; the first
//! `N` digits (smallest `N` with `T | b^N`) form the preperiod and the cycle is
//! then detected by waiting for the remainder after position `N` to recur.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::{is_prime, is_primitive_root, multiplicative_order, prime_power};
use super::fraction::ReducedFraction;
use crate::error::{Error, Result};

pub type Digit = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadixExpansion {
    base: u32,
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
    terminating: bool,
}

impl RadixExpansion {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    /// Minimal repeating word; empty exactly when the expansion terminates.
    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating
    }

    /// Exact value of `0.preperiod(period)*` in this base.
    pub fn value(&self) -> Ratio<BigUint> {
        let b = BigUint::from(self.base);
        let word_value = |digits: &[Digit]| {
            digits
                .iter()
                .fold(BigUint::zero(), |acc, &d| acc * &b + BigUint::from(d))
        };
        let pre_scale = b.pow(self.preperiod.len() as u32);
        let head = Ratio::new(word_value(&self.preperiod), pre_scale.clone());
        if self.period.is_empty() {
            return head;
        }
        let cycle = b.pow(self.period.len() as u32) - BigUint::one();
        head + Ratio::new(word_value(&self.period), pre_scale * cycle)
    }
}

/// Renders a digit word as `0-9a-z` characters, or comma-separated decimal
/// values for bases above 36.
pub fn render_digits(digits: &[Digit], base: u32) -> String {
    if base <= 36 {
        digits
            .iter()
            .map(|&d| char::from_digit(d, base).expect("digit below base"))
            .collect()
    } else {
        digits
            .iter()
            .map(Digit::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Splits off the part of `den` built from primes of `base`: returns
/// `(N, U)` with `N` the smallest exponent such that `T | base^N` and `U`
/// the cofactor coprime to `base`.
pub fn split_denominator(den: &BigUint, base: u32) -> (u64, BigUint) {
    let b = BigUint::from(base);
    let mut u = den.clone();
    let mut n = 0u64;
    loop {
        let g = u.gcd(&b);
        if g.is_one() {
            return (n, u);
        }
        u /= g;
        n += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodLengths {
    pub preperiod: u64,
    /// `ord_U(base)`; reported as 1 for terminating expansions (`U = 1`).
    pub period: u64,
    pub terminating: bool,
}

/// Closed-form preperiod and period lengths of `f` in `base`.
pub fn period_preperiod(f: &ReducedFraction, base: u32) -> Result<PeriodLengths> {
    check_base(base)?;
    f.require_proper()?;
    let (preperiod, u) = split_denominator(f.denominator(), base);
    if u.is_one() {
        return Ok(PeriodLengths {
            preperiod,
            period: 1,
            terminating: true,
        });
    }
    let u = u
        .to_u64()
        .ok_or_else(|| Error::TooLarge(format!("coprime cofactor of {}", f.denominator())))?;
    Ok(PeriodLengths {
        preperiod,
        period: multiplicative_order(base as u64 % u, u)?,
        terminating: false,
    })
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        return Err(Error::OutOfRange(format!("base {base} must be at least 2")));
    }
    Ok(())
}

/// Which integer representation carries the running remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// `u64` remainders with `u128` products; only valid when the
    /// denominator fits a word.
    Word,
    Big,
}

trait DivisionCell: Clone + PartialEq {
    fn step(&mut self, base: u32) -> Digit;
    fn is_zero(&self) -> bool;
}

#[derive(Clone, PartialEq)]
struct WordCell {
    r: u64,
    k: u64,
}

impl DivisionCell for WordCell {
    #[inline]
    fn step(&mut self, base: u32) -> Digit {
        let t = self.r as u128 * base as u128;
        self.r = (t % self.k as u128) as u64;
        (t / self.k as u128) as Digit
    }

    fn is_zero(&self) -> bool {
        self.r == 0
    }
}

#[derive(Clone, PartialEq)]
struct BigCell {
    r: BigUint,
    k: BigUint,
}

impl DivisionCell for BigCell {
    fn step(&mut self, base: u32) -> Digit {
        self.r *= base;
        let (q, r) = self.r.div_rem(&self.k);
        self.r = r;
        q.to_u32().expect("quotient digit below base")
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero()
    }
}

fn run_expansion<C: DivisionCell>(mut cell: C, base: u32, preperiod_len: u64) -> RadixExpansion {
    let mut preperiod = Vec::with_capacity(preperiod_len.min(1 << 20) as usize);
    for _ in 0..preperiod_len {
        preperiod.push(cell.step(base));
    }
    if cell.is_zero() {
        return RadixExpansion {
            base,
            preperiod,
            period: Vec::new(),
            terminating: true,
        };
    }
    let mark = cell.clone();
    let mut period = Vec::new();
    loop {
        period.push(cell.step(base));
        if cell == mark {
            break;
        }
    }
    RadixExpansion {
        base,
        preperiod,
        period,
        terminating: false,
    }
}

/// Expands `f ∈ (0, 1)` in `base`, choosing the word engine whenever the
/// denominator fits in 64 bits.
pub fn expand(f: &ReducedFraction, base: u32) -> Result<RadixExpansion> {
    let engine = if f.denominator().bits() <= 64 {
        Engine::Word
    } else {
        Engine::Big
    };
    expand_with(f, base, engine)
}

pub fn expand_with(f: &ReducedFraction, base: u32, engine: Engine) -> Result<RadixExpansion> {
    check_base(base)?;
    f.require_proper()?;
    let (n, _) = split_denominator(f.denominator(), base);
    Ok(match engine {
        Engine::Word => {
            let k = f.denominator().to_u64().ok_or_else(|| {
                Error::TooLarge(format!("denominator {} for word engine", f.denominator()))
            })?;
            let r = f.numerator().to_u64().expect("numerator below denominator");
            run_expansion(WordCell { r, k }, base, n)
        }
        Engine::Big => run_expansion(
            BigCell {
                r: f.numerator().clone(),
                k: f.denominator().clone(),
            },
            base,
            n,
        ),
    })
}

/// Unbounded streaming long division: yields `q_1, q_2, …` forever (zeros
/// after a terminating expansion).
#[derive(Debug, Clone)]
pub struct LongDivision {
    base: u32,
    remainder: BigUint,
    modulus: BigUint,
}

impl LongDivision {
    pub fn new(f: &ReducedFraction, base: u32) -> Result<Self> {
        check_base(base)?;
        if f.numerator() >= f.denominator() {
            return Err(Error::OutOfRange(format!("{f} is not below 1")));
        }
        Ok(Self {
            base,
            remainder: f.numerator().clone(),
            modulus: f.denominator().clone(),
        })
    }

    pub fn remainder(&self) -> &BigUint {
        &self.remainder
    }
}

impl Iterator for LongDivision {
    type Item = Digit;

    fn next(&mut self) -> Option<Digit> {
        self.remainder *= self.base;
        let (q, r) = self.remainder.div_rem(&self.modulus);
        self.remainder = r;
        Some(q.to_u32().expect("quotient digit below base"))
    }
}

/// Remainders `r_0, …, r_n` and digits `q_1, …, q_n` of the division
/// recurrence, covering the preperiod and one full period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderTrace {
    pub modulus: BigUint,
    pub remainders: Vec<BigUint>,
    pub digits: Vec<Digit>,
}

pub fn remainder_trace(f: &ReducedFraction, base: u32) -> Result<RemainderTrace> {
    let expansion = expand(f, base)?;
    let steps = expansion.preperiod.len() + expansion.period.len();
    let mut division = LongDivision::new(f, base)?;
    let mut remainders = vec![division.remainder().clone()];
    let mut digits = Vec::with_capacity(steps);
    for _ in 0..steps {
        digits.push(division.next().expect("infinite stream"));
        remainders.push(division.remainder().clone());
    }
    Ok(RemainderTrace {
        modulus: f.denominator().clone(),
        remainders,
        digits,
    })
}

pub fn rotate_left(word: &[Digit], t: usize) -> Vec<Digit> {
    if word.is_empty() {
        return Vec::new();
    }
    let t = t % word.len();
    word[t..].iter().chain(&word[..t]).copied().collect()
}

/// Discrete logarithm `t` of `a` to `base` modulo `p^m`, checked against the
/// digit words: the period of `a/p^m` is the period of `1/p^m` rotated left
/// by `t`.
pub fn cyclic_shift_offset(a: u64, p: u64, m: u32, base: u32) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let k = prime_power(p, m)?;
    let b = base as u64;
    if a == 0 || a >= k || a % p == 0 {
        return Err(Error::Precondition(format!(
            "{a}/{k} is not a reduced fraction in (0, 1)"
        )));
    }
    if !is_primitive_root(b, p) || !is_primitive_root(b, p * p) {
        return Err(Error::Precondition(format!(
            "{base} is not a primitive root of {p} and {p}^2"
        )));
    }
    let mut r = 1 % k;
    let mut t = 0u64;
    while r != a {
        r = ((r as u128 * b as u128) % k as u128) as u64;
        t += 1;
        if r == 1 {
            return Err(Error::Precondition(format!(
                "{a} is not in the orbit of {base} mod {k}"
            )));
        }
    }
    let unit = expand(&ReducedFraction::from_u64(1, k)?, base)?;
    let shifted = expand(&ReducedFraction::from_u64(a, k)?, base)?;
    let rotated = rotate_left(unit.period(), t as usize);
    if rotated != shifted.period() {
        return Err(Error::InvariantViolated(format!(
            "period of {a}/{k} is not the period of 1/{k} rotated by {t}"
        )));
    }
    Ok(t)
}
