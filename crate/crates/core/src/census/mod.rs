//! Digit censuses of periodic expansions.
//!
//! The digit produced alongside remainder `r_i` in the expansion of `a/k`
//! depends only on `r_i mod b`: `q_i ≡ -r_i·k⁻¹ (mod b)`. Counting digits
//! therefore reduces to counting remainders in residue classes, which for a
//! full unit group modulo `p^m` is a floor-arithmetic count.

pub mod cyclotomic;

use std::collections::BTreeMap;

pub use cyclotomic::CyclotomicInt;

use crate::error::{Error, Result};
use crate::radix_core::arith::{
    gcd_u64, is_prime, is_primitive_root, lcm_u64, mod_inverse, mul_mod, multiplicative_order,
    prime_power,
};
use crate::radix_core::{euler_phi, Digit};

/// The digit accompanying a remainder `r ≡ j (mod b)` in a base-`b`
/// expansion with denominator `k`.
pub fn digit_for_residue(j: u64, k: u64, b: u32) -> Result<Digit> {
    let b64 = b as u64;
    let k_inv = mod_inverse((k % b64) as i64, b64)?;
    let j = j % b64;
    Ok(((b64 - mul_mod(j, k_inv, b64)) % b64) as Digit)
}

/// Residue class mod `b` of the remainders that produce digit `d`.
pub fn residue_for_digit(d: Digit, k: u64, b: u32) -> Result<u64> {
    let b64 = b as u64;
    if gcd_u64(k % b64, b64) != 1 {
        return Err(Error::NoInverse(k % b64, b64));
    }
    Ok((b64 - mul_mod(d as u64 % b64, k % b64, b64)) % b64)
}

/// Occurrence count of each digit over one minimal period. Only nonzero
/// counts are stored; iteration is in ascending digit order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitCensus {
    base: u32,
    counts: BTreeMap<Digit, u64>,
    period_length: u64,
}

impl DigitCensus {
    pub fn from_digits(base: u32, digits: &[Digit]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &d in digits {
            if d >= base {
                return Err(Error::OutOfRange(format!(
                    "digit {d} not below base {base}"
                )));
            }
            *counts.entry(d).or_insert(0) += 1;
        }
        Ok(Self {
            base,
            counts,
            period_length: digits.len() as u64,
        })
    }

    pub fn from_counts(base: u32, counts: impl IntoIterator<Item = (Digit, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (d, c) in counts {
            if d >= base {
                return Err(Error::OutOfRange(format!(
                    "digit {d} not below base {base}"
                )));
            }
            if c > 0 {
                *map.entry(d).or_insert(0) += c;
            }
        }
        let period_length = map.values().sum();
        Ok(Self {
            base,
            counts: map,
            period_length,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn period_length(&self) -> u64 {
        self.period_length
    }

    pub fn count(&self, digit: Digit) -> u64 {
        self.counts.get(&digit).copied().unwrap_or(0)
    }

    /// Nonzero `(digit, count)` pairs in ascending digit order.
    pub fn iter(&self) -> impl Iterator<Item = (Digit, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}

/// A set `{x ∈ [1, X] : x ≡ j (mod b), x mod mᵢ ∈ Sᵢ for every constraint}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSpec {
    pub bound: u64,
    pub modulus: u64,
    pub target: u64,
    pub constraints: Vec<(u64, Vec<u64>)>,
}

impl CongruenceSpec {
    pub fn new(bound: u64, modulus: u64, target: u64) -> Self {
        Self {
            bound,
            modulus,
            target: target % modulus.max(1),
            constraints: Vec::new(),
        }
    }

    pub fn with_residues(mut self, modulus: u64, allowed: impl IntoIterator<Item = u64>) -> Self {
        let m = modulus.max(1);
        let mut allowed: Vec<u64> = allowed.into_iter().map(|r| r % m).collect();
        allowed.sort_unstable();
        allowed.dedup();
        self.constraints.push((m, allowed));
        self
    }

    pub fn excluding_multiples_of(self, p: u64) -> Self {
        self.with_residues(p, 1..p)
    }

    fn admits(&self, x: u64) -> bool {
        x % self.modulus.max(1) == self.target
            && self
                .constraints
                .iter()
                .all(|(m, allowed)| allowed.binary_search(&(x % m)).is_ok())
    }
}

/// Residue-class counts are enumerated modulo the lcm of all moduli, which
/// must stay at or below this.
pub const MAX_CLASS_PERIOD: u64 = 1 << 26;

/// `|{x ∈ [1, X] : …}|` by enumerating residues modulo `L = lcm` of the moduli
/// and counting each admissible class with floor arithmetic.
pub fn count_in_class(spec: &CongruenceSpec) -> Result<u64> {
    if spec.modulus == 0 || spec.constraints.iter().any(|(m, _)| *m == 0) {
        return Err(Error::OutOfRange("moduli must be positive".into()));
    }
    let l = spec
        .constraints
        .iter()
        .try_fold(spec.modulus, |acc, (m, _)| lcm_u64(acc, *m))?;
    if l > MAX_CLASS_PERIOD {
        return Err(Error::TooLarge(format!("class period {l}")));
    }
    let (full, rem) = (spec.bound / l, spec.bound % l);
    Ok((0..l)
        .filter(|&r| spec.admits(r))
        .map(|r| full + u64::from(r != 0 && r <= rem))
        .sum())
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Closed-form census of the period of any `a/p^m` in base `b`, valid when
/// `b` is a primitive root of both `p` and `p²`.
pub fn census_closed_form(p: u64, m: u32, b: u32) -> Result<DigitCensus> {
    require_odd_prime(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if b < 2 {
        return Err(Error::OutOfRange(format!("base {b} must be at least 2")));
    }
    let b64 = b as u64;
    if gcd_u64(b64, p) != 1 || !is_primitive_root(b64, p) || !is_primitive_root(b64, p * p) {
        return Err(Error::FormulaInapplicable(format!(
            "{b} is not a primitive root of {p} and {p}^2"
        )));
    }
    let k = prime_power(p, m)?;
    let mut counts = Vec::with_capacity(b as usize);
    for d in 0..b {
        let class = residue_for_digit(d, k, b)?;
        let spec = CongruenceSpec::new(k, b64, class).excluding_multiples_of(p);
        counts.push((d, count_in_class(&spec)?));
    }
    let census = DigitCensus::from_counts(b, counts)?;
    let phi = euler_phi(k)?;
    if census.period_length() != phi {
        return Err(Error::InvariantViolated(format!(
            "census total {} differs from φ({k}) = {phi}",
            census.period_length()
        )));
    }
    Ok(census)
}

/// Census of `a/p^m` obtained by walking the remainder orbit `r ← r·b mod p^m`.
/// Works whether or not the orbit exhausts the units modulo `p^m`.
pub fn orbit_census(a: u64, p: u64, m: u32, b: u32) -> Result<DigitCensus> {
    require_odd_prime(p)?;
    let b64 = b as u64;
    if b < 2 || m == 0 {
        return Err(Error::OutOfRange("need b ≥ 2 and m ≥ 1".into()));
    }
    if a % p == 0 || b64 % p == 0 {
        return Err(Error::Precondition(format!(
            "{a} and {b} must be coprime to {p}"
        )));
    }
    let k = prime_power(p, m)?;
    let start = a % k;
    let mut r = start;
    let mut counts = vec![0u64; b as usize];
    loop {
        r = mul_mod(r, b64, k);
        counts[digit_for_residue(r % b64, k, b)? as usize] += 1;
        if r == start {
            break;
        }
    }
    let census = DigitCensus::from_counts(b, (0..b).zip(counts))?;
    let ord = multiplicative_order(b64, k)?;
    if census.period_length() != ord {
        return Err(Error::InvariantViolated(format!(
            "orbit length {} differs from ord_{k}({b}) = {ord}",
            census.period_length()
        )));
    }
    Ok(census)
}

/// `Σ ζ_n^{d}` over a digit word.
pub fn exp_sum(digits: &[Digit], root_order: u32) -> Result<CyclotomicInt> {
    let n = root_order.max(1) as usize;
    let mut counts = vec![0u64; n];
    for &d in digits {
        counts[d as usize % n] += 1;
    }
    CyclotomicInt::from_exponent_counts(root_order, &counts)
}

/// `Σ count_d · ζ_n^{d}` over a census.
pub fn exp_sum_census(census: &DigitCensus, root_order: u32) -> Result<CyclotomicInt> {
    let n = root_order.max(1) as usize;
    let mut counts = vec![0u64; n];
    for (d, c) in census.iter() {
        counts[d as usize % n] += c;
    }
    CyclotomicInt::from_exponent_counts(root_order, &counts)
}
