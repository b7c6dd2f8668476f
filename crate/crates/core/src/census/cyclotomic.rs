//! Exact arithmetic in `Z[ζ_n] = Z[x]/(Φ_n)` for `1 ≤ n ≤ 64`.
//!
//! Elements are kept fully reduced in the power basis `1, ζ, …, ζ^{φ(n)-1}`,
//! so equality is coefficient equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 64;

/// `Φ_n` coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Result<&'static [i64]> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    if n == 0 || n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n as u64));
    }
    let table = TABLE.get_or_init(|| {
        let mut table: Vec<Vec<i64>> = vec![Vec::new()];
        for n in 1..=MAX_ORDER as usize {
            // x^n - 1 divided by Φ_d for every proper divisor d
            let mut poly = vec![0i64; n + 1];
            poly[0] = -1;
            poly[n] = 1;
            for d in (1..n).filter(|d| n % d == 0) {
                poly = divide_monic(&poly, &table[d]);
            }
            table.push(poly);
        }
        table
    });
    Ok(&table[n as usize])
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    /// Builds `Σ c_i ζ^i` from an arbitrary-length coefficient list and reduces it.
    pub fn new(order: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?;
        Ok(Self {
            order,
            coeffs: reduce(coeffs, phi),
        })
    }

    pub fn from_i64s(order: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(order, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: u32) -> Result<Self> {
        Self::new(order, Vec::new())
    }

    pub fn one(order: u32) -> Result<Self> {
        Self::from_i64s(order, &[1])
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(order: u32, k: u64) -> Result<Self> {
        let e = (k % order.max(1) as u64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Self::new(order, coeffs)
    }

    /// `Σ counts[e] · ζ^e`.
    pub fn from_exponent_counts(order: u32, counts: &[u64]) -> Result<Self> {
        Self::new(order, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the basis `1, ζ, …, ζ^{φ(n)-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Floating approximation under `ζ = e^{2πi/n}`. Display only.
    pub fn approx(&self) -> (f64, f64) {
        let step = std::f64::consts::TAU / self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let angle = step * i as f64;
                (re + c * angle.cos(), im + c * angle.sin())
            })
    }

    fn phi(&self) -> &'static [i64] {
        cyclotomic_polynomial(self.order).expect("order validated on construction")
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.order, rhs.order, "mixed cyclotomic orders");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        Self {
            order: self.order,
            coeffs,
        }
    }
}

fn reduce(mut coeffs: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let deg = phi.len() - 1;
    for top in (deg..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[top]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                coeffs[top - deg + j] -= &c * pj;
            }
        }
    }
    coeffs.resize(deg, BigInt::zero());
    coeffs
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.order, rhs.order, "mixed cyclotomic orders");
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); (2 * n).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CyclotomicInt {
            order: self.order,
            coeffs: reduce(prod, self.phi()),
        }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CyclotomicInt {
            type Output = CyclotomicInt;

            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let n = self.order;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "ζ{n}")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
