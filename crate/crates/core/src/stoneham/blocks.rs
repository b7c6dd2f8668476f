//! Block tilings of the Stoneham expansion.
//!
//! Base `b`, prime `p = c`: positions `p^m + 1 ..= p^{m+1}` are the minimal
//! period `w_m` of `S_m / p^m` (with `S_m = (p^m − 1)/(p − 1)`) repeated
//! `p·φ(p^m) / |w_m|` times, and positions `1..=p` are zero.
//!
//! Base 4 with `b = 2`: the binary blocks start at even positions, so pairing
//! digits shifts every binary block left by one place. Level `m` then sits at
//! positions `(p^m + 1)/2 + 1 ..= (p^{m+1} + 1)/2` and is tiled `p` times by the
//! base-4 period of `(2·S_m mod p^m) / p^m`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{RadixMode, StonehamSpec};
use crate::error::{Error, Result};
use crate::radix_core::arith::{gcd_u64, is_prime, is_primitive_root, multiplicative_order};
use crate::radix_core::{euler_phi, expand, Digit, ReducedFraction};

fn level_modulus(p: u64, m: u32) -> Result<u64> {
    p.checked_pow(m)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{m}")))
}

fn repunit(p: u64, m: u32) -> Result<u64> {
    Ok((level_modulus(p, m)? - 1) / (p - 1))
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    Ok(())
}

/// Minimal base-`b` period of `((p^m − 1)/(p − 1)) / p^m`.
pub fn block_word(b: u32, p: u64, m: u32) -> Result<Vec<Digit>> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if gcd_u64(b as u64, p) != 1 {
        return Err(Error::Precondition(format!("{b} and {p} are not coprime")));
    }
    let k = level_modulus(p, m)?;
    let e = expand(&ReducedFraction::from_u64(repunit(p, m)?, k)?, b)?;
    Ok(e.period().to_vec())
}

fn require_binary_square_fast_path(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if !is_primitive_root(2, p) || !is_primitive_root(2, p * p) {
        return Err(Error::Precondition(format!(
            "2 is not a primitive root of {p} and {p}^2"
        )));
    }
    Ok(())
}

/// Base-4 tiling word of level `m` of `α_{2,p}`: the base-4 period of
/// `(2·S_m mod p^m) / p^m`, of length `φ(p^m)/2`.
pub fn block_word_sq(p: u64, m: u32) -> Result<Vec<Digit>> {
    require_binary_square_fast_path(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let k = level_modulus(p, m)?;
    let shifted = (2 * repunit(p, m)?) % k;
    let e = expand(&ReducedFraction::from_u64(shifted, k)?, 4)?;
    let expected = euler_phi(k)? / 2;
    if e.period().len() as u64 != expected {
        return Err(Error::InvariantViolated(format!(
            "base-4 block of level {m} has length {} not {expected}",
            e.period().len()
        )));
    }
    Ok(e.period().to_vec())
}

type CacheKey = (u32, u64, RadixMode, u32);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<Digit>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<Digit>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn cached_word(b: u32, p: u64, mode: RadixMode, m: u32) -> Result<Arc<Vec<Digit>>> {
    let key = (b, p, mode, m);
    if let Some(w) = cache().lock().expect("block cache poisoned").get(&key) {
        return Ok(Arc::clone(w));
    }
    let word = Arc::new(match mode {
        RadixMode::Base => block_word(b, p, m)?,
        RadixMode::Squared => block_word_sq(p, m)?,
    });
    cache()
        .lock()
        .expect("block cache poisoned")
        .insert(key, Arc::clone(&word));
    Ok(word)
}

/// Whether the block tiling is proven (and implemented) for this stream.
pub(crate) fn fast_path_supported(spec: &StonehamSpec, mode: RadixMode) -> bool {
    let p = spec.c() as u64;
    match mode {
        RadixMode::Base => is_prime(p),
        RadixMode::Squared => spec.b() == 2 && require_binary_square_fast_path(p).is_ok(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLevel {
    pub m: u32,
    pub word: Arc<Vec<Digit>>,
    /// First and last covered position, 1-based and inclusive.
    pub start: u64,
    pub end: u64,
    pub repetitions: u64,
}

pub(crate) fn level_layout(spec: &StonehamSpec, mode: RadixMode, m: u32) -> Result<BlockLevel> {
    let p = spec.c() as u64;
    let word = cached_word(spec.b(), p, mode, m)?;
    let (pm, pm1) = (level_modulus(p, m)?, level_modulus(p, m + 1)?);
    let level = match mode {
        RadixMode::Base => {
            let n = multiplicative_order(spec.b() as u64 % pm, pm)?;
            let span = p * euler_phi(pm)?;
            if word.len() as u64 != n || span % n != 0 {
                return Err(Error::InvariantViolated(format!(
                    "block length {} does not tile level {m} (order {n})",
                    word.len()
                )));
            }
            BlockLevel {
                m,
                word,
                start: pm + 1,
                end: pm1,
                repetitions: span / n,
            }
        }
        RadixMode::Squared => BlockLevel {
            m,
            word,
            start: (pm + 1) / 2 + 1,
            end: (pm1 + 1) / 2,
            repetitions: p,
        },
    };
    debug_assert_eq!(
        level.repetitions * level.word.len() as u64,
        level.end - level.start + 1
    );
    Ok(level)
}

/// Zero prefix followed by per-level block words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub prime: u64,
    pub radix: u32,
    pub mode: RadixMode,
    pub prefix: Vec<Digit>,
    pub levels: Vec<BlockLevel>,
}

impl BlockDecomposition {
    /// Digits at positions `1..=levels.last().end` rebuilt from the blocks.
    pub fn digits(&self) -> Vec<Digit> {
        let mut out = self.prefix.clone();
        for level in &self.levels {
            for _ in 0..level.repetitions {
                out.extend_from_slice(&level.word);
            }
        }
        out
    }
}

pub(crate) fn prefix_len(spec: &StonehamSpec, mode: RadixMode) -> u64 {
    let c = spec.c() as u64;
    match mode {
        RadixMode::Base => c,
        RadixMode::Squared => (c + 1) / 2,
    }
}

pub fn block_decomposition(
    spec: &StonehamSpec,
    mode: RadixMode,
    m_max: u32,
) -> Result<BlockDecomposition> {
    if !fast_path_supported(spec, mode) {
        return Err(Error::Precondition(format!(
            "no proven block structure for {spec} in radix mode {}",
            mode.label()
        )));
    }
    let levels = (1..=m_max)
        .map(|m| level_layout(spec, mode, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDecomposition {
        prime: spec.c() as u64,
        radix: mode.radix(spec)?,
        mode,
        prefix: vec![0; prefix_len(spec, mode) as usize],
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMismatch {
    pub level: u32,
    pub position: u64,
    pub expected: Digit,
    pub found: Digit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub levels_checked: u32,
    pub digits_checked: u64,
    pub mismatch: Option<BlockMismatch>,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the oracle digit stream against the block tiling for levels
/// `1..=m_max`, reporting the first mismatching position.
pub fn verify_block_structure(
    spec: &StonehamSpec,
    m_max: u32,
    mode: RadixMode,
) -> Result<BlockReport> {
    let decomposition = block_decomposition(spec, mode, m_max)?;
    let tiled = decomposition.digits();
    let oracle: Vec<Digit> = super::DigitStream::oracle(spec, mode, tiled.len() as u64)?.collect();
    let level_of = |pos: u64| {
        decomposition
            .levels
            .iter()
            .find(|l| (l.start..=l.end).contains(&pos))
            .map_or(0, |l| l.m)
    };
    let mismatch = tiled
        .iter()
        .zip(&oracle)
        .enumerate()
        .find(|(_, (t, o))| t != o)
        .map(|(i, (&expected, &found))| {
            let position = i as u64 + 1;
            BlockMismatch {
                level: level_of(position),
                position,
                expected,
                found,
            }
        });
    Ok(BlockReport {
        levels_checked: m_max,
        digits_checked: tiled.len() as u64,
        mismatch,
    })
}

/// Checks `d_k = b·a_{2k−1} + a_{2k}` between the base-`b²` and base-`b`
/// oracle streams for `k ≤ count`; returns the first failing `k`.
pub fn check_pairing(spec: &StonehamSpec, count: u64) -> Result<Option<u64>> {
    let squared: Vec<Digit> =
        super::DigitStream::oracle(spec, RadixMode::Squared, count)?.collect();
    let base: Vec<Digit> = super::DigitStream::oracle(spec, RadixMode::Base, 2 * count)?.collect();
    Ok(squared
        .iter()
        .zip(base.chunks_exact(2))
        .position(|(&d, pair)| d != spec.b() * pair[0] + pair[1])
        .map(|i| i as u64 + 1))
}
