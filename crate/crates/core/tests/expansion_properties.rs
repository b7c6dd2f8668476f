use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use radix_census::radix_core::arith::gcd_u64;
use radix_census::radix_core::{
    check_p2_propagation, cyclic_shift_offset, expand, expand_with, is_prime, is_primitive_root,
    period_preperiod, remainder_trace, rotate_left, Engine, Propagation, ReducedFraction,
};

fn frac(a: u64, k: u64) -> ReducedFraction {
    ReducedFraction::from_u64(a, k).unwrap()
}

fn is_minimal_period(word: &[u32]) -> bool {
    let n = word.len();
    (1..n)
        .filter(|d| n % d == 0)
        .all(|d| word.chunks(d).any(|c| c != &word[..d]))
}

proptest! {
    #[test]
    fn expansion_reconstructs_and_is_minimal(k in 2u64..=10_000, a_seed in any::<u64>(), base in 2u32..=36) {
        let a = 1 + a_seed % (k - 1);
        let f = frac(a, k);
        let e = expand(&f, base).unwrap();
        prop_assert_eq!(&e.value(), f.as_ratio());
        prop_assert!(e.preperiod().iter().chain(e.period()).all(|&d| d < base));
        prop_assert!(is_minimal_period(e.period()));
        if let (Some(last_pre), Some(last_per)) = (e.preperiod().last(), e.period().last()) {
            prop_assert_ne!(last_pre, last_per);
        }
        prop_assert_eq!(e, expand_with(&f, base, Engine::Big).unwrap());
    }

    #[test]
    fn remainders_stay_coprime_and_classes_match_digits(k in 2u64..=3_000, a_seed in any::<u64>(), base in 2u32..=20) {
        prop_assume!(gcd_u64(k, base as u64) == 1);
        let a = 1 + a_seed % (k - 1);
        prop_assume!(gcd_u64(a, k) == 1);
        let t = remainder_trace(&frac(a, k), base).unwrap();
        let k_big = BigUint::from(k);
        prop_assert!(t.remainders.iter().all(|r| r.gcd(&k_big).is_one()));
        // remainders r_1..r_n paired with q_1..q_n
        let pairs: Vec<(u64, u32)> = t.remainders[1..]
            .iter()
            .map(|r| (r.to_u64().unwrap() % base as u64, 0))
            .zip(&t.digits)
            .map(|((class, _), &q)| (class, q))
            .collect();
        for (ri, qi) in &pairs {
            for (rj, qj) in &pairs {
                prop_assert_eq!(ri == rj, qi == qj);
            }
        }
    }
}

#[test]
fn closed_form_lengths_match_measured_lengths() {
    let check = |k: u64, base: u32| {
        let f = frac(1, k);
        let e = expand(&f, base).unwrap();
        let pl = period_preperiod(&f, base).unwrap();
        assert_eq!(
            pl.preperiod,
            e.preperiod().len() as u64,
            "1/{k} base {base}"
        );
        assert_eq!(pl.terminating, e.is_terminating());
        let measured = if e.is_terminating() {
            1
        } else {
            e.period().len() as u64
        };
        assert_eq!(pl.period, measured, "1/{k} base {base}");
    };
    for base in [2u32, 10, 16] {
        for k in 2..=10_000 {
            check(k, base);
        }
    }
    for base in 2..=16 {
        for k in 2..=2_000 {
            check(k, base);
        }
    }
}

#[test]
fn primitive_roots_of_p_squared_propagate() {
    for p in (3..=50u64).filter(|&p| is_prime(p)) {
        for b in 2..=20u64 {
            let outcome = check_p2_propagation(b, p, 5);
            if is_primitive_root(b, p * p) {
                assert_eq!(outcome, Propagation::Holds, "b={b} p={p}");
            } else {
                assert_eq!(outcome, Propagation::NotApplicable, "b={b} p={p}");
            }
        }
    }
}

#[test]
fn periods_of_a_over_p_power_are_rotations() {
    for p in [3u64, 5, 7, 11, 13] {
        for m in 1..=5u32 {
            let k = p.pow(m);
            if k > 243 {
                break;
            }
            for b in (2..=20u32)
                .filter(|&b| is_primitive_root(b as u64, p) && is_primitive_root(b as u64, p * p))
            {
                let unit = expand(&frac(1, k), b).unwrap();
                for a in (1..k).filter(|a| a % p != 0) {
                    let t = cyclic_shift_offset(a, p, m, b).unwrap();
                    let e = expand(&frac(a, k), b).unwrap();
                    assert_eq!(e.period(), rotate_left(unit.period(), t as usize));
                }
            }
        }
    }
}
