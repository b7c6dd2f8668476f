//! Elementary number theory and the exact radix expansion engine.

pub mod arith;
pub mod expansion;
pub mod fraction;

pub use arith::{
    check_p2_propagation, euler_phi, gcd, is_prime, is_primitive_root, mod_inverse,
    multiplicative_order, Propagation,
};
pub use expansion::{
    cyclic_shift_offset, expand, expand_with, period_preperiod, remainder_trace, render_digits,
    rotate_left, Digit, Engine, LongDivision, PeriodLengths, RadixExpansion, RemainderTrace,
};
pub use fraction::ReducedFraction;
