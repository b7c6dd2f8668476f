//! Exact radix expansions of rationals, closed-form digit censuses of `1/p^m`,
//! digit streams of the Stoneham numbers `α_{b,c}`, and exact verification of
//! the FC1/FC2 digit-sum identities for `α_{2,3}` (base 4) and `α_{3,5}`
//! (base 3).
//!
//! No floating point takes part in any digit or equality computation; complex
//! approximations of cyclotomic values exist only for display.

pub mod census;
pub mod conjectures;
pub mod error;
pub mod mahler_series;
pub mod radix_core;
pub mod stoneham;

pub use census::{CyclotomicInt, DigitCensus};
pub use conjectures::{verify_fc1, verify_fc2, Conjecture, ConjectureReport, Mode};
pub use error::{Error, Result};
pub use radix_core::{Digit, RadixExpansion, ReducedFraction};
pub use stoneham::{DigitStream, RadixMode, StonehamSpec, StreamPath};
