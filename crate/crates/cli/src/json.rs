//! Serializable views over the library types. Field order is the output key
//! order.

use num_traits::ToPrimitive;
use radix_census::{ConjectureReport, CyclotomicInt, DigitCensus};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

pub const SCHEMA: u32 = 1;

pub struct Census<'a>(pub &'a DigitCensus);

impl Serialize for Census<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (d, c) in self.0.iter() {
            map.serialize_entry(&d.to_string(), &c)?;
        }
        map.end()
    }
}

struct Coeffs<'a>(&'a CyclotomicInt);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.0.coeffs();
        let mut seq = s.serialize_seq(Some(coeffs.len()))?;
        for c in coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[derive(Serialize)]
pub struct Cyclotomic<'a> {
    order: u32,
    coeffs: Coeffs<'a>,
}

impl<'a> Cyclotomic<'a> {
    pub fn new(z: &'a CyclotomicInt) -> Self {
        Self {
            order: z.order(),
            coeffs: Coeffs(z),
        }
    }
}

/// Rounds to 15 significant digits of `scale`, so float noise in a component
/// much smaller than the other disappears.
fn display_round(x: f64, scale: f64) -> f64 {
    let decimals = (14 - scale.log10().floor() as i32).max(0) as usize;
    let r: f64 = format!("{x:.decimals$}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Serialize)]
pub struct Approx {
    re: f64,
    im: f64,
}

impl Approx {
    pub fn new(z: &CyclotomicInt) -> Self {
        if z.is_zero() {
            return Self { re: 0.0, im: 0.0 };
        }
        let (re, im) = z.approx();
        let scale = re.abs().max(im.abs());
        Self {
            re: display_round(re, scale),
            im: display_round(im, scale),
        }
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    schema: u32,
    conjecture: &'static str,
    n: u32,
    mode: &'static str,
    range: [u64; 2],
    sum: Cyclotomic<'a>,
    expected: Cyclotomic<'a>,
    sum_approx: Approx,
    part_i_pass: bool,
    part_ii_pass: bool,
    census: Census<'a>,
    cross_check_pass: bool,
    first_mismatch: Option<u64>,
}

impl<'a> Report<'a> {
    pub fn new(r: &'a ConjectureReport) -> Self {
        Self {
            schema: SCHEMA,
            conjecture: r.conjecture.label(),
            n: r.n,
            mode: r.mode.label(),
            range: [r.range.0, r.range.1],
            sum: Cyclotomic::new(&r.sum),
            expected: Cyclotomic::new(&r.expected),
            sum_approx: Approx::new(&r.sum),
            part_i_pass: r.part_i_pass,
            part_ii_pass: r.part_ii_pass,
            census: Census(&r.census),
            cross_check_pass: r.cross_check_pass,
            first_mismatch: r.first_mismatch,
        }
    }
}
