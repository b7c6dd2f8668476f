use std::sync::Arc;

use super::blocks::{fast_path_supported, level_layout, prefix_len};
use super::{level_for, partial_sum, zero_prefix_bound_holds, RadixMode, StonehamSpec};
use crate::error::{Error, Result};
use crate::radix_core::{Digit, LongDivision};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPath {
    /// Block tiling.
    Fast,
    /// Long division of a sufficiently deep partial sum.
    Oracle,
}

impl StreamPath {
    pub fn label(self) -> &'static str {
        match self {
            StreamPath::Fast => "fast",
            StreamPath::Oracle => "oracle",
        }
    }
}

#[derive(Debug)]
struct TileCursor {
    spec: StonehamSpec,
    mode: RadixMode,
    prefix_left: u64,
    next_level: u32,
    word: Arc<Vec<Digit>>,
    index: usize,
    reps_left: u64,
}

impl TileCursor {
    fn next_digit(&mut self) -> Result<Digit> {
        if self.prefix_left > 0 {
            self.prefix_left -= 1;
            return Ok(0);
        }
        if self.index == self.word.len() {
            self.index = 0;
            if self.reps_left == 0 {
                let level = level_layout(&self.spec, self.mode, self.next_level)?;
                self.next_level += 1;
                self.word = level.word;
                self.reps_left = level.repetitions;
            }
            self.reps_left -= 1;
        }
        let d = self.word[self.index];
        self.index += 1;
        Ok(d)
    }
}

#[derive(Debug)]
enum Source {
    Tiles(TileCursor),
    Division(LongDivision),
}

/// Single-consumer iterator over the digits of `α_{b,c}` at positions
/// `1, 2, …, count`.
#[derive(Debug)]
pub struct DigitStream {
    spec: StonehamSpec,
    mode: RadixMode,
    path: StreamPath,
    emitted: u64,
    count: u64,
    source: Source,
}

impl DigitStream {
    /// Uses the block tiling when it is available, the oracle otherwise.
    pub fn new(spec: &StonehamSpec, mode: RadixMode, count: u64) -> Result<Self> {
        if fast_path_supported(spec, mode) {
            Self::fast(spec, mode, count)
        } else {
            Self::oracle(spec, mode, count)
        }
    }

    /// Block-tiling stream. `count` may be `u64::MAX` for an unbounded stream.
    pub fn fast(spec: &StonehamSpec, mode: RadixMode, count: u64) -> Result<Self> {
        if !fast_path_supported(spec, mode) {
            return Err(Error::Precondition(format!(
                "fast path unavailable for {spec} in radix mode {}",
                mode.label()
            )));
        }
        if !zero_prefix_bound_holds(spec) {
            return Err(Error::InvariantViolated(format!("{spec} ≥ b^-c")));
        }
        let cursor = TileCursor {
            spec: *spec,
            mode,
            prefix_left: prefix_len(spec, mode),
            next_level: 1,
            word: Arc::new(Vec::new()),
            index: 0,
            reps_left: 0,
        };
        Ok(Self::build(
            spec,
            mode,
            StreamPath::Fast,
            count,
            Source::Tiles(cursor),
        ))
    }

    /// Long division of the shallowest partial sum whose first `count`
    /// digits are final.
    pub fn oracle(spec: &StonehamSpec, mode: RadixMode, count: u64) -> Result<Self> {
        let m = level_for(spec, mode, count)?;
        let division = LongDivision::new(&partial_sum(spec, m)?, mode.radix(spec)?)?;
        Ok(Self::build(
            spec,
            mode,
            StreamPath::Oracle,
            count,
            Source::Division(division),
        ))
    }

    fn build(
        spec: &StonehamSpec,
        mode: RadixMode,
        path: StreamPath,
        count: u64,
        source: Source,
    ) -> Self {
        Self {
            spec: *spec,
            mode,
            path,
            emitted: 0,
            count,
            source,
        }
    }

    pub fn spec(&self) -> &StonehamSpec {
        &self.spec
    }

    pub fn mode(&self) -> RadixMode {
        self.mode
    }

    pub fn path(&self) -> StreamPath {
        self.path
    }

    /// 1-based position of the next digit.
    pub fn position(&self) -> u64 {
        self.emitted + 1
    }
}

impl Iterator for DigitStream {
    type Item = Digit;

    fn next(&mut self) -> Option<Digit> {
        if self.emitted >= self.count {
            return None;
        }
        let d = match &mut self.source {
            // level layouts only fail once p^m leaves the word range
            Source::Tiles(cursor) => cursor.next_digit().ok()?,
            Source::Division(division) => division.next()?,
        };
        self.emitted += 1;
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.count - self.emitted).unwrap_or(usize::MAX);
        match self.source {
            Source::Division(_) => (left, Some(left)),
            Source::Tiles(_) => (0, Some(left)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamOutput {
    pub digits: Vec<Digit>,
    pub path: StreamPath,
}

/// First `count` digits of `α_{b,c}` in the given radix mode.
pub fn digit_stream(spec: &StonehamSpec, mode: RadixMode, count: u64) -> Result<StreamOutput> {
    let stream = DigitStream::new(spec, mode, count)?;
    let path = stream.path();
    let digits: Vec<Digit> = stream.collect();
    if digits.len() as u64 != count {
        return Err(Error::TooLarge(format!(
            "stream ended after {} digits",
            digits.len()
        )));
    }
    Ok(StreamOutput { digits, path })
}
