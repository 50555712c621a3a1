//! Truncated Laurent series in `q`, exact over the rationals and reduced
//! modulo a prime. Every value is immutable; operations return new series.

mod exact;
mod modp;

pub use exact::QSeries;
pub use modp::ModPSeries;

use crate::error::{Error, Result};

/// Runs `build` at increasing working precision until the result is known
/// through `O(q^target)`, then truncates to exactly `target`.
///
/// Inversion and negative valuations lose precision, so constructions
/// involving poles need a few extra terms of working precision.
pub fn at_precision(target: i64, mut build: impl FnMut(i64) -> Result<QSeries>) -> Result<QSeries> {
    let mut working = target;
    for _ in 0..64 {
        let s = build(working)?;
        if s.prec() >= target {
            return Ok(s.truncate(target));
        }
        working += (target - s.prec()).max(1);
    }
    Err(Error::Precondition(format!(
        "could not reach precision {target} by raising the working precision"
    )))
}
