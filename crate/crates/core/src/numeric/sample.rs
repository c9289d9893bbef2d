use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{NumericError, Result};
use crate::algebra::{BigRational, RationalFunction};

/// Axis-aligned box `[lo, hi]³` sampled on a uniform rational grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBox {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Grid cells per axis.
    pub resolution: u32,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { lo: BigRational::from_integer((-3).into()), hi: BigRational::from_integer(3.into()), resolution: 240 }
    }
}

impl SampleBox {
    fn coordinate(&self, k: u32) -> BigRational {
        let span = &self.hi - &self.lo;
        &self.lo + span * BigRational::new(k.into(), self.resolution.into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleOptions {
    pub points: usize,
    pub tolerance: f64,
    /// Draws where some denominator is smaller than this are skipped.
    pub min_denominator: f64,
    pub seed: u64,
    pub bounds: SampleBox,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { points: 25, tolerance: 1e-12, min_denominator: 1e-9, seed: 0x5eed_2024, bounds: SampleBox::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleVerdict {
    pub identity: String,
    pub points: usize,
    pub skipped: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// FNV-1a, used to derive a per-identity stream from the global seed.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Evaluates every component of a residual at `opts.points` non-singular
/// grid points. Components are evaluated in `f64` from exact rational
/// coordinates.
pub fn sample_identity(name: &str, components: &[&RationalFunction], opts: &SampleOptions) -> Result<SampleVerdict> {
    if opts.points == 0 {
        return Err(NumericError::NoPoints);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ stream_id(name));
    let mut max = 0.0f64;
    let mut used = 0;
    let mut skipped = 0;
    // Bounded number of draws so a residual singular everywhere on the grid terminates.
    let max_draws = opts.points * 20;
    for _ in 0..max_draws {
        if used == opts.points {
            break;
        }
        let p = [0, 1, 2].map(|_| opts.bounds.coordinate(rng.random_range(0..=opts.bounds.resolution)));
        let pf = p.each_ref().map(|c| c.to_f64().unwrap_or(f64::NAN));
        let singular = components.iter().any(|f| f.denom().eval_f64(&pf).abs() < opts.min_denominator);
        if singular {
            skipped += 1;
            continue;
        }
        used += 1;
        for f in components {
            let val = f.numer().eval_f64(&pf) / f.denom().eval_f64(&pf);
            max = max.max(if val.is_finite() { val.abs() } else { f64::INFINITY });
        }
    }
    if used == 0 {
        return Err(NumericError::Inconclusive(skipped));
    }
    Ok(SampleVerdict {
        identity: name.to_owned(),
        points: used,
        skipped,
        max_residual: max,
        tolerance: opts.tolerance,
        pass: max < opts.tolerance,
    })
}
