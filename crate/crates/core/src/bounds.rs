use alloc::vec::Vec;

use rand_core::RngCore;

use crate::{Draw, Error, Result};

/// A single `[lower, upper]` interval applied to every coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bounds {
    lower: f64,
    upper: f64,
}

impl Bounds {
    /// Checked constructor; requires finite `lower < upper`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_finite() && upper.is_finite() && lower < upper {
            Ok(Self { lower, upper })
        } else {
            Err(Error::InvalidBounds { lower, upper })
        }
    }

    pub(crate) const fn from_table(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    /// Lower end point.
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Upper end point.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `upper - lower`.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Saturates one coordinate.
    #[inline]
    pub fn clamp(&self, v: f64) -> f64 {
        f64::min(self.upper, f64::max(self.lower, v))
    }

    /// True when `v` lies in the closed interval.
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    /// Maps `u` in `[0, 1)` onto the interval.
    #[inline]
    pub fn lerp(&self, u: f64) -> f64 {
        self.lower + u * (self.upper - self.lower)
    }
}

/// Returns a copy of `x` with every coordinate saturated into `b`.
pub fn clamp(x: &[f64], b: Bounds) -> Vec<f64> {
    x.iter().map(|&c| b.clamp(c)).collect()
}

/// In-place variant of [`clamp`], used after every position update.
#[inline]
pub fn clamp_in_place(x: &mut [f64], b: Bounds) {
    for c in x {
        *c = b.clamp(*c);
    }
}

/// Draws `d` independent coordinates `lower + u * (upper - lower)`, consuming
/// exactly `d` uniform draws.
pub fn uniform_in_bounds<R: RngCore + ?Sized>(rng: &mut R, b: Bounds, d: usize) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    Ok((0..d).map(|_| b.lerp(rng.uniform())).collect())
}
