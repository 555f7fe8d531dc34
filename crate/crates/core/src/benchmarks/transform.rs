use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;

use super::functions::{evaluate, ObjectiveSpec};
use crate::{mix_seed, Bounds, Draw, Error, Objective, Result, RngStream};

/// Fresh normal matrices drawn before giving up on Gram-Schmidt.
pub const MAX_ROTATION_ATTEMPTS: usize = 10;

/// Relative column norm below which a column counts as dependent.
const DEGENERACY_TOL: f64 = 1e-8;

/// Central fraction of the range the shift vector is drawn from.
const SHIFT_MARGIN: f64 = 0.1;

/// A shift vector `s` and orthogonal matrix `R`; the transformed objective is
/// `F(clamp(R (x - s)))`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShiftRotate {
    shift: Vec<f64>,
    /// Row-major `D x D`.
    rotation: Vec<f64>,
}

impl ShiftRotate {
    /// `s = 0`, `R = I`.
    pub fn identity(dimension: usize) -> Self {
        let mut rotation = vec![0.0; dimension * dimension];
        for i in 0..dimension {
            rotation[i * dimension + i] = 1.0;
        }
        Self { shift: vec![0.0; dimension], rotation }
    }

    /// Builds a transform from parts; `rotation` is row-major and must be
    /// square with the shift's length. Orthogonality is not checked.
    pub fn from_parts(shift: Vec<f64>, rotation: Vec<f64>) -> Result<Self> {
        let d = shift.len();
        if d == 0 {
            return Err(Error::InvalidDimension);
        }
        if rotation.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, actual: rotation.len() });
        }
        Ok(Self { shift, rotation })
    }

    /// Dimension `D`.
    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    /// Shift vector `s`.
    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    /// Row-major rotation matrix.
    pub fn rotation(&self) -> &[f64] {
        &self.rotation
    }

    /// Row `i` of `R`.
    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.dimension();
        &self.rotation[i * d..(i + 1) * d]
    }

    /// `R v` into `out`.
    pub fn rotate(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(v).map(|(r, x)| r * x).sum();
        }
    }

    /// `clamp(R (x - s), bounds)` into `out`. Returns the squared distance
    /// the clamp removed, zero when `R (x - s)` is already in bounds.
    pub fn apply(&self, x: &[f64], bounds: Bounds, out: &mut [f64]) -> f64 {
        let mut excess = 0.0;
        for (i, o) in out.iter_mut().enumerate() {
            let z: f64 = self
                .row(i)
                .iter()
                .zip(x.iter().zip(&self.shift))
                .map(|(r, (x, s))| r * (x - s))
                .sum();
            *o = bounds.clamp(z);
            excess += (z - *o) * (z - *o);
        }
        excess
    }

    /// Largest entry of `|R^T R - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dimension();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d)
                    .map(|k| self.rotation[k * d + i] * self.rotation[k * d + j])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// 64-bit digest of the exact bits, used to tell transforms apart.
    pub fn fingerprint(&self) -> u64 {
        let words: Vec<u64> =
            self.shift.iter().chain(&self.rotation).map(|v| v.to_bits()).collect();
        mix_seed(self.dimension() as u64, &words)
    }
}

/// Modified Gram-Schmidt, run twice, over the columns of a row-major `d x d`
/// matrix. Returns `false` if a column collapses against its predecessors.
pub fn orthonormalize(matrix: &mut [f64], d: usize) -> bool {
    debug_assert_eq!(matrix.len(), d * d);
    let col_norm = |m: &[f64], j: usize| sqrt((0..d).map(|k| m[k * d + j] * m[k * d + j]).sum());
    for j in 0..d {
        let original = col_norm(matrix, j);
        if original == 0.0 || !original.is_finite() {
            return false;
        }
        for _pass in 0..2 {
            for p in 0..j {
                let dot: f64 = (0..d).map(|k| matrix[k * d + p] * matrix[k * d + j]).sum();
                for k in 0..d {
                    matrix[k * d + j] -= dot * matrix[k * d + p];
                }
            }
        }
        let norm = col_norm(matrix, j);
        if norm < DEGENERACY_TOL * original {
            return false;
        }
        for k in 0..d {
            matrix[k * d + j] /= norm;
        }
    }
    true
}

/// Random transform for `spec`: `R` orthonormalizes a standard-normal matrix,
/// `s_j = lower + (0.1 + 0.8 u) (upper - lower)`.
pub fn make_shift_rotate(rng: &mut RngStream, spec: &ObjectiveSpec) -> Result<ShiftRotate> {
    let d = spec.dimension();
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    let mut rotation = vec![0.0; d * d];
    let mut ok = false;
    for _ in 0..MAX_ROTATION_ATTEMPTS {
        rotation.iter_mut().for_each(|r| *r = rng.normal());
        if orthonormalize(&mut rotation, d) {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::DegenerateRotation(MAX_ROTATION_ATTEMPTS));
    }
    let b = spec.bounds();
    let shift = (0..d)
        .map(|_| b.lerp(SHIFT_MARGIN + (1.0 - 2.0 * SHIFT_MARGIN) * rng.uniform()))
        .collect();
    Ok(ShiftRotate { shift, rotation })
}

/// `evaluate(spec, clamp(R (x - s)), rng)`, plus the squared distance the
/// clamp removed. A bare clamp leaves the function flat wherever a rotated
/// coordinate leaves the box, and greedy optimizers stall on that plateau;
/// the penalty keeps a slope back toward the domain and is zero inside it.
pub fn evaluate_transformed(
    spec: &ObjectiveSpec,
    t: &ShiftRotate,
    x: &[f64],
    rng: &mut RngStream,
) -> Result<f64> {
    if x.len() != spec.dimension() {
        return Err(Error::DimensionMismatch { expected: spec.dimension(), actual: x.len() });
    }
    if t.dimension() != spec.dimension() {
        return Err(Error::DimensionMismatch { expected: spec.dimension(), actual: t.dimension() });
    }
    let mut z = vec![0.0; x.len()];
    let excess = t.apply(x, spec.bounds(), &mut z);
    evaluate(spec, &z, rng).map(|v| with_penalty(v, excess))
}

fn with_penalty(value: f64, excess: f64) -> f64 {
    if excess > 0.0 {
        value + excess
    } else {
        value
    }
}

/// A benchmark instance as seen by an optimizer: plain or shift-rotated.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    spec: ObjectiveSpec,
    transform: Option<ShiftRotate>,
}

impl Instance {
    /// Untransformed instance.
    pub fn plain(spec: ObjectiveSpec) -> Self {
        Self { spec, transform: None }
    }

    /// Shift-rotated instance; dimensions must agree.
    pub fn transformed(spec: ObjectiveSpec, transform: ShiftRotate) -> Result<Self> {
        if spec.dimension() != transform.dimension() {
            return Err(Error::DimensionMismatch {
                expected: spec.dimension(),
                actual: transform.dimension(),
            });
        }
        Ok(Self { spec, transform: Some(transform) })
    }

    /// Underlying function.
    pub fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }

    /// Applied transform, if any.
    pub fn transform(&self) -> Option<&ShiftRotate> {
        self.transform.as_ref()
    }
}

impl Objective for Instance {
    fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    fn bounds(&self) -> Bounds {
        self.spec.bounds()
    }

    fn evaluate(&self, x: &[f64], noise: &mut RngStream) -> f64 {
        match &self.transform {
            None => self.spec.value(x, noise),
            Some(t) => {
                let mut z = vec![0.0; x.len()];
                let excess = t.apply(x, self.spec.bounds(), &mut z);
                with_penalty(self.spec.value(&z, noise), excess)
            }
        }
    }
}
