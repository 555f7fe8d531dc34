use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{E, PI, TAU};
use core::fmt;
use core::str::FromStr;

use libm::{cos, exp, fabs, log, round, sin, sqrt};

use crate::{Bounds, Error, Objective, Result, RngStream, Draw};

/// Landscape class of a benchmark function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Modality {
    /// Single basin.
    Unimodal,
    /// Many local optima.
    Multimodal,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modality::Unimodal => "unimodal",
            Modality::Multimodal => "multimodal",
        })
    }
}

macro_rules! function_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Identity of one of the twenty benchmark functions. The first ten
        /// are unimodal, the last ten multimodal.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[allow(missing_docs)]
        pub enum FunctionId {
            $($variant),+
        }

        impl FunctionId {
            /// All functions in table order.
            pub const ALL: [FunctionId; 20] = [$(FunctionId::$variant),+];

            /// Registry name used on the command line and in output files.
            pub const fn name(self) -> &'static str {
                match self {
                    $(FunctionId::$variant => $name),+
                }
            }
        }
    };
}

function_ids! {
    Sphere => "sphere",
    Rosenbrock => "rosenbrock",
    SchwefelN1_2 => "schwefel_n1_2",
    SchwefelN2_21 => "schwefel_n2_21",
    SchwefelN2_22 => "schwefel_n2_22",
    Step => "step",
    Quartic => "quartic",
    Elliptic => "elliptic",
    BentCigar => "bentcigar",
    Discus => "discus",
    Rastrigin => "rastrigin",
    Ackley => "ackley",
    Griewank => "griewank",
    Schwefel => "schwefel",
    Weierstrass => "weierstrass",
    NCRastrigin => "ncrastrigin",
    Penalized => "penalized",
    Penalized2 => "penalized2",
    XinSheYangF4 => "xinsheyang_f4",
    InvertedVincent => "inverted_vincent",
}

/// Schwefel's minimizer is only known numerically.
const SCHWEFEL_OPTIMUM_COORD: f64 = 420.9687;
const SCHWEFEL_OPTIMUM_VALUE: f64 = -418.983;

const WEIERSTRASS_A: f64 = 0.5;
const WEIERSTRASS_B: f64 = 3.0;
const WEIERSTRASS_KMAX: usize = 20;

impl FunctionId {
    /// Position in table order, stable across releases (used for seeding).
    pub fn index(self) -> usize {
        self as usize
    }

    /// Landscape class.
    pub fn modality(self) -> Modality {
        if self.index() < 10 {
            Modality::Unimodal
        } else {
            Modality::Multimodal
        }
    }

    /// Search range shared by all coordinates.
    pub fn bounds(self) -> Bounds {
        use FunctionId::*;
        let (lo, hi) = match self {
            Sphere | SchwefelN1_2 | SchwefelN2_21 | Step => (-100.0, 100.0),
            Rosenbrock | Ackley => (-32.0, 32.0),
            SchwefelN2_22 | XinSheYangF4 => (-10.0, 10.0),
            Quartic => (-1.28, 1.28),
            Elliptic | BentCigar | Discus | Rastrigin | NCRastrigin => (-5.12, 5.12),
            Griewank => (-600.0, 600.0),
            Schwefel => (-500.0, 500.0),
            Weierstrass => (-0.5, 0.5),
            Penalized | Penalized2 => (-50.0, 50.0),
            InvertedVincent => (0.25, 10.0),
        };
        Bounds::from_table(lo, hi)
    }

    /// True only for Quartic, whose value carries a uniform `[0, 1)` term.
    pub fn is_noisy(self) -> bool {
        self == FunctionId::Quartic
    }

    /// Coordinate repeated across the minimizer `x*`.
    ///
    /// Penalized and Penalized2 report their true minimizers (`-1` and `1`);
    /// Inverted Vincent keeps the listed origin even though it lies outside
    /// the range.
    pub fn optimum_coord(self) -> f64 {
        use FunctionId::*;
        match self {
            Rosenbrock | Penalized2 => 1.0,
            Step => -0.5,
            Schwefel => SCHWEFEL_OPTIMUM_COORD,
            Penalized => -1.0,
            _ => 0.0,
        }
    }

    /// Listed optimum value; `None` for Quartic.
    pub fn optimum_value(self) -> Option<f64> {
        match self {
            FunctionId::Quartic => None,
            FunctionId::Schwefel => Some(SCHWEFEL_OPTIMUM_VALUE),
            _ => Some(0.0),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// A benchmark function at a fixed dimension, with its metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    id: FunctionId,
    dimension: usize,
    bounds: Bounds,
    optimum_location: Option<Vec<f64>>,
    optimum_value: Option<f64>,
    /// Weierstrass constant term `D * sum_j a^j cos(pi b^j)`.
    weierstrass_offset: f64,
}

impl ObjectiveSpec {
    /// Instance of `id` with `dimension` variables.
    pub fn new(id: FunctionId, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidDimension);
        }
        let weierstrass_offset = if id == FunctionId::Weierstrass {
            dimension as f64 * weierstrass_term(0.0)
        } else {
            0.0
        };
        Ok(Self {
            id,
            dimension,
            bounds: id.bounds(),
            optimum_location: Some(vec![id.optimum_coord(); dimension]),
            optimum_value: id.optimum_value(),
            weierstrass_offset,
        })
    }

    /// Function identity.
    pub fn id(&self) -> FunctionId {
        self.id
    }

    /// Number of variables.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Search range.
    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Listed minimizer.
    pub fn optimum_location(&self) -> Option<&[f64]> {
        self.optimum_location.as_deref()
    }

    /// Listed minimum value.
    pub fn optimum_value(&self) -> Option<f64> {
        self.optimum_value
    }

    /// Landscape class.
    pub fn modality(&self) -> Modality {
        self.id.modality()
    }

    /// True only for Quartic.
    pub fn noisy(&self) -> bool {
        self.id.is_noisy()
    }

    /// Unchecked evaluation; `x.len()` must equal the dimension.
    pub(crate) fn value(&self, x: &[f64], rng: &mut RngStream) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        use FunctionId::*;
        let d = x.len() as f64;
        match self.id {
            Sphere => x.iter().map(|v| v * v).sum(),
            Rosenbrock => x
                .windows(2)
                .map(|w| {
                    let a = w[0] * w[0] - w[1];
                    let b = 1.0 - w[0];
                    100.0 * a * a + b * b
                })
                .sum(),
            SchwefelN1_2 => {
                // inner sum of squares, as listed
                let mut prefix = 0.0;
                x.iter()
                    .map(|v| {
                        prefix += v * v;
                        prefix * prefix
                    })
                    .sum()
            }
            SchwefelN2_21 => x.iter().fold(0.0, |m, v| f64::max(m, fabs(*v))),
            SchwefelN2_22 => {
                let sum: f64 = x.iter().map(|v| fabs(*v)).sum();
                let prod: f64 = x.iter().map(|v| fabs(*v)).product();
                sum + prod
            }
            Step => x.iter().map(|v| (v + 0.5) * (v + 0.5)).sum(),
            Quartic => {
                let det: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * (v * v) * (v * v))
                    .sum();
                det + rng.uniform()
            }
            Elliptic => {
                let n = x.len();
                x.iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let e = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                        v * v * libm::pow(1e6, e)
                    })
                    .sum()
            }
            BentCigar => x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>(),
            Discus => 1e6 * x[0] * x[0] + x[1..].iter().map(|v| v * v).sum::<f64>(),
            Rastrigin => x.iter().map(|&v| rastrigin_term(v)).sum(),
            Ackley => {
                let sq: f64 = x.iter().map(|v| v * v).sum();
                let cs: f64 = x.iter().map(|&v| cos(TAU * v)).sum();
                E + 20.0 - 20.0 * exp(-0.2 * sqrt(sq / d)) - exp(cs / d)
            }
            Griewank => {
                let sq: f64 = x.iter().map(|v| v * v).sum();
                let prod: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| cos(v / sqrt((i + 1) as f64)))
                    .product();
                sq / 4000.0 - prod + 1.0
            }
            Schwefel => -x.iter().map(|&v| v * sin(sqrt(fabs(v)))).sum::<f64>() / d,
            Weierstrass => {
                x.iter().map(|&v| weierstrass_term(v)).sum::<f64>() - self.weierstrass_offset
            }
            NCRastrigin => x
                .iter()
                .map(|&v| rastrigin_term(if v < 0.5 { v } else { round(2.0 * v) / 2.0 }))
                .sum(),
            Penalized => {
                let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
                let n = x.len();
                let s1 = sin(PI * y(x[0]));
                let inner: f64 = x
                    .windows(2)
                    .map(|w| {
                        let yi = y(w[0]) - 1.0;
                        let s = sin(PI * y(w[1]));
                        yi * yi * (1.0 + 10.0 * s * s)
                    })
                    .sum();
                let last = y(x[n - 1]) - 1.0;
                PI / d * (s1 * s1 + inner) + last * last + penalty(x, 10.0, 100.0, 4)
            }
            Penalized2 => {
                let n = x.len();
                let s1 = sin(PI * x[0]);
                let inner: f64 = x
                    .windows(2)
                    .map(|w| {
                        let s = sin(3.0 * PI * w[1]);
                        (w[0] - 1.0) * (w[0] - 1.0) * (1.0 + s * s)
                    })
                    .sum();
                let xd = x[n - 1];
                let sd = sin(TAU * xd);
                0.1 * (s1 * s1 + inner) + (xd - 1.0) * (xd - 1.0) * (1.0 + sd * sd)
                    + penalty(x, 5.0, 100.0, 4)
            }
            XinSheYangF4 => {
                let a: f64 = x[1..].iter().map(|&v| sin(v) * sin(v)).sum();
                let b: f64 = x.iter().map(|v| v * v).sum();
                let c: f64 = x
                    .iter()
                    .map(|&v| {
                        let s = sin(sqrt(fabs(v)));
                        s * s
                    })
                    .sum();
                (a - exp(-b)) * exp(-c)
            }
            InvertedVincent => 1.0 + x.iter().map(|&v| sin(10.0 * log(v))).sum::<f64>() / d,
        }
    }
}

#[inline]
fn rastrigin_term(v: f64) -> f64 {
    v * v - 10.0 * cos(TAU * v) + 10.0
}

fn weierstrass_term(v: f64) -> f64 {
    let mut a = 1.0;
    let mut b = 1.0;
    let mut acc = 0.0;
    for _ in 0..=WEIERSTRASS_KMAX {
        acc += a * cos(TAU * b * (v + 0.5));
        a *= WEIERSTRASS_A;
        b *= WEIERSTRASS_B;
    }
    acc
}

fn penalty(x: &[f64], a: f64, k: f64, m: i32) -> f64 {
    x.iter()
        .map(|&v| {
            if v > a {
                k * libm::pow(v - a, m as f64)
            } else if v < -a {
                k * libm::pow(-v - a, m as f64)
            } else {
                0.0
            }
        })
        .sum()
}

impl Objective for ObjectiveSpec {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn evaluate(&self, x: &[f64], noise: &mut RngStream) -> f64 {
        self.value(x, noise)
    }
}

/// Evaluates the benchmark at `x`; `rng` is only drawn from for Quartic.
pub fn evaluate(spec: &ObjectiveSpec, x: &[f64], rng: &mut RngStream) -> Result<f64> {
    if x.len() != spec.dimension {
        return Err(Error::DimensionMismatch { expected: spec.dimension, actual: x.len() });
    }
    Ok(spec.value(x, rng))
}

/// `value - F(x*)`.
pub fn error_from_optimum(spec: &ObjectiveSpec, value: f64) -> Result<f64> {
    spec.optimum_value
        .map(|opt| value - opt)
        .ok_or(Error::MissingOptimum(spec.id.name()))
}
