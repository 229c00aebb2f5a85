//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Each panel is evaluated with the 15-point Kronrod rule; the difference to
//! the embedded 7-point Gauss rule is the error estimate. Panels whose
//! estimate exceeds their share of the tolerance are bisected, with the
//! tolerance halved, up to `max_subdivisions` levels deep. Evaluation order
//! is fixed, so results are bit-for-bit reproducible.

#![allow(clippy::excessive_precision)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    /// Maximum bisection depth.
    pub max_subdivisions: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_subdivisions: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be positive and finite, got {}",
                self.abs_tol
            )));
        }
        Ok(())
    }
}

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-7 nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    kronrod: f64,
    error: f64,
    abs_mass: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_mass = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_mass += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Panel {
        kronrod: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_mass: abs_mass * half.abs(),
    }
}

#[derive(Default)]
struct Tally {
    estimate: f64,
    error: f64,
    exhausted: bool,
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
    tally: &mut Tally,
) {
    let panel = kronrod15(f, a, b);
    // Below this the Gauss/Kronrod difference is rounding noise.
    let roundoff = 50.0 * f64::EPSILON * panel.abs_mass;
    if panel.error <= tol || panel.error <= roundoff {
        tally.estimate += panel.kronrod;
        tally.error += panel.error;
        return;
    }
    let mid = 0.5 * (a + b);
    if depth >= max_depth || mid <= a || mid >= b {
        tally.estimate += panel.kronrod;
        tally.error += panel.error;
        tally.exhausted = true;
        return;
    }
    refine(f, a, mid, 0.5 * tol, depth + 1, max_depth, tally);
    refine(f, mid, b, 0.5 * tol, depth + 1, max_depth, tally);
}

/// Integrates `f` over `[a, b]` to absolute accuracy `q.abs_tol`.
///
/// `f` should be smooth on `[a, b]`; split the range at kinks before calling.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidConfig(format!(
            "integration bounds must be finite with a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut tally = Tally::default();
    refine(&f, a, b, q.abs_tol, 0, q.max_subdivisions, &mut tally);
    if tally.exhausted || !tally.estimate.is_finite() {
        return Err(Error::Quadrature {
            a,
            b,
            estimate: tally.estimate,
            achieved: tally.error,
            requested: q.abs_tol,
        });
    }
    Ok(tally.estimate)
}
