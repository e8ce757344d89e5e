//! Harmonic alpha-Bloch seminorms and norms.
//!
//! `|||f||| = sup (1-|z|^2)^alpha (|f_z| + |f_zbar|)` and
//! `||f|| = |f(0)| + |||f|||`.

use serde::{Deserialize, Serialize};

use crate::disk::{DiskPoint, SamplingScheme, MAX_DEPTH};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicFunction;
use crate::supremum::{shell_maxima, supremum, SupremumResult};

/// The Bloch exponent `alpha > 0`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AlphaWeight(f64);

impl AlphaWeight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::ParameterDomain(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self(alpha))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `gap^alpha`.
    pub fn weight(self, gap: f64) -> f64 {
        if self.0 == 1.0 {
            gap
        } else {
            gap.powf(self.0)
        }
    }
}

/// `(1-|z|^2)^alpha (|f_z| + |f_zbar|)` at one point.
pub fn weighted_derivative(f: &HarmonicFunction, alpha: AlphaWeight, z: &DiskPoint) -> f64 {
    let m = f.wirtinger(z).magnitude();
    if m == 0.0 {
        return 0.0;
    }
    alpha.weight(z.gap()) * m
}

/// The seminorm `|||f|||`, estimated from below on `scheme`.
pub fn seminorm(f: &HarmonicFunction, alpha: AlphaWeight, scheme: &SamplingScheme) -> Result<SupremumResult> {
    supremum(|z: &DiskPoint| Ok(weighted_derivative(f, alpha, z)), scheme)
}

/// `|f(0)| + |||f|||`.
pub fn norm(f: &HarmonicFunction, alpha: AlphaWeight, scheme: &SamplingScheme) -> Result<f64> {
    Ok(f.value_at_origin().norm() + seminorm(f, alpha, scheme)?.value)
}

/// Default tail threshold of the little-Bloch test.
pub const LITTLE_BLOCH_THRESHOLD: f64 = 1e-6;
/// Number of trailing shells inspected by the little-Bloch test.
pub const LITTLE_BLOCH_TAIL: usize = 5;

/// Per-shell maxima of the weighted derivative and the decay verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittleBlochProfile {
    /// `(radius, max)` for shells `j = 1..=shells`.
    pub shell_maxima: Vec<(f64, f64)>,
    /// Aitken limit of the last three maxima, when defined.
    pub projected_limit: Option<f64>,
    pub threshold: f64,
    pub verdict: bool,
}

/// Little-Bloch test with the default threshold.
pub fn little_bloch_profile(f: &HarmonicFunction, alpha: AlphaWeight, shells: u32) -> Result<LittleBlochProfile> {
    little_bloch_profile_with(f, alpha, shells, LITTLE_BLOCH_THRESHOLD)
}

/// Decides whether the weighted derivative of `f` tends to 0 at the circle.
///
/// The verdict holds when the last shell maxima are non-increasing and
/// either the last maximum or its Aitken extrapolation lies below
/// `threshold`.
pub fn little_bloch_profile_with(
    f: &HarmonicFunction,
    alpha: AlphaWeight,
    shells: u32,
    threshold: f64,
) -> Result<LittleBlochProfile> {
    if !(3..=MAX_DEPTH).contains(&shells) {
        return Err(Error::ParameterDomain(format!("shells must be in 3..={MAX_DEPTH}, got {shells}")));
    }
    let scheme = SamplingScheme {
        radial_levels: shells,
        angular_base: 256,
        ..SamplingScheme::default()
    };
    let maxima = shell_maxima(|z: &DiskPoint| Ok(weighted_derivative(f, alpha, z)), &scheme)?;
    let values: Vec<f64> = maxima.iter().map(|m| m.value).collect();
    let tail = &values[values.len().saturating_sub(LITTLE_BLOCH_TAIL)..];
    let decreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    let n = values.len();
    let projected_limit = aitken(values[n - 3], values[n - 2], values[n - 1]).map(|l| l.max(0.0));
    let last = values[n - 1];
    let small = last <= threshold || projected_limit.is_some_and(|l| l <= threshold);
    Ok(LittleBlochProfile {
        shell_maxima: maxima.iter().map(|m| (m.radius, m.value)).collect(),
        projected_limit,
        threshold,
        verdict: decreasing && small,
    })
}

/// Aitken's delta-squared limit of `x0, x1, x2`.
pub(crate) fn aitken(x0: f64, x1: f64, x2: f64) -> Option<f64> {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let den = d2 - d1;
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let l = x2 - d2 * d2 / den;
    l.is_finite().then_some(l)
}
