//! Unit-disk primitives: points with an exact boundary gap, the two
//! hyperbolic distances, and the boundary-refined polar sampling schemes
//! used by every supremum computation in the crate.
//!
//! Points keep `1 - |z|^2` alongside `z`. Close to the unit circle that
//! quantity cannot be recovered from `z` without catastrophic cancellation,
//! and every weighted derivative in the crate is a power of it.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deepest shell index: `1 - 2^-52` is the last radius below 1 in `f64`.
pub const MAX_DEPTH: u32 = 52;

/// A point of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
    gap: f64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        let m = z.norm();
        if !(m < 1.0) {
            return Err(Error::OutsideDisk(z));
        }
        Ok(Self {
            z,
            gap: (1.0 - m) * (1.0 + m),
        })
    }

    pub fn origin() -> Self {
        Self {
            z: Complex64::new(0.0, 0.0),
            gap: 1.0,
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) || !theta.is_finite() {
            return Err(Error::OutsideDisk(Complex64::from_polar(r, theta)));
        }
        Ok(Self {
            z: Complex64::from_polar(r, theta),
            gap: (1.0 - r) * (1.0 + r),
        })
    }

    /// Point at radius `1 - 2^-depth`; `depth = 0` is the origin.
    pub fn from_depth(depth: f64, theta: f64) -> Result<Self> {
        let d = (-depth).exp2();
        let r = 1.0 - d;
        if !(depth >= 0.0) || !(r < 1.0) || !theta.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "depth {depth} does not give a radius below 1"
            )));
        }
        Ok(Self {
            z: Complex64::from_polar(r, theta),
            gap: d * (2.0 - d),
        })
    }

    /// Unchecked constructor for images of self-maps whose gap was computed
    /// by a closed form.
    pub(crate) fn raw(z: Complex64, gap: f64) -> Self {
        Self { z, gap }
    }

    pub fn value(&self) -> Complex64 {
        self.z
    }

    /// `1 - |z|^2`, accurate near the boundary.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }
}

/// Pseudo-hyperbolic distance `|z - w| / |1 - conj(z) w|`.
pub fn pseudo_hyperbolic(z: &DiskPoint, w: &DiskPoint) -> f64 {
    let num = (z.z - w.z).norm();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - z.z.conj() * w.z).norm();
    (num / den).min(1.0 - f64::EPSILON / 2.0)
}

/// `1 - rho(z, w)^2` through `(1-|z|^2)(1-|w|^2) / |1 - conj(z) w|^2`.
fn pseudo_hyperbolic_gap(z: &DiskPoint, w: &DiskPoint) -> f64 {
    let den = (Complex64::new(1.0, 0.0) - z.z.conj() * w.z).norm_sqr();
    z.gap * w.gap / den
}

/// Hyperbolic distance `artanh(rho(z, w))`.
///
/// Far from the diagonal the logarithm is taken of the exact complement
/// `1 - rho^2`, so points within `2^-52` of the circle still give finite
/// distances. Fails only if that complement underflows.
pub fn hyperbolic(z: &DiskPoint, w: &DiskPoint) -> Result<f64> {
    let rho = pseudo_hyperbolic(z, w);
    if rho < 0.5 {
        return Ok(rho.atanh());
    }
    let gap = pseudo_hyperbolic_gap(z, w);
    if !(gap > 0.0) || !gap.is_finite() {
        return Err(Error::DistanceOverflow(rho));
    }
    // artanh(r) = ln(1 + r) - ln(1 - r^2) / 2
    Ok(rho.ln_1p() - 0.5 * gap.ln())
}

/// Disk automorphism `u -> (a + u) / (1 + conj(a) u)`, sending 0 to `a`.
pub(crate) fn translate_from_origin(a: &DiskPoint, u: &DiskPoint) -> DiskPoint {
    let one = Complex64::new(1.0, 0.0);
    let den = one + a.z.conj() * u.z;
    let w = (a.z + u.z) / den;
    DiskPoint::raw(w, a.gap * u.gap / den.norm_sqr())
}

/// Polar sampling scheme with shells at `r_j = 1 - 2^-j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingScheme {
    /// Number of shells `J`.
    pub radial_levels: u32,
    /// Angular samples on the innermost shell.
    pub angular_base: usize,
    /// Per-shell multiplier of the angular count.
    pub angular_growth: f64,
    /// Local refinement passes around incumbent maxima.
    pub refinement_rounds: u32,
    pub seed: u64,
    /// Seeded angular offset per shell.
    pub jitter: bool,
    /// Upper bound on the number of shell samples.
    pub point_cap: usize,
}

impl Default for SamplingScheme {
    fn default() -> Self {
        Self {
            radial_levels: 40,
            angular_base: 64,
            angular_growth: 1.0,
            refinement_rounds: 3,
            seed: 0,
            jitter: false,
            point_cap: 20_000_000,
        }
    }
}

/// One circle of a sampling scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shell {
    pub index: u32,
    pub count: usize,
    /// Angular offset as a fraction of the spacing.
    pub offset: f64,
}

impl Shell {
    pub fn depth(&self) -> f64 {
        self.index as f64
    }

    pub fn radius(&self) -> f64 {
        1.0 - (-(self.index as f64)).exp2()
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.count as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        (k as f64 + self.offset) * self.spacing()
    }

    pub fn point(&self, k: usize) -> DiskPoint {
        DiskPoint::from_depth(self.depth(), self.angle(k)).expect("shell depth validated")
    }

    pub fn points(&self) -> impl Iterator<Item = DiskPoint> + '_ {
        (0..self.count).map(move |k| self.point(k))
    }
}

impl SamplingScheme {
    pub fn with_levels(radial_levels: u32) -> Self {
        Self {
            radial_levels,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_levels == 0 || self.radial_levels > MAX_DEPTH {
            return Err(Error::ParameterDomain(format!(
                "radial_levels must be in 1..={MAX_DEPTH}, got {}",
                self.radial_levels
            )));
        }
        if self.angular_base == 0 {
            return Err(Error::ParameterDomain("angular_base must be positive".into()));
        }
        if !(self.angular_growth > 0.0) || !self.angular_growth.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "angular_growth must be positive, got {}",
                self.angular_growth
            )));
        }
        let requested = self.implied_count();
        if requested > self.point_cap {
            return Err(Error::ResourceBound {
                requested,
                cap: self.point_cap,
            });
        }
        Ok(())
    }

    fn count_on(&self, j: u32) -> usize {
        let c = self.angular_base as f64 * self.angular_growth.powi(j as i32 - 1);
        if c >= usize::MAX as f64 / 4.0 {
            usize::MAX / 4
        } else {
            (c.round() as usize).max(1)
        }
    }

    /// Total number of shell samples the scheme implies.
    pub fn implied_count(&self) -> usize {
        (1..=self.radial_levels)
            .map(|j| self.count_on(j))
            .fold(0usize, |acc, c| acc.saturating_add(c))
    }

    pub fn shells(&self) -> Result<Vec<Shell>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((1..=self.radial_levels)
            .map(|j| Shell {
                index: j,
                count: self.count_on(j),
                offset: if self.jitter { rng.gen::<f64>() } else { 0.0 },
            })
            .collect())
    }
}

/// All shell samples of a scheme, ordered by shell then angle.
pub fn disk_samples(scheme: &SamplingScheme) -> Result<Vec<DiskPoint>> {
    let shells = scheme.shells()?;
    let mut out = Vec::with_capacity(scheme.implied_count());
    for shell in &shells {
        out.extend(shell.points());
    }
    Ok(out)
}
