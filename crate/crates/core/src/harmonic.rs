//! Harmonic functions `f = h + conj(g)` in canonical form.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::AnalyticMap;
use crate::disk::{hyperbolic, translate_from_origin, DiskPoint};
use crate::symbol::Symbol;

/// `f = h + conj(g)` with `h`, `g` analytic on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicFunction {
    pub h: AnalyticMap,
    pub g: AnalyticMap,
}

/// The pair `(f_z, f_zbar)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wirtinger {
    pub dz: Complex64,
    pub dzbar: Complex64,
}

impl Wirtinger {
    /// `|f_z| + |f_zbar|`, the quantity weighted in the Bloch norms.
    pub fn magnitude(&self) -> f64 {
        self.dz.norm() + self.dzbar.norm()
    }
}

impl HarmonicFunction {
    pub fn new(h: AnalyticMap, g: AnalyticMap) -> Self {
        Self { h, g }
    }

    pub fn zero() -> Self {
        Self::new(AnalyticMap::zero(), AnalyticMap::zero())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(AnalyticMap::constant(c), AnalyticMap::zero())
    }

    pub fn analytic(h: AnalyticMap) -> Self {
        Self::new(h, AnalyticMap::zero())
    }

    /// `z^n + conj(z)^n`.
    pub fn znbar(n: u32) -> Self {
        Self::new(AnalyticMap::monomial(n), AnalyticMap::monomial(n))
    }

    pub fn eval(&self, z: &DiskPoint) -> Complex64 {
        self.h.value(z) + self.g.value(z).conj()
    }

    pub fn wirtinger(&self, z: &DiskPoint) -> Wirtinger {
        Wirtinger {
            dz: self.h.derivative(z),
            dzbar: self.g.derivative(z).conj(),
        }
    }

    /// `f o phi`.
    pub fn compose(&self, phi: &Symbol) -> Self {
        self.compose_map(phi.map())
    }

    /// Composition with a map the caller knows to be a self-map.
    pub(crate) fn compose_map(&self, phi: &AnalyticMap) -> Self {
        Self::new(self.h.after(phi), self.g.after(phi))
    }

    /// `c * f`; the antianalytic part picks up `conj(c)`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(self.h.scaled(c), self.g.scaled(c.conj()))
    }

    /// `sum c_k f_k`.
    pub fn combine(terms: &[(Complex64, &HarmonicFunction)]) -> Self {
        Self::new(
            AnalyticMap::combine(terms.iter().map(|(c, f)| (*c, f.h.clone())).collect()),
            AnalyticMap::combine(terms.iter().map(|(c, f)| (c.conj(), f.g.clone())).collect()),
        )
    }

    pub fn sub(&self, other: &HarmonicFunction) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::combine(&[(one, self), (-one, other)])
    }

    /// `f - c`.
    pub fn shifted(&self, c: Complex64) -> Self {
        let h = AnalyticMap::combine(vec![
            (Complex64::new(1.0, 0.0), self.h.clone()),
            (Complex64::new(1.0, 0.0), AnalyticMap::constant(-c)),
        ]);
        Self::new(h, self.g.clone())
    }

    pub fn value_at_origin(&self) -> Complex64 {
        self.eval(&DiskPoint::origin())
    }

    /// Sampled estimate of the Lipschitz number
    /// `sup |f(z) - f(w)| / varrho(z, w)`.
    ///
    /// Uses only values of `f`, never its derivatives. The budget is split
    /// between short hyperbolic steps from random base points, pairs of a
    /// deep boundary point with an interior point, unrestricted random pairs,
    /// and a final coordinate search around the best short step.
    pub fn lipschitz_number(&self, pair_budget: usize, seed: u64) -> LipschitzEstimate {
        let budget = pair_budget.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = LipschitzEstimate {
            value: 0.0,
            pair: (DiskPoint::origin(), DiskPoint::origin()),
            pairs_used: 0,
        };
        let mut best_step: Option<Step> = None;

        let local = budget * 2 / 5;
        let boundary = budget / 5;
        let uniform = budget / 5;
        let polish = budget - local - boundary - uniform;

        for _ in 0..local {
            let step = Step {
                depth: rng.gen_range(0.0..12.0),
                theta: rng.gen_range(0.0..TAU),
                dir: rng.gen_range(0.0..TAU),
                log_dist: rng.gen_range(-9.2..0.0),
            };
            if let Some((q, z, w)) = self.step_quotient(&step) {
                best.pairs_used += 1;
                if q > best.value {
                    best.value = q;
                    best.pair = (z, w);
                    best_step = Some(step);
                }
            }
        }
        for _ in 0..boundary {
            let z = DiskPoint::from_depth(rng.gen_range(8.0..40.0), rng.gen_range(0.0..TAU))
                .expect("depth in range");
            let w = DiskPoint::from_depth(rng.gen_range(0.0..3.0), rng.gen_range(0.0..TAU))
                .expect("depth in range");
            best.pairs_used += 1;
            self.offer(&mut best, z, w);
        }
        for _ in 0..uniform {
            let z = DiskPoint::from_depth(rng.gen_range(0.0..20.0), rng.gen_range(0.0..TAU))
                .expect("depth in range");
            let w = DiskPoint::from_depth(rng.gen_range(0.0..20.0), rng.gen_range(0.0..TAU))
                .expect("depth in range");
            best.pairs_used += 1;
            if self.offer(&mut best, z, w) {
                best_step = None;
            }
        }

        if let Some(mut step) = best_step {
            let mut incumbent = best.value;
            let mut scale = [0.25, 0.25, 0.25, 0.5];
            let mut left = polish;
            while left >= 8 && scale[0] > 1e-9 {
                let mut improved = false;
                for coord in 0..4 {
                    for sign in [-1.0, 1.0] {
                        let mut trial = step;
                        match coord {
                            0 => trial.depth = (trial.depth + sign * scale[0]).clamp(0.0, 45.0),
                            1 => trial.theta += sign * scale[1],
                            2 => trial.dir += sign * scale[2],
                            _ => trial.log_dist = (trial.log_dist + sign * scale[3]).clamp(-11.5, 1.0),
                        }
                        left -= 1;
                        if let Some((q, z, w)) = self.step_quotient(&trial) {
                            best.pairs_used += 1;
                            if q > incumbent {
                                incumbent = q;
                                step = trial;
                                improved = true;
                                if q > best.value {
                                    best.value = q;
                                    best.pair = (z, w);
                                }
                            }
                        }
                    }
                }
                if !improved {
                    for s in scale.iter_mut() {
                        *s *= 0.5;
                    }
                }
            }
        }
        best
    }

    fn quotient(&self, z: &DiskPoint, w: &DiskPoint) -> Option<f64> {
        let d = hyperbolic(z, w).ok()?;
        if !(d > 0.0) {
            return None;
        }
        let q = (self.eval(z) - self.eval(w)).norm() / d;
        q.is_finite().then_some(q)
    }

    fn offer(&self, best: &mut LipschitzEstimate, z: DiskPoint, w: DiskPoint) -> bool {
        match self.quotient(&z, &w) {
            Some(q) if q > best.value => {
                best.value = q;
                best.pair = (z, w);
                true
            }
            _ => false,
        }
    }

    fn step_quotient(&self, s: &Step) -> Option<(f64, DiskPoint, DiskPoint)> {
        let z = DiskPoint::from_depth(s.depth, s.theta).ok()?;
        let rho = s.log_dist.exp().tanh();
        let u = DiskPoint::from_polar(rho, s.dir).ok()?;
        let w = translate_from_origin(&z, &u);
        let w = DiskPoint::new(w.value()).ok().map(|_| w)?;
        self.quotient(&z, &w).map(|q| (q, z, w))
    }
}

/// Hyperbolic step from a base point: depth/angle of the base, direction and
/// log of the hyperbolic length.
#[derive(Clone, Copy, Debug)]
struct Step {
    depth: f64,
    theta: f64,
    dir: f64,
    log_dist: f64,
}

/// Lower estimate of the Lipschitz number with its maximizing pair.
#[derive(Clone, Copy, Debug)]
pub struct LipschitzEstimate {
    pub value: f64,
    pub pair: (DiskPoint, DiskPoint),
    pub pairs_used: usize,
}

impl fmt::Display for HarmonicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h=({}) g=({})", self.h, self.g)
    }
}
