//! Analytic maps on the disk with closed-form derivatives.
//!
//! Every representation evaluates to a [`MapEval`]: the value, the complex
//! derivative, and `1 - |value|^2`. The last one is computed from the
//! argument's own gap wherever a closed form exists (rotations, dilations,
//! automorphisms, Blaschke products, powers), which keeps ratios such as
//! `(1-|z|^2) / (1-|phi(z)|^2)` accurate at `|z| = 1 - 2^-40`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::disk::DiskPoint;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Powers above this exponent are evaluated through logarithms.
pub const LOG_DOMAIN_EXPONENT: u32 = 64;

/// Value, derivative and boundary gap of a map at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapEval {
    pub value: Complex64,
    pub deriv: Complex64,
    /// `1 - |value|^2`; negative when the value leaves the disk.
    pub gap: f64,
}

impl MapEval {
    pub(crate) fn image(&self) -> DiskPoint {
        DiskPoint::raw(self.value, self.gap)
    }
}

/// An analytic function on the unit disk.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticMap {
    Identity,
    /// Finite power series `sum c_k z^k`.
    Polynomial(Vec<Complex64>),
    /// `z -> s z`.
    Dilation(Complex64),
    /// `z -> e^{i theta} z`.
    Rotation(f64),
    /// `z -> (a - z) / (1 - conj(a) z)`.
    Automorphism(Complex64),
    /// `z -> e^{i theta} prod (z - a_k) / (1 - conj(a_k) z)`.
    Blaschke { zeros: Vec<Complex64>, theta: f64 },
    /// `z -> -log(1 - conj(zeta) z)` with `|zeta| = 1`.
    LogPole(Complex64),
    /// `z -> f(z)^n`.
    Power(Arc<AnalyticMap>, u32),
    /// `outer(inner(z))`.
    Compose {
        outer: Arc<AnalyticMap>,
        inner: Arc<AnalyticMap>,
    },
    /// `sum c_k f_k(z)`.
    Combination(Vec<(Complex64, AnalyticMap)>),
}

fn generic_gap(w: Complex64) -> f64 {
    let m = w.norm();
    (1.0 - m) * (1.0 + m)
}

/// `w^n` and `w^(n-1)` with an accurate modulus for large `n`.
fn powers(w: Complex64, gap: f64, n: u32) -> (Complex64, Complex64) {
    if n <= LOG_DOMAIN_EXPONENT {
        let prev = w.powu(n - 1);
        return (prev * w, prev);
    }
    if w == ZERO {
        return (ZERO, ZERO);
    }
    let log_mod = if gap > 0.0 && gap < 0.5 {
        0.5 * (-gap).ln_1p()
    } else {
        w.norm().ln()
    };
    let arg = w.arg();
    let nf = n as f64;
    (
        Complex64::from_polar((nf * log_mod).exp(), nf * arg),
        Complex64::from_polar(((nf - 1.0) * log_mod).exp(), (nf - 1.0) * arg),
    )
}

/// `1 - |w|^(2n)` from `gap = 1 - |w|^2`.
fn power_gap(w: Complex64, gap: f64, n: u32) -> f64 {
    if gap > 0.0 && gap < 0.5 {
        -(n as f64 * (-gap).ln_1p()).exp_m1()
    } else {
        1.0 - w.norm_sqr().powi(n as i32)
    }
}

impl AnalyticMap {
    pub fn eval(&self, z: &DiskPoint) -> MapEval {
        let w = z.value();
        match self {
            AnalyticMap::Identity => MapEval {
                value: w,
                deriv: ONE,
                gap: z.gap(),
            },
            AnalyticMap::Polynomial(c) => {
                let mut value = ZERO;
                let mut deriv = ZERO;
                for &ck in c.iter().rev() {
                    deriv = deriv * w + value;
                    value = value * w + ck;
                }
                MapEval {
                    value,
                    deriv,
                    gap: generic_gap(value),
                }
            }
            AnalyticMap::Dilation(s) => {
                let s2 = s.norm_sqr();
                MapEval {
                    value: s * w,
                    deriv: *s,
                    gap: (1.0 - s2) + s2 * z.gap(),
                }
            }
            AnalyticMap::Rotation(theta) => {
                let u = Complex64::from_polar(1.0, *theta);
                MapEval {
                    value: u * w,
                    deriv: u,
                    gap: z.gap(),
                }
            }
            AnalyticMap::Automorphism(a) => {
                let den = ONE - a.conj() * w;
                let a_gap = 1.0 - a.norm_sqr();
                MapEval {
                    value: (a - w) / den,
                    deriv: -a_gap / (den * den),
                    gap: a_gap * z.gap() / den.norm_sqr(),
                }
            }
            AnalyticMap::Blaschke { zeros, theta } => {
                let mut factors = Vec::with_capacity(zeros.len());
                let mut log_mod_sq = 0.0;
                for a in zeros {
                    let den = ONE - a.conj() * w;
                    let a_gap = 1.0 - a.norm_sqr();
                    let b = (w - a) / den;
                    let db = a_gap / (den * den);
                    let g = a_gap * z.gap() / den.norm_sqr();
                    log_mod_sq += (-g).ln_1p();
                    factors.push((b, db));
                }
                let mut value = Complex64::from_polar(1.0, *theta);
                for (b, _) in &factors {
                    value *= b;
                }
                let mut deriv = ZERO;
                for (k, (_, db)) in factors.iter().enumerate() {
                    let mut term = *db;
                    for (j, (b, _)) in factors.iter().enumerate() {
                        if j != k {
                            term *= b;
                        }
                    }
                    deriv += term;
                }
                deriv *= Complex64::from_polar(1.0, *theta);
                MapEval {
                    value,
                    deriv,
                    gap: -log_mod_sq.exp_m1(),
                }
            }
            AnalyticMap::LogPole(zeta) => {
                let den = ONE - zeta.conj() * w;
                let value = -den.ln();
                MapEval {
                    value,
                    deriv: zeta.conj() / den,
                    gap: generic_gap(value),
                }
            }
            AnalyticMap::Power(inner, n) => {
                let e = inner.eval(z);
                let n = *n;
                if n == 0 {
                    return MapEval {
                        value: ONE,
                        deriv: ZERO,
                        gap: 0.0,
                    };
                }
                let (value, prev) = powers(e.value, e.gap, n);
                MapEval {
                    value,
                    deriv: prev * e.deriv * n as f64,
                    gap: power_gap(e.value, e.gap, n),
                }
            }
            AnalyticMap::Compose { outer, inner } => {
                let e = inner.eval(z);
                let o = outer.eval(&e.image());
                MapEval {
                    value: o.value,
                    deriv: o.deriv * e.deriv,
                    gap: o.gap,
                }
            }
            AnalyticMap::Combination(terms) => {
                let mut value = ZERO;
                let mut deriv = ZERO;
                for (c, f) in terms {
                    let e = f.eval(z);
                    value += c * e.value;
                    deriv += c * e.deriv;
                }
                MapEval {
                    value,
                    deriv,
                    gap: generic_gap(value),
                }
            }
        }
    }

    pub fn value(&self, z: &DiskPoint) -> Complex64 {
        self.eval(z).value
    }

    pub fn derivative(&self, z: &DiskPoint) -> Complex64 {
        self.eval(z).deriv
    }

    pub fn zero() -> Self {
        AnalyticMap::Polynomial(vec![])
    }

    pub fn constant(c: Complex64) -> Self {
        AnalyticMap::Polynomial(vec![c])
    }

    /// `z^n`.
    pub fn monomial(n: u32) -> Self {
        match n {
            0 => Self::constant(ONE),
            1 => AnalyticMap::Identity,
            _ => AnalyticMap::Power(Arc::new(AnalyticMap::Identity), n),
        }
    }

    pub fn power(&self, n: u32) -> Self {
        AnalyticMap::Power(Arc::new(self.clone()), n)
    }

    /// `self(inner(z))`.
    pub fn after(&self, inner: &AnalyticMap) -> Self {
        match (self, inner) {
            (AnalyticMap::Identity, _) => inner.clone(),
            (_, AnalyticMap::Identity) => self.clone(),
            _ => AnalyticMap::Compose {
                outer: Arc::new(self.clone()),
                inner: Arc::new(inner.clone()),
            },
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        match self {
            AnalyticMap::Polynomial(coeffs) => {
                AnalyticMap::Polynomial(coeffs.iter().map(|k| k * c).collect())
            }
            AnalyticMap::Combination(terms) => {
                AnalyticMap::Combination(terms.iter().map(|(k, f)| (k * c, f.clone())).collect())
            }
            _ => AnalyticMap::Combination(vec![(c, self.clone())]),
        }
    }

    /// Linear combination `sum c_k f_k`.
    pub fn combine(terms: Vec<(Complex64, AnalyticMap)>) -> Self {
        let mut flat = Vec::with_capacity(terms.len());
        for (c, f) in terms {
            match f {
                AnalyticMap::Combination(inner) => {
                    flat.extend(inner.into_iter().map(|(k, g)| (c * k, g)))
                }
                AnalyticMap::Polynomial(ref p) if p.is_empty() => {}
                other => flat.push((c, other)),
            }
        }
        AnalyticMap::Combination(flat)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnalyticMap::Polynomial(c) => c.iter().all(|k| *k == ZERO),
            AnalyticMap::Combination(t) => t.iter().all(|(c, f)| *c == ZERO || f.is_zero()),
            _ => false,
        }
    }
}

fn fmt_c(c: &Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

pub(crate) fn fmt_list(v: &[Complex64]) -> String {
    let items: Vec<String> = v.iter().map(fmt_c).collect();
    format!("[{}]", items.join(", "))
}

pub(crate) fn fmt_complex(c: &Complex64) -> String {
    fmt_c(c)
}

impl fmt::Display for AnalyticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticMap::Identity => write!(f, "identity"),
            AnalyticMap::Polynomial(c) => write!(f, "poly coeffs={}", fmt_list(c)),
            AnalyticMap::Dilation(s) => write!(f, "dilation s={}", fmt_c(s)),
            AnalyticMap::Rotation(t) => write!(f, "rotation theta={t}"),
            AnalyticMap::Automorphism(a) => write!(f, "automorphism a={}", fmt_c(a)),
            AnalyticMap::Blaschke { zeros, theta } => {
                write!(f, "blaschke zeros={}", fmt_list(zeros))?;
                if *theta != 0.0 {
                    write!(f, " theta={theta}")?;
                }
                Ok(())
            }
            AnalyticMap::LogPole(z) => write!(f, "logpole zeta={}", fmt_c(z)),
            AnalyticMap::Power(m, n) => write!(f, "power n={n} ({m})"),
            AnalyticMap::Compose { outer, inner } => write!(f, "compose ({outer}) ({inner})"),
            AnalyticMap::Combination(t) => {
                let parts: Vec<String> = t
                    .iter()
                    .map(|(c, m)| format!("{} * ({m})", fmt_c(c)))
                    .collect();
                write!(f, "sum [{}]", parts.join(" + "))
            }
        }
    }
}
