//! Validated analytic self-maps of the disk and the annular bands
//! `D_n = {z : r_n <= |phi(z)| < r_(n+1)}`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{fmt_complex, fmt_list, AnalyticMap};
use crate::bloch::AlphaWeight;
use crate::disk::{DiskPoint, MAX_DEPTH};
use crate::error::{Error, Result};
use crate::extremal::{peak_radius, znbar_norm};
use crate::harmonic::HarmonicFunction;

/// Samples with `|phi| >= 1 + SELF_MAP_TOLERANCE` reject a symbol.
pub const SELF_MAP_TOLERANCE: f64 = 1e-12;
const VALIDATION_ANGLES: usize = 256;

/// Parameters of a symbol; the text form is given by [`fmt::Display`] and
/// parsed by [`std::str::FromStr`].
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec {
    Identity,
    Dilation { s: Complex64 },
    Rotation { theta: f64 },
    Automorphism { a: Complex64 },
    Blaschke { zeros: Vec<Complex64>, theta: f64 },
    Polynomial { coeffs: Vec<Complex64> },
    Power { base: Box<SymbolSpec>, n: u32 },
    Compose { outer: Box<SymbolSpec>, inner: Box<SymbolSpec> },
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolSpec::Identity => write!(f, "identity"),
            SymbolSpec::Dilation { s } => write!(f, "dilation s={}", fmt_complex(s)),
            SymbolSpec::Rotation { theta } => write!(f, "rotation theta={theta}"),
            SymbolSpec::Automorphism { a } => write!(f, "automorphism a={}", fmt_complex(a)),
            SymbolSpec::Blaschke { zeros, theta } => {
                write!(f, "blaschke zeros={}", fmt_list(zeros))?;
                if *theta != 0.0 {
                    write!(f, " theta={theta}")?;
                }
                Ok(())
            }
            SymbolSpec::Polynomial { coeffs } => write!(f, "poly coeffs={}", fmt_list(coeffs)),
            SymbolSpec::Power { base, n } => write!(f, "power n={n} ({base})"),
            SymbolSpec::Compose { outer, inner } => write!(f, "compose ({outer}) ({inner})"),
        }
    }
}

/// Family of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Identity,
    Dilation,
    Rotation,
    Automorphism,
    Blaschke,
    Polynomial,
    Composite,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Dilation => "dilation",
            Family::Rotation => "rotation",
            Family::Automorphism => "automorphism",
            Family::Blaschke => "blaschke",
            Family::Polynomial => "polynomial",
            Family::Composite => "composite",
        }
    }
}

/// An analytic self-map of the disk that passed validation.
#[derive(Clone, Debug)]
pub struct Symbol {
    spec: SymbolSpec,
    map: AnalyticMap,
    sup_modulus_estimate: f64,
    inf_modulus_estimate: f64,
    family: Family,
}

impl Symbol {
    pub fn spec(&self) -> &SymbolSpec {
        &self.spec
    }

    pub fn map(&self) -> &AnalyticMap {
        &self.map
    }

    /// Largest sampled `|phi|` over the validation grid.
    pub fn sup_modulus_estimate(&self) -> f64 {
        self.sup_modulus_estimate
    }

    /// Smallest sampled `|phi|` over the validation grid.
    pub fn inf_modulus_estimate(&self) -> f64 {
        self.inf_modulus_estimate
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eval(&self, z: &DiskPoint) -> crate::analytic::MapEval {
        self.map.eval(z)
    }

    /// Image point `phi(z)`, carrying the closed-form gap.
    pub fn image(&self, z: &DiskPoint) -> DiskPoint {
        self.map.eval(z).image()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

fn finite(c: &Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

fn domain(msg: String) -> Error {
    Error::ParameterDomain(msg)
}

fn build_map(spec: &SymbolSpec) -> Result<(AnalyticMap, Family, usize)> {
    Ok(match spec {
        SymbolSpec::Identity => (AnalyticMap::Identity, Family::Identity, 1),
        SymbolSpec::Dilation { s } => {
            if !finite(s) || s.norm() > 1.0 {
                return Err(domain(format!("dilation needs |s| <= 1, got {}", fmt_complex(s))));
            }
            (AnalyticMap::Dilation(*s), Family::Dilation, 1)
        }
        SymbolSpec::Rotation { theta } => {
            if !theta.is_finite() {
                return Err(domain("rotation angle must be finite".into()));
            }
            (AnalyticMap::Rotation(*theta), Family::Rotation, 1)
        }
        SymbolSpec::Automorphism { a } => {
            if !finite(a) || !(a.norm() < 1.0) {
                return Err(domain(format!("automorphism needs |a| < 1, got {}", fmt_complex(a))));
            }
            (AnalyticMap::Automorphism(*a), Family::Automorphism, 1)
        }
        SymbolSpec::Blaschke { zeros, theta } => {
            if zeros.is_empty() {
                return Err(domain("blaschke product needs at least one zero".into()));
            }
            if let Some(a) = zeros.iter().find(|a| !finite(a) || !(a.norm() < 1.0)) {
                return Err(domain(format!("blaschke zero {} is not in the disk", fmt_complex(a))));
            }
            if !theta.is_finite() {
                return Err(domain("blaschke angle must be finite".into()));
            }
            let map = AnalyticMap::Blaschke { zeros: zeros.clone(), theta: *theta };
            (map, Family::Blaschke, zeros.len())
        }
        SymbolSpec::Polynomial { coeffs } => {
            if coeffs.is_empty() || !coeffs.iter().all(finite) {
                return Err(domain("polynomial needs finite coefficients".into()));
            }
            (AnalyticMap::Polynomial(coeffs.clone()), Family::Polynomial, coeffs.len())
        }
        SymbolSpec::Power { base, n } => {
            if *n == 0 {
                return Err(domain("power exponent must be at least 1".into()));
            }
            let (m, _, k) = build_map(base)?;
            (m.power(*n), Family::Composite, k.saturating_mul(*n as usize))
        }
        SymbolSpec::Compose { outer, inner } => {
            let (o, _, ko) = build_map(outer)?;
            let (i, _, ki) = build_map(inner)?;
            (o.after(&i), Family::Composite, ko.saturating_mul(ki))
        }
    })
}

/// Validation points: the origin and every shell down to `1 - 2^-52`.
fn validation_points(complexity: usize) -> Vec<DiskPoint> {
    let angles = VALIDATION_ANGLES.max(16 * complexity.min(4096));
    let mut out = vec![DiskPoint::origin()];
    for j in 1..=MAX_DEPTH {
        for k in 0..angles {
            let theta = std::f64::consts::TAU * k as f64 / angles as f64;
            out.push(DiskPoint::from_depth(j as f64, theta).expect("depth in range"));
        }
    }
    out
}

/// Builds and validates a symbol.
///
/// Parameters are checked first; then `|phi|` is sampled on the origin and
/// on every boundary shell. By the maximum principle the deepest shells
/// bound `|phi|` on the interior they enclose.
pub fn make_symbol(spec: &SymbolSpec) -> Result<Symbol> {
    if let SymbolSpec::Power { base, n } = spec {
        let base = make_symbol(base)?;
        return symbol_power(&base, *n);
    }
    if let SymbolSpec::Compose { outer, inner } = spec {
        make_symbol(outer)?;
        make_symbol(inner)?;
    }
    let (map, family, complexity) = build_map(spec)?;
    let points = validation_points(complexity);
    let evals: Vec<(f64, Complex64, DiskPoint)> = points
        .par_iter()
        .map(|z| {
            let e = map.eval(z);
            (e.gap, e.value, *z)
        })
        .collect();
    let mut min_gap = f64::INFINITY;
    let mut max_gap = f64::NEG_INFINITY;
    for (gap, value, z) in &evals {
        if !finite(value) || !gap.is_finite() {
            return Err(Error::NonFinite { witness: z.value(), value: value.norm() });
        }
        if *gap <= -2.0 * SELF_MAP_TOLERANCE {
            return Err(Error::SelfMapViolation { witness: z.value(), modulus: value.norm() });
        }
        min_gap = min_gap.min(*gap);
        max_gap = max_gap.max(*gap);
    }
    let modulus_from = |gap: f64| (1.0 - gap).max(0.0).sqrt();
    Ok(Symbol {
        spec: spec.clone(),
        map,
        sup_modulus_estimate: modulus_from(min_gap).min(1.0),
        inf_modulus_estimate: modulus_from(max_gap),
        family,
    })
}

/// `phi^n`; a power of a validated symbol needs no new sampling.
pub fn symbol_power(phi: &Symbol, n: u32) -> Result<Symbol> {
    if n == 0 {
        return Err(domain("power exponent must be at least 1".into()));
    }
    if n == 1 {
        return Ok(phi.clone());
    }
    let map = match phi.map() {
        AnalyticMap::Identity => AnalyticMap::monomial(n),
        m => AnalyticMap::Power(Arc::new(m.clone()), n),
    };
    Ok(Symbol {
        spec: SymbolSpec::Power { base: Box::new(phi.spec.clone()), n },
        map,
        sup_modulus_estimate: phi.sup_modulus_estimate.powi(n as i32),
        inf_modulus_estimate: phi.inf_modulus_estimate.powi(n as i32),
        family: Family::Composite,
    })
}

/// `{z : inner <= |phi(z)| < outer}` with `inner = r_n`, `outer = r_(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusBand {
    pub n: u64,
    pub inner: f64,
    pub outer: f64,
}

impl AnnulusBand {
    pub fn new(n: u64, alpha: AlphaWeight) -> Result<Self> {
        if n == 0 {
            return Err(domain("band index must be at least 1".into()));
        }
        Ok(Self {
            n,
            inner: peak_radius(n, alpha),
            outer: peak_radius(n + 1, alpha),
        })
    }

    pub fn contains_modulus(&self, m: f64) -> bool {
        self.inner <= m && m < self.outer
    }
}

/// Samples whose image lies in the band.
pub fn band_mask(phi: &Symbol, band: &AnnulusBand, samples: &[DiskPoint]) -> Vec<DiskPoint> {
    samples
        .iter()
        .filter(|z| band.contains_modulus(phi.map().value(z).norm()))
        .copied()
        .collect()
}

/// Smallest `n` whose band meets the sampled range of `|phi|`.
pub fn first_band_index(phi: &Symbol, alpha: AlphaWeight) -> u64 {
    let m = phi.inf_modulus_estimate();
    let mut n = 1u64;
    while peak_radius(n + 1, alpha) <= m {
        n += 1;
    }
    n
}

/// `f_n = (z^n + conj(z)^n) / ||z^n + conj(z)^n||`.
pub fn weak_null_function(n: u32, alpha: AlphaWeight) -> Result<HarmonicFunction> {
    if n == 0 {
        return Err(domain("n must be at least 1".into()));
    }
    let scale = 1.0 / znbar_norm(n as u64, alpha);
    Ok(HarmonicFunction::znbar(n).scaled(Complex64::new(scale, 0.0)))
}
