//! Dilation operators `K_r f(z) = f(r z)`, their averages
//! `L_n = (1/n) sum K_(r_k)`, and the dictionary bounds built from them.
//!
//! Operator norms over the unit ball are replaced by maxima over a finite
//! dictionary. Those maxima bound the true norms from below, so the
//! "upper bound" here is an indicator and is flagged as such.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::AnalyticMap;
use crate::bloch::{norm, AlphaWeight};
use crate::disk::SamplingScheme;
use crate::error::{Error, Result};
use crate::essnorm::{power_ladder, windows, Flag};
use crate::harmonic::HarmonicFunction;
use crate::symbol::{weak_null_function, Symbol};

/// `K_r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilationOperator {
    r: f64,
}

impl DilationOperator {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::ParameterDomain(format!("dilation radius must be in (0, 1), got {r}")));
        }
        Ok(Self { r })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }
}

pub fn apply_kr(k: &DilationOperator, f: &HarmonicFunction) -> HarmonicFunction {
    f.compose_map(&AnalyticMap::Dilation(Complex64::new(k.r, 0.0)))
}

/// `L_n` for an increasing radius schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct AveragedApproximant {
    radii: Vec<f64>,
}

impl AveragedApproximant {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::ParameterDomain("approximant needs at least one radius".into()));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::ParameterDomain("radii must increase within (0, 1)".into()));
        }
        Ok(Self { radii })
    }

    /// Schedule `r_k = 1 - 2^-k`, `k = 1..=n`.
    pub fn dyadic(n: u32) -> Result<Self> {
        if n == 0 || n > 52 {
            return Err(Error::ParameterDomain(format!("dyadic schedule length must be in 1..=52, got {n}")));
        }
        Self::new((1..=n).map(|k| 1.0 - (-(k as f64)).exp2()).collect())
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

pub fn apply_ln(l: &AveragedApproximant, f: &HarmonicFunction) -> HarmonicFunction {
    let w = Complex64::new(1.0 / l.len() as f64, 0.0);
    let parts: Vec<HarmonicFunction> = l
        .radii
        .iter()
        .map(|&r| apply_kr(&DilationOperator { r }, f))
        .collect();
    let terms: Vec<(Complex64, &HarmonicFunction)> = parts.iter().map(|p| (w, p)).collect();
    HarmonicFunction::combine(&terms)
}

/// `(I - L_n) f`.
pub fn residual(l: &AveragedApproximant, f: &HarmonicFunction) -> HarmonicFunction {
    f.sub(&apply_ln(l, f))
}

/// `||(I - L_n) f||`.
pub fn residual_norm(
    l: &AveragedApproximant,
    f: &HarmonicFunction,
    alpha: AlphaWeight,
    scheme: &SamplingScheme,
) -> Result<f64> {
    norm(&residual(l, f), alpha, scheme)
}

/// Dictionary maximum of `||C_phi (I - L_n) f||`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperBoundIndicator {
    pub value: f64,
    /// Dictionary index attaining `value`.
    pub witness: usize,
    pub flags: Vec<Flag>,
}

pub fn empirical_upper_bound(
    phi: &Symbol,
    alpha: AlphaWeight,
    l: &AveragedApproximant,
    dictionary: &[HarmonicFunction],
    scheme: &SamplingScheme,
) -> Result<UpperBoundIndicator> {
    if dictionary.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let values: Vec<f64> = dictionary
        .par_iter()
        .map(|f| norm(&residual(l, f).compose(phi), alpha, scheme))
        .collect::<Result<_>>()?;
    let (witness, value) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if *v > acc.1 { (k, *v) } else { acc });
    Ok(UpperBoundIndicator { value, witness, flags: vec![Flag::DictionarySurrogate] })
}

/// Tail-window maximum of `||f_n o phi||` along the power ladder.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakNullBound {
    pub value: f64,
    /// `(n, ||f_n o phi||)`.
    pub trace: Vec<(u32, f64)>,
}

pub fn weak_null_lower_bound(
    phi: &Symbol,
    alpha: AlphaWeight,
    n_max: u32,
    scheme: &SamplingScheme,
) -> Result<WeakNullBound> {
    let trace: Vec<(u32, f64)> = power_ladder(n_max)?
        .par_iter()
        .map(|&n| {
            let f = weak_null_function(n, alpha)?;
            Ok((n, norm(&f.compose(phi), alpha, scheme)?))
        })
        .collect::<Result<_>>()?;
    let (value, _) = windows(&trace, n_max);
    Ok(WeakNullBound { value, trace })
}

/// Number of random polynomial harmonics in the standard dictionary.
pub const RANDOM_DICTIONARY_SIZE: usize = 50;
/// Highest degree of those polynomials.
pub const RANDOM_DICTIONARY_DEGREE: usize = 32;

/// Unit-norm test functions for `L_n` with `n` radii: the `f_m` for `m` on
/// a `sqrt(2)` ladder up to `2^(n+2)`, then seeded random polynomial
/// harmonics.
///
/// The ladder must outrun the deepest radius `1 - 2^-n`: only the `f_m`
/// with `m` beyond `2^n` keep `(I - L_n) f_m` close to `f_m`.
pub fn standard_dictionary(
    n: u32,
    alpha: AlphaWeight,
    seed: u64,
    scheme: &SamplingScheme,
) -> Result<Vec<HarmonicFunction>> {
    let top = (n.min(28) + 2) as i32;
    let mut degrees: Vec<u32> = (0..=2 * top)
        .map(|k| (k as f64 / 2.0).exp2().round() as u32)
        .collect();
    degrees.dedup();
    let mut out: Vec<HarmonicFunction> = degrees
        .iter()
        .map(|&m| weak_null_function(m, alpha))
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::with_capacity(RANDOM_DICTIONARY_SIZE);
    for _ in 0..RANDOM_DICTIONARY_SIZE {
        let degree = rng.gen_range(1..=RANDOM_DICTIONARY_DEGREE);
        let mut coeffs = || -> Vec<Complex64> {
            (0..=degree)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        };
        let h = coeffs();
        let g = coeffs();
        raw.push(HarmonicFunction::new(AnalyticMap::Polynomial(h), AnalyticMap::Polynomial(g)));
    }
    let normalized: Vec<HarmonicFunction> = raw
        .par_iter()
        .map(|f| {
            let v = norm(f, alpha, scheme)?;
            Ok(f.scaled(Complex64::new(1.0 / v, 0.0)))
        })
        .collect::<Result<_>>()?;
    out.extend(normalized);
    Ok(out)
}
