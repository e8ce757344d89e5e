//! Estimators of the essential norm of `C_phi` on the harmonic Bloch space.
//!
//! * E1: `lim_{s -> 1} sup_{|phi(z)| > s} R(z)`, over superlevel sets.
//! * E2: `limsup_{|z| -> 1} R(z)`, over boundary shells.
//! * E3: `(1/2) (e / 2 alpha)^alpha limsup n^(alpha-1) ||phi^n + conj(phi)^n||`.
//!
//! Here `R(z) = (1-|z|^2)^alpha |phi'(z)| / (1-|phi(z)|^2)^alpha`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{aitken, norm, seminorm, AlphaWeight};
use crate::disk::{disk_samples, DiskPoint, SamplingScheme, MAX_DEPTH};
use crate::error::{Error, Result};
use crate::extremal::power_formula_constant;
use crate::harmonic::HarmonicFunction;
use crate::supremum::{shell_maxima, supremum, SupremumResult};
use crate::symbol::{symbol_power, Symbol};

/// Image gaps below this are reported instead of divided by.
pub const MIN_IMAGE_GAP: f64 = 1e-300;
/// Relative change between ladder windows that flags slow convergence.
pub const SLOW_CONVERGENCE: f64 = 0.05;

/// Diagnostic attached to an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Flag {
    /// Shell maxima keep growing at the deepest shells.
    Diverging,
    /// The last two threshold levels differ.
    NoPlateau,
    /// E2 was extrapolated from a geometric tail.
    Extrapolated,
    /// The last two ladder windows differ by more than 5%.
    SlowConvergence,
    /// Computed over a finite dictionary, not the whole unit ball.
    DictionarySurrogate,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::Diverging => "diverging",
            Flag::NoPlateau => "no-plateau",
            Flag::Extrapolated => "extrapolated",
            Flag::SlowConvergence => "slow-convergence",
            Flag::DictionarySurrogate => "dictionary-surrogate",
        }
    }
}

/// `z -> (1-|z|^2)^alpha |phi'(z)| / (1-|phi(z)|^2)^alpha`.
#[derive(Clone, Debug)]
pub struct RatioField {
    pub symbol: Symbol,
    pub alpha: AlphaWeight,
}

impl RatioField {
    pub fn new(symbol: Symbol, alpha: AlphaWeight) -> Self {
        Self { symbol, alpha }
    }
}

/// The ratio together with the image gap `1 - |phi(z)|^2`.
fn ratio_and_gap(field: &RatioField, z: &DiskPoint) -> Result<(f64, f64)> {
    let e = field.symbol.eval(z);
    if !(e.gap >= MIN_IMAGE_GAP) {
        return Err(Error::NearBoundarySymbol { witness: z.value(), gap: e.gap });
    }
    let d = e.deriv.norm();
    if d == 0.0 {
        return Ok((0.0, e.gap));
    }
    let q = z.gap() / e.gap;
    let a = field.alpha.get();
    let r = if a == 1.0 { q * d } else { (a * q.ln() + d.ln()).exp() };
    if !r.is_finite() {
        return Err(Error::NonFinite { witness: z.value(), value: r });
    }
    Ok((r, e.gap))
}

pub fn ratio_at(field: &RatioField, z: &DiskPoint) -> Result<f64> {
    ratio_and_gap(field, z).map(|p| p.0)
}

/// Supremum of the ratio with a growth diagnostic.
#[derive(Clone, Debug)]
pub struct BoundedSup {
    pub result: SupremumResult,
    pub diverging: bool,
}

/// `sup_z R(z)`; finite values certify boundedness on the sampled scheme.
pub fn bounded_sup(field: &RatioField, scheme: &SamplingScheme) -> Result<BoundedSup> {
    let result = supremum(|z: &DiskPoint| ratio_at(field, z), scheme)?;
    let shells: Vec<f64> = result.shell_profile.iter().skip(1).map(|m| m.value).collect();
    let tail = &shells[shells.len().saturating_sub(5)..];
    let diverging = tail.len() == 5 && tail.windows(2).all(|w| w[1] > w[0] * 1.01);
    Ok(BoundedSup { result, diverging })
}

/// `s_j = 1 - 2^-j` for `j = 1..=count`.
pub fn default_levels(count: u32) -> Vec<f64> {
    (1..=count).map(|j| 1.0 - (-(j as f64)).exp2()).collect()
}

/// Threshold-formula estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub value: f64,
    /// `(s, sup over {|phi| > s})`.
    pub trace: Vec<(f64, f64)>,
    pub flags: Vec<Flag>,
}

/// E1 over superlevel sets of `|phi|`, all filtered from one sample set.
///
/// An empty superlevel set contributes 0.
pub fn essnorm_threshold(field: &RatioField, s_levels: &[f64], scheme: &SamplingScheme) -> Result<ThresholdEstimate> {
    if s_levels.is_empty() {
        return Err(Error::ParameterDomain("at least one threshold level is needed".into()));
    }
    if s_levels.windows(2).any(|w| !(w[1] > w[0])) || s_levels.iter().any(|s| !(0.0..1.0).contains(s)) {
        return Err(Error::ParameterDomain("threshold levels must increase within (0, 1)".into()));
    }
    let mut points = vec![DiskPoint::origin()];
    points.extend(disk_samples(scheme)?);
    let values: Vec<(f64, f64)> = points
        .par_iter()
        .map(|z| ratio_and_gap(field, z))
        .collect::<Result<_>>()?;
    let trace: Vec<(f64, f64)> = s_levels
        .iter()
        .map(|&s| {
            // |phi| > s  <=>  1 - |phi|^2 < (1 - s)(1 + s)
            let cut = (1.0 - s) * (1.0 + s);
            let sup = values
                .iter()
                .filter(|(_, gap)| *gap < cut)
                .map(|(r, _)| *r)
                .fold(0.0, f64::max);
            (s, sup)
        })
        .collect();
    let value = trace.last().map_or(0.0, |t| t.1);
    let mut flags = Vec::new();
    if trace.len() >= 2 {
        let prev = trace[trace.len() - 2].1;
        if (value - prev).abs() > 1e-3 * value.max(1.0) {
            flags.push(Flag::NoPlateau);
        }
    }
    Ok(ThresholdEstimate { value, trace, flags })
}

/// Boundary-limsup estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryEstimate {
    pub value: f64,
    /// Maximum over the last three shells, before any extrapolation.
    pub raw: f64,
    /// `(radius, shell maximum)`.
    pub trace: Vec<(f64, f64)>,
    pub flags: Vec<Flag>,
}

/// Limit of a geometric tail, or `None` when the last four terms are not
/// in a clean geometric regime.
fn geometric_limit(x: &[f64]) -> Option<f64> {
    if x.len() < 4 {
        return None;
    }
    let t = &x[x.len() - 4..];
    let d = [t[1] - t[0], t[2] - t[1], t[3] - t[2]];
    if d.contains(&0.0) || !(d[0].signum() == d[1].signum() && d[1].signum() == d[2].signum()) {
        return None;
    }
    let q1 = d[1] / d[0];
    let q2 = d[2] / d[1];
    if !(q1 > 0.0 && q1 < 0.9 && q2 > 0.0 && q2 < 0.9) || (q1 - q2).abs() > 0.1 * q1.max(q2) {
        return None;
    }
    aitken(t[1], t[2], t[3]).map(|l| l.max(0.0))
}

/// E2 from the ratio maxima on shells `j = 1..=shells`.
///
/// The limsup proxy is the maximum of the last three shells. When the
/// shell maxima converge geometrically, their Aitken limit is used instead
/// and [`Flag::Extrapolated`] is set.
pub fn essnorm_boundary(field: &RatioField, shells: u32, scheme: &SamplingScheme) -> Result<BoundaryEstimate> {
    if !(5..=MAX_DEPTH).contains(&shells) {
        return Err(Error::ParameterDomain(format!("shells must be in 5..={MAX_DEPTH}, got {shells}")));
    }
    let s = SamplingScheme { radial_levels: shells, ..scheme.clone() };
    let maxima = shell_maxima(|z: &DiskPoint| ratio_at(field, z), &s)?;
    let values: Vec<f64> = maxima.iter().map(|m| m.value).collect();
    let raw = values[values.len() - 3..].iter().copied().fold(0.0, f64::max);
    let mut flags = Vec::new();
    let value = match geometric_limit(&values) {
        Some(l) => {
            flags.push(Flag::Extrapolated);
            l
        }
        None => raw,
    };
    Ok(BoundaryEstimate {
        value,
        raw,
        trace: maxima.iter().map(|m| (m.radius, m.value)).collect(),
        flags,
    })
}

/// First rung of the power ladder.
pub const LADDER_START: u32 = 16;

/// `round(16 * 2^(k/2))` up to `n_max`, with `n_max` appended.
pub fn power_ladder(n_max: u32) -> Result<Vec<u32>> {
    if n_max < LADDER_START {
        return Err(Error::ParameterDomain(format!("ladder needs N >= {LADDER_START}, got {n_max}")));
    }
    let mut out = Vec::new();
    for k in 0.. {
        let n = (LADDER_START as f64 * (k as f64 / 2.0).exp2()).round() as u32;
        if n >= n_max {
            break;
        }
        out.push(n);
    }
    out.push(n_max);
    Ok(out)
}

/// `(n, n^(alpha-1) ||phi^n + conj(phi^n)||)` along the ladder.
pub fn power_sequence(phi: &Symbol, alpha: AlphaWeight, n_max: u32, scheme: &SamplingScheme) -> Result<Vec<(u32, f64)>> {
    power_ladder(n_max)?
        .par_iter()
        .map(|&n| {
            let p = symbol_power(phi, n)?;
            let f = HarmonicFunction::new(p.map().clone(), p.map().clone());
            let v = norm(&f, alpha, scheme)?;
            Ok((n, (n as f64).powf(alpha.get() - 1.0) * v))
        })
        .collect()
}

/// Maxima of a ladder trace over `[N/2, N]` and `[N/4, N/2)`.
pub(crate) fn windows(trace: &[(u32, f64)], n_max: u32) -> (f64, Option<f64>) {
    let half = n_max as f64 / 2.0;
    let quarter = n_max as f64 / 4.0;
    let tail = trace
        .iter()
        .filter(|(n, _)| *n as f64 >= half)
        .map(|t| t.1)
        .fold(0.0, f64::max);
    let prev: Vec<f64> = trace
        .iter()
        .filter(|(n, _)| (*n as f64) >= quarter && (*n as f64) < half)
        .map(|t| t.1)
        .collect();
    let prev = (!prev.is_empty()).then(|| prev.into_iter().fold(0.0, f64::max));
    (tail, prev)
}

fn slow(tail: f64, prev: Option<f64>) -> bool {
    match prev {
        Some(p) if p > 0.0 || tail > 0.0 => (tail - p).abs() > SLOW_CONVERGENCE * p.max(tail),
        _ => false,
    }
}

/// Power-formula estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerEstimate {
    pub value: f64,
    pub window_max: f64,
    pub previous_window_max: Option<f64>,
    /// `(n, a_n)`.
    pub trace: Vec<(u32, f64)>,
    pub flags: Vec<Flag>,
}

/// E3: the normalized tail-window maximum of `a_n`.
pub fn essnorm_power(phi: &Symbol, alpha: AlphaWeight, n_max: u32, scheme: &SamplingScheme) -> Result<PowerEstimate> {
    let trace = power_sequence(phi, alpha, n_max, scheme)?;
    let (window_max, previous_window_max) = windows(&trace, n_max);
    let mut flags = Vec::new();
    if slow(window_max, previous_window_max) {
        flags.push(Flag::SlowConvergence);
    }
    Ok(PowerEstimate {
        value: power_formula_constant(alpha) * window_max,
        window_max,
        previous_window_max,
        trace,
        flags,
    })
}

/// Power-norm boundedness verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerBoundedness {
    pub bounded: bool,
    /// Running supremum of `a_n` over the ladder.
    pub sup: f64,
    /// Tail-window maximum over the previous window's.
    pub growth: Option<f64>,
    pub trace: Vec<(u32, f64)>,
}

/// `sup_n n^(alpha-1) ||phi^n + conj(phi)^n||`, judged bounded when the
/// last ladder window does not exceed the previous one by more than 5%.
pub fn boundedness_power_test(
    phi: &Symbol,
    alpha: AlphaWeight,
    n_max: u32,
    scheme: &SamplingScheme,
) -> Result<PowerBoundedness> {
    let trace = power_sequence(phi, alpha, n_max, scheme)?;
    let sup = trace.iter().map(|t| t.1).fold(0.0, f64::max);
    let (tail, prev) = windows(&trace, n_max);
    let growth = prev.and_then(|p| (p > 0.0).then(|| tail / p));
    let bounded = match prev {
        Some(p) if p > 0.0 => tail <= (1.0 + SLOW_CONVERGENCE) * p,
        _ => tail == 0.0 || prev.is_none(),
    };
    Ok(PowerBoundedness { bounded, sup, growth, trace })
}

/// Dictionary probe of `||C_phi f|| >= delta ||f||`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginReport {
    /// `min ||f o phi|| / ||f||`.
    pub margin: f64,
    /// Dictionary index attaining `margin`.
    pub witness: usize,
    /// The same minimum after `f -> f - f(phi(0))`, which replaces the norm
    /// of `f o phi` by its seminorm.
    pub recentred_margin: f64,
    pub recentred_witness: usize,
}

pub fn bounded_below_margin(
    phi: &Symbol,
    alpha: AlphaWeight,
    dictionary: &[HarmonicFunction],
    scheme: &SamplingScheme,
) -> Result<MarginReport> {
    if dictionary.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let at_image = phi.map().value(&DiskPoint::origin());
    let at_image = DiskPoint::new(at_image)?;
    let ratios: Vec<(f64, Option<f64>)> = dictionary
        .par_iter()
        .map(|f| {
            let base = norm(f, alpha, scheme)?;
            if !(base > 0.0) {
                return Err(Error::ParameterDomain(format!("dictionary function {f} has zero norm")));
            }
            let ratio = norm(&f.compose(phi), alpha, scheme)? / base;
            let g = f.shifted(f.eval(&at_image));
            let g_norm = norm(&g, alpha, scheme)?;
            let recentred = if g_norm > 0.0 {
                Some(seminorm(&g.compose(phi), alpha, scheme)?.value / g_norm)
            } else {
                None
            };
            Ok((ratio, recentred))
        })
        .collect::<Result<_>>()?;
    let mut out = MarginReport {
        margin: f64::INFINITY,
        witness: 0,
        recentred_margin: f64::INFINITY,
        recentred_witness: 0,
    };
    for (k, (r, g)) in ratios.iter().enumerate() {
        if *r < out.margin {
            out.margin = *r;
            out.witness = k;
        }
        if let Some(g) = g {
            if *g < out.recentred_margin {
                out.recentred_margin = *g;
                out.recentred_witness = k;
            }
        }
    }
    if !out.recentred_margin.is_finite() {
        out.recentred_margin = out.margin;
        out.recentred_witness = out.witness;
    }
    Ok(out)
}

/// Parameters shared by the three estimators.
#[derive(Clone, Debug, PartialEq)]
pub struct EssNormOptions {
    pub scheme: SamplingScheme,
    pub s_levels: Vec<f64>,
    pub boundary_shells: u32,
    pub ladder_n: u32,
}

impl Default for EssNormOptions {
    fn default() -> Self {
        Self {
            scheme: SamplingScheme::default(),
            s_levels: default_levels(20),
            boundary_shells: 40,
            ladder_n: 2048,
        }
    }
}

/// All three estimates with their traces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssNormReport {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub threshold: ThresholdEstimate,
    pub boundary: BoundaryEstimate,
    pub power: PowerEstimate,
    /// Largest pairwise difference among E1, E2, E3.
    pub agreement: f64,
    pub bounded_sup: f64,
    pub flags: Vec<Flag>,
}

pub fn essnorm_report(phi: &Symbol, alpha: AlphaWeight, opts: &EssNormOptions) -> Result<EssNormReport> {
    let field = RatioField::new(phi.clone(), alpha);
    let threshold = essnorm_threshold(&field, &opts.s_levels, &opts.scheme)?;
    let boundary = essnorm_boundary(&field, opts.boundary_shells, &opts.scheme)?;
    let power = essnorm_power(phi, alpha, opts.ladder_n, &opts.scheme)?;
    let sup = bounded_sup(&field, &opts.scheme)?;
    let (e1, e2, e3) = (threshold.value, boundary.value, power.value);
    let agreement = (e1 - e2).abs().max((e1 - e3).abs()).max((e2 - e3).abs());
    let mut flags: Vec<Flag> = threshold
        .flags
        .iter()
        .chain(&boundary.flags)
        .chain(&power.flags)
        .copied()
        .collect();
    if sup.diverging {
        flags.push(Flag::Diverging);
    }
    flags.sort();
    flags.dedup();
    Ok(EssNormReport {
        e1,
        e2,
        e3,
        threshold,
        boundary,
        power,
        agreement,
        bounded_sup: sup.result.value,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{make_symbol, SymbolSpec};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(a: f64) -> AlphaWeight {
        AlphaWeight::new(a).unwrap()
    }

    fn field(spec: SymbolSpec, a: f64) -> RatioField {
        RatioField::new(make_symbol(&spec).unwrap(), w(a))
    }

    fn small() -> SamplingScheme {
        SamplingScheme { radial_levels: 30, angular_base: 32, ..SamplingScheme::default() }
    }

    #[test]
    fn ratio_examples() {
        let id = field(SymbolSpec::Identity, 2.5);
        for z in disk_samples(&small()).unwrap() {
            assert!((ratio_at(&id, &z).unwrap() - 1.0).abs() < 1e-14);
        }
        let dil = field(SymbolSpec::Dilation { s: c(0.7, 0.0) }, 1.0);
        assert!((ratio_at(&dil, &DiskPoint::origin()).unwrap() - 0.7).abs() < 1e-16);
        let auto = field(SymbolSpec::Automorphism { a: c(0.5, 0.0) }, 1.0);
        for z in disk_samples(&small()).unwrap() {
            assert!((ratio_at(&auto, &z).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bounded_sup_examples() {
        assert!((bounded_sup(&field(SymbolSpec::Identity, 1.0), &small()).unwrap().result.value - 1.0).abs() < 1e-14);
        let auto = bounded_sup(&field(SymbolSpec::Automorphism { a: c(0.5, 0.0) }, 1.0), &small()).unwrap();
        assert!((auto.result.value - 1.0).abs() < 1e-10);
        assert!(!auto.diverging);
        // radial: (1-r^2)^2 0.5 / (1 - 0.25 r^2)^2 is largest at r = 0
        let dil = bounded_sup(&field(SymbolSpec::Dilation { s: c(0.5, 0.0) }, 2.0), &small()).unwrap();
        assert!((dil.result.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn threshold_levels_monotone_and_empty() {
        let f = field(SymbolSpec::Blaschke { zeros: vec![c(0.3, 0.2), c(-0.4, 0.0)], theta: 0.0 }, 1.5);
        let t = essnorm_threshold(&f, &default_levels(20), &small()).unwrap();
        assert!(t.trace.windows(2).all(|w| w[1].1 <= w[0].1));
        let d = field(SymbolSpec::Dilation { s: c(0.9, 0.0) }, 1.0);
        let t = essnorm_threshold(&d, &default_levels(20), &small()).unwrap();
        for (s, v) in &t.trace {
            if *s > 0.9 {
                assert_eq!(*v, 0.0);
            }
        }
        assert_eq!(t.value, 0.0);
        assert!(essnorm_threshold(&d, &[0.5, 0.4], &small()).is_err());
    }

    #[test]
    fn boundary_examples() {
        let id = essnorm_boundary(&field(SymbolSpec::Identity, 2.0), 20, &small()).unwrap();
        assert_eq!(id.value, 1.0);
        assert!(id.flags.is_empty());
        for a in [0.5, 1.0, 2.0] {
            let d = essnorm_boundary(&field(SymbolSpec::Dilation { s: c(0.9, 0.0) }, a), 20, &small()).unwrap();
            assert!(d.value <= 1e-3, "a={a}: {}", d.value);
            assert!(d.flags.contains(&Flag::Extrapolated));
        }
        assert!(essnorm_boundary(&field(SymbolSpec::Identity, 1.0), 4, &small()).is_err());
    }

    #[test]
    fn geometric_limit_cases() {
        let x: Vec<f64> = (0..6).map(|k| 3.0 + 0.5f64.powi(k)).collect();
        assert!((geometric_limit(&x).unwrap() - 3.0).abs() < 1e-12);
        assert!(geometric_limit(&[1.0, 1.0, 1.0, 1.0]).is_none());
        assert!(geometric_limit(&[1.0, 2.0, 1.0, 2.0]).is_none());
    }

    #[test]
    fn ladder_shape() {
        assert_eq!(&power_ladder(64).unwrap(), &[16, 23, 32, 45, 64]);
        assert_eq!(*power_ladder(2048).unwrap().last().unwrap(), 2048);
        assert_eq!(&power_ladder(100).unwrap(), &[16, 23, 32, 45, 64, 91, 100]);
        assert!(power_ladder(15).is_err());
    }

    #[test]
    fn power_estimates() {
        let s = small();
        let id = make_symbol(&SymbolSpec::Identity).unwrap();
        let e = essnorm_power(&id, w(1.0), 512, &s).unwrap();
        assert!((e.value - 1.0).abs() < 0.01, "{}", e.value);
        let half = make_symbol(&SymbolSpec::Dilation { s: c(0.5, 0.0) }).unwrap();
        let e = essnorm_power(&half, w(1.5), 64, &s).unwrap();
        assert!((e.value / 2f64.powi(-32) - 1.0).abs() < 0.05, "{}", e.value);
        let b = boundedness_power_test(&half, w(0.5), 128, &s).unwrap();
        assert!(b.bounded);
        assert!(b.trace.windows(2).all(|w| w[1].1 < w[0].1));
        let b = boundedness_power_test(&id, w(1.0), 256, &s).unwrap();
        assert!(b.bounded);
        assert!((b.sup - 4.0 / std::f64::consts::E).abs() < 0.01);
    }

    #[test]
    fn margins() {
        let s = small();
        let dict: Vec<HarmonicFunction> = (1..8).map(HarmonicFunction::znbar).collect();
        let id = make_symbol(&SymbolSpec::Identity).unwrap();
        let m = bounded_below_margin(&id, w(1.0), &dict, &s).unwrap();
        assert!((m.margin - 1.0).abs() < 1e-12);
        let half = make_symbol(&SymbolSpec::Dilation { s: c(0.5, 0.0) }).unwrap();
        let m = bounded_below_margin(&half, w(1.0), &dict, &s).unwrap();
        assert_eq!(m.witness, 6);
        assert!(m.margin < 0.5f64.powi(6));
        assert!(bounded_below_margin(&half, w(1.0), &[], &s).is_err());
    }

    #[test]
    fn rotation_invariance() {
        let s = small();
        let opts = EssNormOptions { scheme: s.clone(), ladder_n: 128, boundary_shells: 25, ..EssNormOptions::default() };
        let phi = SymbolSpec::Blaschke { zeros: vec![c(0.2, 0.1), c(0.0, 0.4)], theta: 0.0 };
        let rotated = SymbolSpec::Compose { outer: Box::new(SymbolSpec::Rotation { theta: 1.3 }), inner: Box::new(phi.clone()) };
        let a = essnorm_report(&make_symbol(&phi).unwrap(), w(1.0), &opts).unwrap();
        let b = essnorm_report(&make_symbol(&rotated).unwrap(), w(1.0), &opts).unwrap();
        assert!((a.e1 - b.e1).abs() < 1e-10);
        assert!((a.e2 - b.e2).abs() < 1e-10);
        assert!((a.e3 - b.e3).abs() < 1e-10);
    }
}
