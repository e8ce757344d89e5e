//! Batch drivers behind the command-line tool.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::approx::{
    apply_kr, empirical_upper_bound, standard_dictionary, weak_null_lower_bound, AveragedApproximant,
    DilationOperator, UpperBoundIndicator, WeakNullBound,
};
use crate::bloch::{norm, AlphaWeight};
use crate::config::{Estimator, ExperimentConfig};
use crate::disk::SamplingScheme;
use crate::error::Result;
use crate::essnorm::{
    bounded_below_margin, bounded_sup, boundedness_power_test, default_levels, essnorm_boundary, essnorm_power,
    essnorm_threshold, EssNormOptions, Flag, RatioField,
};
use crate::extremal::{band_limit, extremals, scaled_band_min};
use crate::oracle::{profile_maximum, unimodal_about};
use crate::report::{Report, ReportRow};
use crate::symbol::{make_symbol, Symbol, SymbolSpec};

/// Seed of the random part of the standard dictionary.
pub const DICTIONARY_SEED: u64 = 20_240_917;

fn flag_names(flags: &[Flag]) -> Vec<&'static str> {
    flags.iter().map(|f| f.name()).collect()
}

fn metadata(cfg_echo: Vec<(String, String)>) -> Vec<(String, String)> {
    let mut m = vec![
        ("tool".to_string(), env!("CARGO_PKG_NAME").to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("dictionary_seed".to_string(), DICTIONARY_SEED.to_string()),
    ];
    m.extend(cfg_echo);
    m
}

fn options(cfg: &ExperimentConfig) -> EssNormOptions {
    EssNormOptions {
        scheme: cfg.scheme.clone(),
        s_levels: default_levels(cfg.threshold_levels),
        boundary_shells: cfg.boundary_shells,
        ladder_n: cfg.ladder_n,
    }
}

/// Rows for one `(symbol, alpha, estimator)` triple.
fn estimator_rows(
    phi: &Symbol,
    alpha: AlphaWeight,
    est: Estimator,
    cfg: &ExperimentConfig,
) -> Result<Vec<ReportRow>> {
    let id = phi.to_string();
    let a = alpha.get();
    let opts = options(cfg);
    let field = RatioField::new(phi.clone(), alpha);
    let name = est.name();
    let trace = format!("{name}/trace");
    let mut rows = Vec::new();
    match est {
        Estimator::E1 => {
            let t = essnorm_threshold(&field, &opts.s_levels, &opts.scheme)?;
            let last = t.trace.last().map_or(0.0, |p| p.0);
            rows.push(ReportRow::new(&id, a, name, last, t.value, &flag_names(&t.flags)));
            rows.extend(t.trace.iter().map(|(s, v)| ReportRow::new(&id, a, &trace, *s, *v, &[])));
        }
        Estimator::E2 => {
            let b = essnorm_boundary(&field, opts.boundary_shells, &opts.scheme)?;
            let last = b.trace.last().map_or(0.0, |p| p.0);
            rows.push(ReportRow::new(&id, a, name, last, b.value, &flag_names(&b.flags)));
            rows.push(ReportRow::new(&id, a, "E2/raw", last, b.raw, &[]));
            rows.extend(b.trace.iter().map(|(r, v)| ReportRow::new(&id, a, &trace, *r, *v, &[])));
        }
        Estimator::E3 => {
            let p = essnorm_power(phi, alpha, opts.ladder_n, &opts.scheme)?;
            rows.push(ReportRow::new(&id, a, name, opts.ladder_n as f64, p.value, &flag_names(&p.flags)));
            rows.extend(p.trace.iter().map(|(n, v)| ReportRow::new(&id, a, &trace, *n as f64, *v, &[])));
        }
        Estimator::BoundedSup => {
            let b = bounded_sup(&field, &opts.scheme)?;
            let flags: &[&str] = if b.diverging { &["diverging"] } else { &[] };
            rows.push(ReportRow::new(&id, a, name, b.result.witness.modulus(), b.result.value, flags));
            rows.extend(
                b.result
                    .shell_profile
                    .iter()
                    .map(|m| ReportRow::new(&id, a, &trace, m.radius, m.value, &[])),
            );
        }
        Estimator::PowerBoundedness => {
            let p = boundedness_power_test(phi, alpha, opts.ladder_n, &opts.scheme)?;
            let verdict = if p.bounded { "bounded" } else { "unbounded" };
            rows.push(ReportRow::new(&id, a, name, opts.ladder_n as f64, p.sup, &[verdict]));
            rows.extend(p.trace.iter().map(|(n, v)| ReportRow::new(&id, a, &trace, *n as f64, *v, &[])));
        }
        Estimator::Margin => {
            let dict = standard_dictionary(4, alpha, DICTIONARY_SEED, &opts.scheme)?;
            let m = bounded_below_margin(phi, alpha, &dict, &opts.scheme)?;
            rows.push(ReportRow::new(&id, a, name, m.witness as f64, m.margin, &["dictionary-surrogate"]));
            rows.push(ReportRow::new(
                &id,
                a,
                "margin/recentred",
                m.recentred_witness as f64,
                m.recentred_margin,
                &["dictionary-surrogate"],
            ));
        }
        Estimator::Sandwich => {
            let s = sandwich(phi, alpha, cfg.approximant_n, &opts)?;
            rows.extend(s.rows(&id, a));
        }
    }
    Ok(rows)
}

/// Runs every `(symbol, alpha, estimator)` combination of `cfg`.
///
/// Symbols are validated before any estimator runs, so a bad symbol fails
/// the whole experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let symbols: Vec<Symbol> = cfg.symbols.iter().map(make_symbol).collect::<Result<_>>()?;
    let alphas: Vec<AlphaWeight> = cfg.alphas.iter().map(|a| AlphaWeight::new(*a)).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for phi in &symbols {
        for &alpha in &alphas {
            for &est in &cfg.estimators {
                jobs.push((phi, alpha, est));
            }
        }
    }
    let results: Vec<Vec<ReportRow>> = jobs
        .par_iter()
        .map(|(phi, alpha, est)| estimator_rows(phi, *alpha, *est, cfg))
        .collect::<Result<_>>()?;
    let mut report = Report::new(metadata(cfg.echo()));
    report.extend(results.into_iter().flatten())?;
    Ok(report)
}

/// Closed form against oracle for one `(n, alpha)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Row {
    pub n: u64,
    pub alpha: f64,
    pub peak_radius: f64,
    pub oracle_radius: f64,
    pub radius_error: f64,
    pub peak_value: f64,
    pub oracle_value: f64,
    pub value_error: f64,
    pub unimodal: bool,
}

/// `n^alpha band_min(n)` against its limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandLimitRow {
    pub alpha: f64,
    pub n: u64,
    pub scaled: f64,
    pub limit: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Table {
    pub rows: Vec<Lemma1Row>,
    pub band_rows: Vec<BandLimitRow>,
    pub pass: bool,
}

/// Tolerance on closed-form versus oracle extremals.
pub const LEMMA1_TOLERANCE: f64 = 1e-9;
pub const LEMMA1_GRID: usize = 100_000;

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

/// Checks the profile closed forms for `n = 1..=n_max` and each alpha.
///
/// Passes when every relative error is at most 1e-9, the profile is
/// unimodal about the closed-form peak, and the band limit is met to 1e-2
/// at `n = 10^4` with the error shrinking at least 0.15x from `n = 10^3`.
pub fn verify_lemma1(n_max: u64, alphas: &[f64]) -> Result<Lemma1Table> {
    if n_max < 2 {
        return Err(crate::error::Error::ParameterDomain(format!("n_max must be at least 2, got {n_max}")));
    }
    let weights: Vec<AlphaWeight> = alphas.iter().map(|a| AlphaWeight::new(*a)).collect::<Result<_>>()?;
    let mut cases = Vec::new();
    for w in &weights {
        for n in 1..=n_max {
            cases.push((n, *w));
        }
    }
    let rows: Vec<Lemma1Row> = cases
        .par_iter()
        .map(|&(n, w)| {
            let e = extremals(n, w)?;
            let o = profile_maximum(n, w.get(), LEMMA1_GRID);
            Ok(Lemma1Row {
                n,
                alpha: w.get(),
                peak_radius: e.peak_radius,
                oracle_radius: o.argmax,
                radius_error: relative(e.peak_radius, o.argmax),
                peak_value: e.peak_value,
                oracle_value: o.max,
                value_error: relative(e.peak_value, o.max),
                unimodal: unimodal_about(n, w.get(), e.peak_radius, 1000),
            })
        })
        .collect::<Result<_>>()?;
    let mut band_rows = Vec::new();
    for w in &weights {
        for n in [1_000u64, 10_000] {
            let scaled = scaled_band_min(n, *w);
            let limit = band_limit(*w);
            band_rows.push(BandLimitRow {
                alpha: w.get(),
                n,
                scaled,
                limit,
                relative_error: (scaled - limit).abs() / limit,
            });
        }
    }
    let rows_ok = rows
        .iter()
        .all(|r| r.radius_error <= LEMMA1_TOLERANCE && r.value_error <= LEMMA1_TOLERANCE && r.unimodal);
    let band_ok = band_rows.chunks(2).all(|p| p[1].relative_error <= 1e-2 && p[1].relative_error <= 0.15 * p[0].relative_error);
    Ok(Lemma1Table { rows, band_rows, pass: rows_ok && band_ok })
}

impl Lemma1Table {
    pub fn report(&self) -> Result<Report> {
        let mut r = Report::new(metadata(vec![]));
        for row in &self.rows {
            let bad = |e: f64| if e <= LEMMA1_TOLERANCE { vec![] } else { vec!["fail"] };
            let n = row.n as f64;
            r.push(ReportRow::new("lemma1", row.alpha, "peak_radius", n, row.peak_radius, &[]))?;
            r.push(ReportRow::new("lemma1", row.alpha, "peak_value", n, row.peak_value, &[]))?;
            r.push(ReportRow::new("lemma1", row.alpha, "radius_error", n, row.radius_error, &bad(row.radius_error)))?;
            r.push(ReportRow::new("lemma1", row.alpha, "value_error", n, row.value_error, &bad(row.value_error)))?;
            let mono: &[&str] = if row.unimodal { &[] } else { &["fail"] };
            r.push(ReportRow::new("lemma1", row.alpha, "unimodal", n, row.unimodal as u8 as f64, mono))?;
        }
        for b in &self.band_rows {
            r.push(ReportRow::new("lemma1", b.alpha, "band_limit_error", b.n as f64, b.relative_error, &[]))?;
        }
        Ok(r)
    }
}

/// Cross-check tolerances: `|E1 - E2|` and `|E3 - E1|`.
pub const E1_E2_TOLERANCE: f64 = 1e-3;
pub const E3_TOLERANCE: f64 = 0.05;

/// The regression suite: `(symbol, alpha)` pairs whose estimators must agree.
pub fn default_suite() -> Vec<(SymbolSpec, f64)> {
    let c = Complex64::new;
    let mut suite = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        suite.push((SymbolSpec::Identity, a));
    }
    suite.push((SymbolSpec::Rotation { theta: 1.0 }, 1.0));
    suite.push((SymbolSpec::Automorphism { a: c(0.5, 0.0) }, 1.0));
    suite.push((SymbolSpec::Automorphism { a: c(-0.3, 0.4) }, 1.0));
    for a in [0.5, 1.0, 2.0] {
        suite.push((SymbolSpec::Dilation { s: c(0.9, 0.0) }, a));
    }
    suite.push((SymbolSpec::Dilation { s: c(0.5, 0.0) }, 1.0));
    suite
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckRow {
    pub symbol: String,
    pub alpha: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub flags: Vec<Flag>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub rows: Vec<CrossCheckRow>,
    pub pass: bool,
}

pub fn cross_check(suite: &[(SymbolSpec, f64)], opts: &EssNormOptions) -> Result<CrossCheck> {
    let rows: Vec<CrossCheckRow> = suite
        .par_iter()
        .map(|(spec, a)| {
            let phi = make_symbol(spec)?;
            let alpha = AlphaWeight::new(*a)?;
            let field = RatioField::new(phi.clone(), alpha);
            let t = essnorm_threshold(&field, &opts.s_levels, &opts.scheme)?;
            let b = essnorm_boundary(&field, opts.boundary_shells, &opts.scheme)?;
            let p = essnorm_power(&phi, alpha, opts.ladder_n, &opts.scheme)?;
            let mut flags: Vec<Flag> = t.flags.iter().chain(&b.flags).chain(&p.flags).copied().collect();
            flags.sort();
            flags.dedup();
            let pass = (t.value - b.value).abs() <= E1_E2_TOLERANCE && (p.value - t.value).abs() <= E3_TOLERANCE;
            Ok(CrossCheckRow { symbol: spec.to_string(), alpha: *a, e1: t.value, e2: b.value, e3: p.value, flags, pass })
        })
        .collect::<Result<_>>()?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(CrossCheck { rows, pass })
}

impl CrossCheck {
    pub fn report(&self, opts: &EssNormOptions) -> Result<Report> {
        let s = &opts.scheme;
        let mut r = Report::new(metadata(vec![
            ("suite".into(), "default".into()),
            ("radial_levels".into(), s.radial_levels.to_string()),
            ("angular_base".into(), s.angular_base.to_string()),
            ("seed".into(), s.seed.to_string()),
            ("ladder_N".into(), opts.ladder_n.to_string()),
            ("boundary_shells".into(), opts.boundary_shells.to_string()),
        ]));
        for row in &self.rows {
            let flags = flag_names(&row.flags);
            let verdict: &[&str] = if row.pass { &["pass"] } else { &["fail"] };
            r.push(ReportRow::new(&row.symbol, row.alpha, "E1", 0.0, row.e1, &flags))?;
            r.push(ReportRow::new(&row.symbol, row.alpha, "E2", 0.0, row.e2, &flags))?;
            r.push(ReportRow::new(&row.symbol, row.alpha, "E3", opts.ladder_n as f64, row.e3, &flags))?;
            r.push(ReportRow::new(&row.symbol, row.alpha, "gap/E1-E2", 0.0, (row.e1 - row.e2).abs(), verdict))?;
            r.push(ReportRow::new(&row.symbol, row.alpha, "gap/E3-E1", 0.0, (row.e3 - row.e1).abs(), verdict))?;
        }
        Ok(r)
    }
}

/// Lower bound, E1 and upper-bound indicator for one symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub lower: WeakNullBound,
    pub e1: f64,
    pub upper: UpperBoundIndicator,
    /// Largest `||K_r f|| - ||f||` over the dictionary, `r` in {0.5, 0.9, 0.99}.
    pub contraction_excess: f64,
    pub pass: bool,
}

pub const SANDWICH_LOWER_SLACK: f64 = 0.02;
pub const SANDWICH_UPPER_SLACK: f64 = 0.05;
pub const CONTRACTION_TOLERANCE: f64 = 1e-12;

/// Contraction radii checked by [`sandwich`].
pub const CONTRACTION_RADII: [f64; 3] = [0.5, 0.9, 0.99];

pub fn sandwich(phi: &Symbol, alpha: AlphaWeight, n: u32, opts: &EssNormOptions) -> Result<SandwichReport> {
    let scheme = &opts.scheme;
    let lower = weak_null_lower_bound(phi, alpha, opts.ladder_n, scheme)?;
    let field = RatioField::new(phi.clone(), alpha);
    let e1 = essnorm_threshold(&field, &opts.s_levels, scheme)?.value;
    let l = AveragedApproximant::dyadic(n)?;
    let dict = standard_dictionary(n, alpha, DICTIONARY_SEED, scheme)?;
    let upper = empirical_upper_bound(phi, alpha, &l, &dict, scheme)?;
    let contraction_excess = contraction_excess(&dict, alpha, scheme)?;
    let pass = lower.value <= e1 + SANDWICH_LOWER_SLACK
        && lower.value <= upper.value + SANDWICH_UPPER_SLACK
        && contraction_excess <= CONTRACTION_TOLERANCE;
    Ok(SandwichReport { lower, e1, upper, contraction_excess, pass })
}

/// `max ||K_r f|| - ||f||` over `dictionary` and [`CONTRACTION_RADII`].
pub fn contraction_excess(
    dictionary: &[crate::harmonic::HarmonicFunction],
    alpha: AlphaWeight,
    scheme: &SamplingScheme,
) -> Result<f64> {
    let excess: Vec<f64> = dictionary
        .par_iter()
        .map(|f| {
            let base = norm(f, alpha, scheme)?;
            let mut worst = f64::NEG_INFINITY;
            for r in CONTRACTION_RADII {
                let k = DilationOperator::new(r)?;
                worst = worst.max(norm(&apply_kr(&k, f), alpha, scheme)? - base);
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(excess.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

impl SandwichReport {
    pub fn rows(&self, id: &str, alpha: f64) -> Vec<ReportRow> {
        let verdict: &[&str] = if self.pass { &["pass"] } else { &["fail"] };
        let mut rows = vec![
            ReportRow::new(id, alpha, "sandwich/lower", 0.0, self.lower.value, verdict),
            ReportRow::new(id, alpha, "sandwich/E1", 0.0, self.e1, verdict),
            ReportRow::new(id, alpha, "sandwich/upper", self.upper.witness as f64, self.upper.value, &["dictionary-surrogate"]),
            ReportRow::new(id, alpha, "sandwich/contraction_excess", 0.0, self.contraction_excess.max(0.0), verdict),
        ];
        rows.extend(
            self.lower
                .trace
                .iter()
                .map(|(n, v)| ReportRow::new(id, alpha, "sandwich/lower/trace", *n as f64, *v, &[])),
        );
        rows
    }
}
