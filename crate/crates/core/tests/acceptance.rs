//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use bloch_essnorm::analytic::AnalyticMap;
use bloch_essnorm::essnorm::{
    bounded_sup, boundedness_power_test, default_levels, essnorm_boundary, essnorm_power, essnorm_threshold,
    ratio_at, EssNormOptions, RatioField,
};
use bloch_essnorm::experiment::{cross_check, default_suite, sandwich, verify_lemma1};
use bloch_essnorm::extremal::{band_limit, scaled_band_min, scaled_znbar_norm, znbar_limit, znbar_norm};
use bloch_essnorm::{
    disk_samples, make_symbol, seminorm, AlphaWeight, HarmonicFunction, SamplingScheme, SymbolSpec,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn w(a: f64) -> AlphaWeight {
    AlphaWeight::new(a).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn opts() -> EssNormOptions {
    EssNormOptions::default()
}

fn three_estimates(spec: SymbolSpec, alpha: f64, ladder: u32) -> (f64, f64, f64) {
    let o = opts();
    let phi = make_symbol(&spec).unwrap();
    let field = RatioField::new(phi.clone(), w(alpha));
    let e1 = essnorm_threshold(&field, &o.s_levels, &o.scheme).unwrap().value;
    let e2 = essnorm_boundary(&field, o.boundary_shells, &o.scheme).unwrap().value;
    let e3 = essnorm_power(&phi, w(alpha), ladder, &o.scheme).unwrap().value;
    (e1, e2, e3)
}

fn lemma1() -> Outcome {
    let t = verify_lemma1(200, &[0.5, 1.0, 2.0, 3.0]).map_err(|e| e.to_string())?;
    let worst = t.rows.iter().map(|r| r.radius_error.max(r.value_error)).fold(0.0, f64::max);
    let unimodal = t.rows.iter().all(|r| r.unimodal);
    let n1 = t.rows.iter().filter(|r| r.n == 1).all(|r| r.peak_radius == 0.0 && r.peak_value == 1.0);
    ensure(
        worst <= 1e-9 && unimodal && n1 && t.rows.len() == 800,
        format!("800 rows, worst relative error {worst:.2e}, unimodal {unimodal}"),
    )
}

fn band_limit_rate() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for a in [0.5, 1.0, 2.0] {
        let limit = band_limit(w(a));
        let err = |n: u64| (scaled_band_min(n, w(a)) - limit).abs() / limit;
        let (e3, e4) = (err(1_000), err(10_000));
        ok &= e4 <= 1e-2 && e4 <= 0.15 * e3;
        detail.push(format!("a={a}: {e4:.2e} ({:.3}x)", e4 / e3));
    }
    ensure(ok, detail.join(", "))
}

fn power_norms() -> Outcome {
    let scheme = SamplingScheme::default();
    let mut cases = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for n in [1u32, 2, 5, 10, 50, 200] {
            cases.push((n, a));
        }
    }
    let worst = cases
        .par_iter()
        .map(|&(n, a)| {
            let sampled = seminorm(&HarmonicFunction::znbar(n), w(a), &scheme).unwrap().value;
            let exact = znbar_norm(n as u64, w(a));
            (sampled - exact).abs() / exact
        })
        .reduce(|| 0.0, f64::max);
    let mut limit_err: f64 = 0.0;
    for a in [0.5, 1.0, 2.0] {
        let l = znbar_limit(w(a));
        limit_err = limit_err.max((scaled_znbar_norm(10_000, w(a)) - l).abs() / l);
    }
    ensure(
        worst <= 1e-6 && limit_err <= 1e-2,
        format!("worst sampled/closed-form error {worst:.2e}, limit error at n=1e4 {limit_err:.2e}"),
    )
}

fn identity() -> Outcome {
    let (e1, e2, e3) = three_estimates(SymbolSpec::Identity, 1.0, 2048);
    ensure(
        (e1 - 1.0).abs() <= 1e-3 && (e2 - 1.0).abs() <= 1e-3 && (e3 - 1.0).abs() <= 0.05,
        format!("E1 {e1:.6}, E2 {e2:.6}, E3 {e3:.6}"),
    )
}

fn compact_case() -> Outcome {
    let spec = SymbolSpec::Dilation { s: c(0.9, 0.0) };
    let phi = make_symbol(&spec).unwrap();
    let scheme = SamplingScheme::default();
    let mut detail = Vec::new();
    let mut ok = true;
    for a in [0.5, 1.0, 2.0] {
        let field = RatioField::new(phi.clone(), w(a));
        let e1 = essnorm_threshold(&field, &default_levels(20), &scheme).unwrap();
        let above = e1.trace.iter().filter(|(s, _)| *s > 0.9).collect::<Vec<_>>();
        let empty = !above.is_empty() && above.iter().all(|(_, v)| *v == 0.0);
        let e2 = essnorm_boundary(&field, 20, &scheme).unwrap().value;
        let e3 = essnorm_power(&phi, w(a), 512, &scheme).unwrap().value;
        let b = boundedness_power_test(&phi, w(a), 512, &scheme).unwrap();
        // a_n behaves like C 0.9^n, so log a_n must fall with slope ln 0.9
        let slopes: Vec<f64> = b
            .trace
            .windows(2)
            .map(|p| (p[1].1.ln() - p[0].1.ln()) / (p[1].0 - p[0].0) as f64)
            .collect();
        let geometric = slopes.iter().all(|s| (s / 0.9f64.ln() - 1.0).abs() <= 0.05);
        ok &= empty && e2 <= 1e-3 && e3 <= 1e-3 && geometric;
        detail.push(format!("a={a}: E1 empty {empty}, E2 {e2:.1e}, E3 {e3:.1e}, geometric {geometric}"));
    }
    ensure(ok, detail.join("; "))
}

fn automorphism() -> Outcome {
    let spec = SymbolSpec::Automorphism { a: c(0.5, 0.0) };
    let phi = make_symbol(&spec).unwrap();
    let field = RatioField::new(phi, w(1.0));
    let samples = disk_samples(&SamplingScheme::default()).unwrap();
    let dev = samples
        .par_iter()
        .map(|z| (ratio_at(&field, z).unwrap() - 1.0).abs())
        .reduce(|| 0.0, f64::max);
    let (e1, e2, e3) = three_estimates(spec, 1.0, 2048);
    ensure(
        dev <= 1e-10 && (e1 - 1.0).abs() <= 1e-3 && (e2 - 1.0).abs() <= 1e-3 && (e3 - 1.0).abs() <= 0.05,
        format!("max |ratio - 1| {dev:.1e} over {} samples, E1 {e1:.6}, E2 {e2:.6}, E3 {e3:.6}", samples.len()),
    )
}

fn schwarz_pick_ceiling() -> Outcome {
    let scheme = SamplingScheme::default();
    let samples = disk_samples(&scheme).unwrap();
    let mut specs: Vec<SymbolSpec> = default_suite().into_iter().map(|(s, _)| s).collect();
    specs.dedup();
    let rows: Vec<(f64, f64, f64)> = specs
        .par_iter()
        .map(|spec| {
            let phi = make_symbol(spec).unwrap();
            let field = RatioField::new(phi.clone(), w(1.0));
            let pointwise = samples.iter().map(|z| ratio_at(&field, z).unwrap()).fold(0.0, f64::max);
            let sup = bounded_sup(&field, &scheme).unwrap().result.value;
            let a = boundedness_power_test(&phi, w(1.0), 2048, &scheme).unwrap().sup;
            (pointwise, sup, a)
        })
        .collect();
    let pointwise = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let sup = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let a = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    ensure(
        pointwise <= 1.0 + 1e-10 && sup <= 1.0 + 1e-10 && a <= 2.2,
        format!("{} symbols: max ratio {pointwise:.12}, max bounded_sup {sup:.12}, max a_n {a:.4}", specs.len()),
    )
}

fn lipschitz_dictionary() -> Vec<HarmonicFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    (0..20)
        .map(|k| {
            let mut coeffs = |deg: usize| {
                let v: Vec<Complex64> = (0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                AnalyticMap::Polynomial(v)
            };
            let h = coeffs(1 + k % 8);
            let g = coeffs(k % 5);
            HarmonicFunction::new(h, g)
        })
        .collect()
}

fn lipschitz_identity() -> Outcome {
    let scheme = SamplingScheme::default();
    let errors: Vec<f64> = lipschitz_dictionary()
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            let beta = f.lipschitz_number(1_000_000, 100 + k as u64).value;
            let s = seminorm(f, w(1.0), &scheme).unwrap().value;
            (beta - s).abs() / s
        })
        .collect();
    let worst = errors.iter().copied().fold(0.0, f64::max);
    ensure(worst <= 1e-2, format!("20 functions, worst relative gap {worst:.2e}"))
}

fn sandwich_suite() -> Outcome {
    let o = opts();
    let rows: Vec<(String, f64, f64, f64, f64, bool)> = default_suite()
        .par_iter()
        .map(|(spec, a)| {
            let phi = make_symbol(spec).unwrap();
            let s = sandwich(&phi, w(*a), 16, &o).unwrap();
            (format!("{spec} a={a}"), s.lower.value, s.e1, s.upper.value, s.contraction_excess, s.pass)
        })
        .collect();
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| !r.5)
        .map(|r| format!("{}: lower {:.4} E1 {:.4} upper {:.4} excess {:.1e}", r.0, r.1, r.2, r.3, r.4))
        .collect();
    let excess = rows.iter().map(|r| r.4).fold(f64::NEG_INFINITY, f64::max);
    let slack = rows.iter().map(|r| r.1 - r.3).fold(f64::NEG_INFINITY, f64::max);
    ensure(
        failing.is_empty(),
        if failing.is_empty() {
            format!("{} cases, max lower - upper {slack:.3}, max contraction excess {excess:.1e}", rows.len())
        } else {
            failing.join("; ")
        },
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_bloch-essnorm");
    let run = || Command::new(bin).args(["cross-check", "--suite", "default"]).output().unwrap();
    let (a, b) = (run(), run());
    let lib = {
        let o = opts();
        cross_check(&default_suite(), &o).unwrap().report(&o).unwrap().to_csv().unwrap()
    };
    ensure(
        a.status.success() && a.stdout == b.stdout && a.stdout == lib.as_bytes(),
        format!("{} bytes, identical {}, matches library {}", a.stdout.len(), a.stdout == b.stdout, a.stdout == lib.as_bytes()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("profile closed forms", lemma1, Duration::from_secs(10)),
        ("band limit", band_limit_rate, Duration::from_secs(1)),
        ("power-function norms", power_norms, Duration::from_secs(30)),
        ("identity symbol", identity, Duration::from_secs(120)),
        ("compact dilation", compact_case, Duration::from_secs(60)),
        ("automorphism", automorphism, Duration::from_secs(120)),
        ("Schwarz-Pick ceiling", schwarz_pick_ceiling, Duration::from_secs(600)),
        ("Lipschitz number", lipschitz_identity, Duration::from_secs(60)),
        ("sandwich", sandwich_suite, Duration::from_secs(600)),
        ("determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time budget {budget:?}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {verdict} {name} [{:.2}s]: {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
