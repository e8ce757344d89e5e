//! Supremum of a non-negative field over the disk.
//!
//! A field is scanned on the origin and on every shell of a
//! [`SamplingScheme`]. The best shells are then refined by alternating
//! golden-section searches in depth (`-log2(1 - r)`) and in angle, with the
//! brackets halved after each round. Refinement only ever raises the
//! incumbent, so the result stays a lower estimate of the true supremum.

use rayon::prelude::*;
use serde::Serialize;

use crate::disk::{DiskPoint, SamplingScheme, Shell};
use crate::error::{Error, Result};

/// Shells refined after the scan.
const REFINED_SHELLS: usize = 3;
/// Golden-section steps per one-dimensional search.
const GOLDEN_STEPS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Largest value found on one shell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShellMaximum {
    /// Shell index `j`; 0 stands for the origin.
    pub index: u32,
    /// Nominal radius `1 - 2^-j`.
    pub radius: f64,
    pub value: f64,
    #[serde(skip)]
    pub witness: DiskPoint,
}

/// Estimated supremum with the point that attains it.
#[derive(Clone, Debug, PartialEq)]
pub struct SupremumResult {
    pub value: f64,
    pub witness: DiskPoint,
    pub shell_profile: Vec<ShellMaximum>,
    pub scheme_used: SamplingScheme,
}

#[derive(Clone, Copy, Debug)]
struct Incumbent {
    depth: f64,
    theta: f64,
    spacing: f64,
    value: f64,
    witness: DiskPoint,
}

fn checked<F>(field: &F, z: &DiskPoint) -> Result<f64>
where
    F: Fn(&DiskPoint) -> Result<f64>,
{
    let v = field(z)?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::NonFinite {
            witness: z.value(),
            value: v,
        });
    }
    Ok(v)
}

fn scan_shell<F>(field: &F, shell: &Shell) -> Result<Incumbent>
where
    F: Fn(&DiskPoint) -> Result<f64>,
{
    let mut best: Option<Incumbent> = None;
    for k in 0..shell.count {
        let z = shell.point(k);
        let v = checked(field, &z)?;
        if best.is_none_or(|b| v > b.value) {
            best = Some(Incumbent {
                depth: shell.depth(),
                theta: shell.angle(k),
                spacing: shell.spacing(),
                value: v,
                witness: z,
            });
        }
    }
    Ok(best.expect("shells are non-empty"))
}

/// Maximizes `f` on `[a, b]` assuming unimodality; returns the best point
/// seen.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_STEPS {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn probe<F>(field: &F, depth: f64, theta: f64) -> Option<(f64, DiskPoint)>
where
    F: Fn(&DiskPoint) -> Result<f64>,
{
    let z = DiskPoint::from_depth(depth, theta).ok()?;
    let v = checked(field, &z).ok()?;
    Some((v, z))
}

fn refine<F>(field: &F, start: Incumbent, rounds: u32, max_depth: Option<f64>) -> Incumbent
where
    F: Fn(&DiskPoint) -> Result<f64>,
{
    let mut inc = start;
    let value_of = |d: f64, t: f64| probe(field, d, t).map_or(-1.0, |p| p.0);
    for round in 0..rounds {
        let shrink = 0.5f64.powi(round as i32);
        if let Some(max_depth) = max_depth {
            let half = shrink;
            let lo = (inc.depth - half).max(0.0);
            let hi = (inc.depth + half).min(max_depth);
            let theta = inc.theta;
            let (d, _) = golden_max(|d| value_of(d, theta), lo, hi);
            if let Some((v, z)) = probe(field, d, theta) {
                if v > inc.value {
                    inc.depth = d;
                    inc.value = v;
                    inc.witness = z;
                }
            }
        }
        if inc.depth > 0.0 {
            let half = inc.spacing * shrink;
            let depth = inc.depth;
            let (t, _) = golden_max(|t| value_of(depth, t), inc.theta - half, inc.theta + half);
            if let Some((v, z)) = probe(field, depth, t) {
                if v > inc.value {
                    inc.theta = t;
                    inc.value = v;
                    inc.witness = z;
                }
            }
        }
    }
    inc
}

fn origin_incumbent<F>(field: &F) -> Result<Incumbent>
where
    F: Fn(&DiskPoint) -> Result<f64>,
{
    let z = DiskPoint::origin();
    Ok(Incumbent {
        depth: 0.0,
        theta: 0.0,
        spacing: std::f64::consts::PI,
        value: checked(field, &z)?,
        witness: z,
    })
}

fn to_maximum(index: u32, inc: &Incumbent) -> ShellMaximum {
    ShellMaximum {
        index,
        radius: 1.0 - (-(index as f64)).exp2(),
        value: inc.value,
        witness: inc.witness,
    }
}

/// Supremum of `field` over the disk.
///
/// The origin is always evaluated. `field` must return finite
/// non-negative values; anything else aborts with [`Error::NonFinite`].
pub fn supremum<F>(field: F, scheme: &SamplingScheme) -> Result<SupremumResult>
where
    F: Fn(&DiskPoint) -> Result<f64> + Sync,
{
    let shells = scheme.shells()?;
    let mut incumbents = vec![origin_incumbent(&field)?];
    let scanned: Vec<Incumbent> = shells
        .par_iter()
        .map(|s| scan_shell(&field, s))
        .collect::<Result<_>>()?;
    incumbents.extend(scanned);

    let mut order: Vec<usize> = (0..incumbents.len()).collect();
    order.sort_by(|&a, &b| incumbents[b].value.total_cmp(&incumbents[a].value).then(a.cmp(&b)));
    order.truncate(REFINED_SHELLS);
    let refined: Vec<(usize, Incumbent)> = order
        .par_iter()
        .map(|&i| (i, refine(&field, incumbents[i], scheme.refinement_rounds, Some(scheme.radial_levels as f64))))
        .collect();
    for (i, inc) in refined {
        incumbents[i] = inc;
    }

    let profile: Vec<ShellMaximum> = incumbents
        .iter()
        .enumerate()
        .map(|(i, inc)| to_maximum(i as u32, inc))
        .collect();
    let best = profile
        .iter()
        .fold(&profile[0], |acc, m| if m.value > acc.value { m } else { acc });
    Ok(SupremumResult {
        value: best.value,
        witness: best.witness,
        shell_profile: profile.clone(),
        scheme_used: scheme.clone(),
    })
}

/// Maximum of `field` on every shell of `scheme`, each refined in angle
/// only, so every witness stays on its nominal circle.
pub fn shell_maxima<F>(field: F, scheme: &SamplingScheme) -> Result<Vec<ShellMaximum>>
where
    F: Fn(&DiskPoint) -> Result<f64> + Sync,
{
    let shells = scheme.shells()?;
    shells
        .par_iter()
        .map(|s| {
            let inc = scan_shell(&field, s)?;
            let inc = refine(&field, inc, scheme.refinement_rounds, None);
            Ok(to_maximum(s.index, &inc))
        })
        .collect()
}

/// Maximum of `field` over an explicit point set; 0 for an empty set.
pub fn max_over<F>(field: F, points: &[DiskPoint]) -> Result<(f64, Option<DiskPoint>)>
where
    F: Fn(&DiskPoint) -> Result<f64> + Sync,
{
    let values: Vec<f64> = points
        .par_iter()
        .map(|z| checked(&field, z))
        .collect::<Result<_>>()?;
    let mut best = (0.0, None);
    for (z, v) in points.iter().zip(values) {
        if best.1.is_none() || v > best.0 {
            best = (v, Some(*z));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(levels: u32) -> SamplingScheme {
        SamplingScheme {
            radial_levels: levels,
            angular_base: 32,
            ..SamplingScheme::default()
        }
    }

    #[test]
    fn radial_bump_found_between_shells() {
        // peak of x (1 - x^2) at 1/sqrt(3), between shells 1 and 2
        let f = |z: &DiskPoint| Ok(z.modulus() * z.gap());
        let r = supremum(f, &scheme(10)).unwrap();
        let exact = 2.0 / (3.0 * 3f64.sqrt());
        assert!((r.value - exact).abs() < 1e-14, "{}", r.value);
        let max = r.shell_profile.iter().map(|m| m.value).fold(0.0, f64::max);
        assert_eq!(max, r.value);
        assert_eq!(f(&r.witness).unwrap(), r.value);
    }

    #[test]
    fn angular_peak_refined() {
        let target = 1.234_567;
        let f = move |z: &DiskPoint| {
            let d = (z.value().arg() - target).cos();
            Ok((1.0 + d) * z.modulus())
        };
        let r = supremum(f, &scheme(6)).unwrap();
        let at_top = 2.0 * (1.0 - 2f64.powi(-6));
        assert!((r.value - at_top).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn origin_can_win() {
        let r = supremum(|z: &DiskPoint| Ok(z.gap()), &scheme(5)).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witness, DiskPoint::origin());
        assert_eq!(r.shell_profile[0].index, 0);
    }

    #[test]
    fn negative_or_nan_rejected() {
        assert!(supremum(|_: &DiskPoint| Ok(-1.0), &scheme(3)).is_err());
        assert!(supremum(|_: &DiskPoint| Ok(f64::NAN), &scheme(3)).is_err());
    }

    #[test]
    fn refinement_never_lowers() {
        let f = |z: &DiskPoint| Ok((3.0 * z.value().arg()).sin().abs() * z.gap().sqrt());
        let mut s = scheme(8);
        s.refinement_rounds = 0;
        let raw = supremum(f, &s).unwrap().value;
        s.refinement_rounds = 4;
        assert!(supremum(f, &s).unwrap().value >= raw);
    }

    #[test]
    fn empty_set_gives_zero() {
        let (v, w) = max_over(|_: &DiskPoint| Ok(5.0), &[]).unwrap();
        assert_eq!(v, 0.0);
        assert!(w.is_none());
    }

    #[test]
    fn shell_maxima_stay_on_shells() {
        let f = |z: &DiskPoint| Ok(z.value().re.abs() * z.gap());
        let m = shell_maxima(f, &scheme(6)).unwrap();
        assert_eq!(m.len(), 6);
        for s in &m {
            assert!((s.witness.modulus() - s.radius).abs() < 1e-15);
        }
    }
}
