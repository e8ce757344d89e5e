//! Brute-force maximization of `H(x) = x^(n-1) (1 - x^2)^alpha`, written
//! without reference to the closed forms in [`crate::extremal`].
//!
//! A uniform grid brackets the maximizer. Golden-section search on `H`
//! then gives the maximum value, and bisection on the sign of a
//! complex-step derivative `Im H(x + ih) / h` gives the maximizer itself.
//! Golden section alone would pin the location only to about
//! `sqrt(eps)`, because `H` is flat at its peak.

use num_complex::Complex64;
use rayon::prelude::*;

const GOLDEN_STEPS: usize = 200;
const BISECTION_STEPS: usize = 200;
const COMPLEX_STEP: f64 = 1e-200;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizer and maximum located by search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleExtremum {
    pub argmax: f64,
    pub max: f64,
}

fn ln_h(n: u64, alpha: f64, x: f64) -> f64 {
    let mut v = alpha * (1.0 - x * x).ln();
    if n > 1 {
        v += (n - 1) as f64 * x.ln();
    }
    v
}

fn h(n: u64, alpha: f64, x: f64) -> f64 {
    if x >= 1.0 {
        return 0.0;
    }
    if n > 1 && x <= 0.0 {
        return 0.0;
    }
    ln_h(n, alpha, x).exp()
}

/// `d/dx ln H` by complex step; its sign is that of `H'`.
fn log_slope(n: u64, alpha: f64, x: f64) -> f64 {
    let z = Complex64::new(x, COMPLEX_STEP);
    let one = Complex64::new(1.0, 0.0);
    let mut v = (one - z * z).ln() * alpha;
    if n > 1 {
        v += z.ln() * (n - 1) as f64;
    }
    v.im / COMPLEX_STEP
}

/// Maximizes `H` over `[0, 1]` using a `grid`-point bracket.
pub fn profile_maximum(n: u64, alpha: f64, grid: usize) -> OracleExtremum {
    let grid = grid.max(3);
    let step = 1.0 / (grid - 1) as f64;
    let (k, _) = (0..grid)
        .map(|k| (k, h(n, alpha, k as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
    let lo = (k.saturating_sub(1)) as f64 * step;
    let hi = ((k + 1).min(grid - 1)) as f64 * step;

    let argmax = if n == 1 {
        // H is decreasing from x = 0
        0.0
    } else {
        let (mut a, mut b) = (lo.max(f64::MIN_POSITIVE), hi.min(1.0 - f64::EPSILON));
        for _ in 0..BISECTION_STEPS {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if log_slope(n, alpha, m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (h(n, alpha, x1), h(n, alpha, x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = h(n, alpha, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = h(n, alpha, x2);
        }
    }
    let max = f1.max(f2).max(h(n, alpha, lo)).max(h(n, alpha, argmax));
    OracleExtremum { argmax, max }
}

/// Checks that `H` strictly increases on `[0, peak]` and strictly decreases
/// on `[peak, 1]`, each on a `points`-point grid. Comparisons are made on
/// `ln H`, which keeps them meaningful where `H` underflows.
pub fn unimodal_about(n: u64, alpha: f64, peak: f64, points: usize) -> bool {
    let points = points.max(2);
    let at = |x: f64| {
        if x >= 1.0 || (n > 1 && x <= 0.0) {
            f64::NEG_INFINITY
        } else {
            ln_h(n, alpha, x)
        }
    };
    let rising = peak <= 0.0
        || (0..points - 1).into_par_iter().all(|k| {
            let x0 = peak * k as f64 / (points - 1) as f64;
            let x1 = peak * (k + 1) as f64 / (points - 1) as f64;
            at(x1) > at(x0)
        });
    let falling = (0..points - 1).into_par_iter().all(|k| {
        let x0 = peak + (1.0 - peak) * k as f64 / (points - 1) as f64;
        let x1 = peak + (1.0 - peak) * (k + 1) as f64 / (points - 1) as f64;
        at(x1) < at(x0)
    });
    rising && falling
}
