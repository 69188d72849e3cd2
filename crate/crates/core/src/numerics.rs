//! One-dimensional numerical primitives shared by the metric evaluators
//! and the estimator: adaptive Simpson quadrature, golden-section
//! minimization, and bisection root finding.
//!
//! All routines are deterministic given their inputs; none hold state.

/// Inverse golden ratio squared, the interval split used by golden-section search.
const INV_GOLD: f64 = 0.381_966_011_250_105_2; // (3 - sqrt(5)) / 2

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let fc = f(c);
    let area = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    (c, fc, area)
}

#[allow(clippy::too_many_arguments)] // recursion kernel threads its cached endpoints
fn simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    c: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let (cl, fcl, left) = simpson(f, a, fa, c, fc);
    let (cr, fcr, right) = simpson(f, c, fc, b, fb);
    let delta = left + right - whole;
    if force == 0 && (depth == 0 || delta.abs() <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    let nf = force.saturating_sub(1);
    simpson_rec(
        f,
        a,
        fa,
        c,
        fc,
        cl,
        fcl,
        left,
        0.5 * tol,
        depth.saturating_sub(1),
        nf,
    ) + simpson_rec(
        f,
        c,
        fc,
        b,
        fb,
        cr,
        fcr,
        right,
        0.5 * tol,
        depth.saturating_sub(1),
        nf,
    )
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The first 8 subdivision levels are unconditional so that periodic
/// integrands sampled at symmetry points cannot fool the acceptance test;
/// refinement beyond that is driven by the usual Richardson estimate, with
/// total depth capped at 48.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (c, fc, whole) = simpson(&f, a, fa, b, fb);
    simpson_rec(&f, a, fa, b, fb, c, fc, whole, tol, 48, 8)
}

/// Outcome of a golden-section search: the best probed point.
#[derive(Clone, Copy, Debug)]
pub struct GoldenResult {
    pub x: f64,
    pub fx: f64,
    pub evaluations: u64,
}

/// Golden-section minimization of `f` on `[a, b]`, shrinking the bracket
/// until its width drops below `xtol`.
///
/// Returns the best point evaluated, which is deterministic for a given
/// `(f, a, b, xtol)`. Ties keep the earlier probe.
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> GoldenResult {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = lo + INV_GOLD * (hi - lo);
    let mut x2 = hi - INV_GOLD * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2u64;
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    while hi - lo > xtol && evaluations < 10_000 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + INV_GOLD * (hi - lo);
            f1 = f(x1);
            evaluations += 1;
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - INV_GOLD * (hi - lo);
            f2 = f(x2);
            evaluations += 1;
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }

    GoldenResult {
        x: best.0,
        fx: best.1,
        evaluations,
    }
}

/// Golden-section maximization; returns the best probed point.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> GoldenResult {
    let r = golden_min(|x| -f(x), a, b, xtol);
    GoldenResult {
        x: r.x,
        fx: -r.fx,
        evaluations: r.evaluations,
    }
}

/// Bisection root of `f` on `[a, b]`, solved to `xtol` in the abscissa.
///
/// Returns `None` when `f(a)` and `f(b)` do not straddle zero.
pub fn bisect(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> Option<f64> {
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let (mut lo, mut hi, mut flo) = (a, b, fa);
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Greatest common divisor of two non-negative integers.
pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_polynomial() {
        let q = adaptive_simpson(|x| x * x, 0.0, 1.0, 1e-12);
        assert!((q - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_oscillatory() {
        let q = adaptive_simpson(|x| (8.0 * x).cos().powi(2), -PI, PI, 1e-12);
        assert!((q - PI).abs() < 1e-10);
    }

    #[test]
    fn golden_quadratic() {
        let r = golden_min(|x| (x - 0.2) * (x - 0.2), -1.0, 1.0, 1e-12);
        assert!((r.x - 0.2).abs() < 1e-10);
        assert!(r.fx < 1e-20);
    }

    #[test]
    fn golden_max_cosine() {
        let r = golden_max(|x| x.cos(), -1.0, 1.5, 1e-12);
        // Position is plateau-limited near a smooth extremum (f64 cannot
        // distinguish cos(x) from 1 below |x| ~ 1e-8); the value is exact.
        assert!(r.x.abs() < 1e-7);
        assert!((r.fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bisect_cosine_root() {
        let x = bisect(|x| x.cos(), 0.0, 3.0, 1e-13).unwrap();
        assert!((x - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_no_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn gcd_values() {
        assert_eq!(gcd(8, 16), 8);
        assert_eq!(gcd(3, 0), 3);
        assert_eq!(gcd(12, 18), 6);
    }
}
