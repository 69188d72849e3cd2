//! Closed-form metric coefficients for the three state families.
//!
//! HWHM coefficients multiply 1/N and bin-variance coefficients multiply
//! 1/N^2, with N the expected photon number, so each family is
//! Heisenberg-limited with a family-specific constant. Everything here is
//! cross-checked against the quadrature/root-finding evaluators in the
//! test and validation suites.

use std::f64::consts::{PI, SQRT_2};

/// N00N HWHM coefficient: HWHM * N = pi/2.
pub fn noon_hwhm_coeff() -> f64 {
    PI / 2.0
}

/// N00N bin-variance coefficient: variance * N^2 = pi^2/3 - 2.
pub fn noon_bin_variance_coeff() -> f64 {
    PI * PI / 3.0 - 2.0
}

/// Height of every N00N peak, independent of j_max.
pub fn noon_peak_height() -> f64 {
    1.0 / PI
}

/// Sub-state HWHM coefficient as a function of the sub-harmonic weight.
///
/// The arccos branch is fixed by the numerical oracle: it runs from pi/3
/// at r1 = 0 to the N00N limit pi/2 as r1 grows. The mirrored branch
/// (argument negated) reproduces neither endpoint.
pub fn substate_hwhm_coeff(r1: f64) -> f64 {
    let c = ((6.0 + 4.0 * r1 + r1 * r1).sqrt() - r1) / (2.0 * SQRT_2);
    2.0 * c.acos()
}

/// Sub-state kept-bin variance coefficient, closed form.
///
/// This expression reproduces the quadrature value at r1 = 0 and in the
/// r1 -> infinity limit but disagrees with it at intermediate r1; the
/// quadrature result is authoritative and reports carry a disagreement
/// flag instead of trusting this form.
pub fn substate_bin_variance_coeff(r1: f64) -> f64 {
    let r2 = r1 * r1;
    let num = 128.0 * (27.0 + 13.0 * SQRT_2) * r1
        + 144.0 * (3.0 + SQRT_2) * PI * PI * r1
        + 36.0 * PI.powi(3) * (1.0 + r2)
        - 27.0 * PI * (8.0 * SQRT_2 - 1.0 + 8.0 * r2);
    let den = 36.0 * (4.0 * (3.0 + SQRT_2) * r1 + 3.0 * PI * (1.0 + r2));
    num / den
}

/// Probability that an estimate falls in a suppressed bin under the
/// alternate-bin dropping protocol.
pub fn substate_p_drop(r1: f64) -> f64 {
    (3.0 - 4.0 * (3.0 + SQRT_2) * r1 / (PI * (1.0 + r1 * r1))) / 6.0
}

/// Fringe visibility of a vacuum-entangled path state with weight n.
pub fn noonvac_visibility(n: f64) -> f64 {
    2.0 * SQRT_2 * n.sqrt() / (2.0 + n)
}

/// Weight beyond which the fringe floor exceeds half the peak and the
/// HWHM metric loses meaning: n = 2(17 + 12*sqrt(2)), where V = 1/3.
pub fn noonvac_hwhm_n_limit() -> f64 {
    2.0 * (17.0 + 12.0 * SQRT_2)
}

/// HWHM coefficient of the vacuum-entangled family, `None` past the
/// visibility bound where the half-max level is never reached.
pub fn noonvac_hwhm_coeff(n: f64) -> Option<f64> {
    if n > noonvac_hwhm_n_limit() {
        return None;
    }
    let arg = 0.5 * (SQRT_2 + n.sqrt() - SQRT_2 * n.sqrt());
    Some(2.0 / (n + 1.0) * arg.acos())
}

/// Bin-variance coefficient of the vacuum-entangled family:
/// 2(3 - 24*sqrt(2)*sqrt(n) + 2*pi^2 + 2*n*pi^2) / (3*(n+1)^3).
pub fn noonvac_bin_variance_coeff(n: f64) -> f64 {
    2.0 * (3.0 - 24.0 * SQRT_2 * n.sqrt() + 2.0 * PI * PI + 2.0 * n * PI * PI)
        / (3.0 * (n + 1.0).powi(3))
}
