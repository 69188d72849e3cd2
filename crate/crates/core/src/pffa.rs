//! Phase estimation by template fitting: the measured set of 2j+1
//! probabilities is fit against the family f_m(x) of statistics the same
//! state would produce at a trial phase x, by least squares over the
//! scalar x.
//!
//! The fit needs nothing beyond a standard interferometer's number
//! statistics; all higher-order phase information is recovered by the
//! search over x. The objective is scanned on a coarse grid and the
//! bracketing interval refined by golden section, which is derivative
//! free and deterministic.

use std::cell::RefCell;
use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::golden_min;
use crate::rotation::{interferometer_probs, MeasurementDistribution, StateRotator};
use crate::states::{build_state, StateError, StateSpec};

#[derive(Debug, Error, PartialEq)]
pub enum PffaError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("estimation domain is empty: [{a}, {b}]")]
    EmptyDomain { a: f64, b: f64 },
    #[error("coarse grid needs at least 64 points, got {0}")]
    CoarseGridTooSmall(usize),
    #[error("refinement tolerance must be at least 1e-14, got {0}")]
    RefineTolTooSmall(f64),
    #[error("objective is not finite at x = {x}")]
    NonFiniteObjective { x: f64 },
}

/// Search window and termination settings for the phase fit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EstimationConfig {
    /// Closed search interval, radians.
    pub domain: (f64, f64),
    /// Number of coarse-scan points, endpoints included.
    pub coarse_grid: usize,
    /// Bracket width at which golden-section refinement stops, radians.
    pub refine_tol: f64,
}

impl Default for EstimationConfig {
    fn default() -> Self {
        // One invertible window of the four-photon demonstration.
        EstimationConfig {
            domain: (0.0, FRAC_PI_4),
            coarse_grid: 4097,
            refine_tol: 1e-13,
        }
    }
}

impl EstimationConfig {
    pub fn validate(&self) -> Result<(), PffaError> {
        let (a, b) = self.domain;
        if a >= b || !a.is_finite() || !b.is_finite() {
            return Err(PffaError::EmptyDomain { a, b });
        }
        if self.coarse_grid < 64 {
            return Err(PffaError::CoarseGridTooSmall(self.coarse_grid));
        }
        if self.refine_tol < 1e-14 {
            return Err(PffaError::RefineTolTooSmall(self.refine_tol));
        }
        Ok(())
    }
}

/// Outcome of one fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimationResult {
    /// Estimated phase, radians; always inside the configured domain.
    pub estimate: f64,
    /// Least-squares objective at the estimate.
    pub residual: f64,
    /// Objective evaluations spent (coarse scan plus refinement).
    pub evaluations: u64,
}

/// Template statistics f_m(x): the interferometer output the specified
/// state would produce at trial phase x. Same code path as the forward
/// simulation.
pub fn template_probs(spec: &StateSpec, x: f64) -> Result<MeasurementDistribution, StateError> {
    Ok(interferometer_probs(&build_state(spec)?, x))
}

/// Objective evaluator over one fixed measurement: the template state's
/// spectral data and the measured vector are laid out once, so each
/// evaluation costs one small rotation.
struct Objective {
    rotator: StateRotator,
    measured: Vec<f64>,
    scratch: RefCell<Vec<f64>>,
}

impl Objective {
    fn new(measured: &MeasurementDistribution, spec: &StateSpec) -> Result<Self, StateError> {
        let rotator = StateRotator::new(&build_state(spec)?);
        let measured_flat: Vec<f64> = rotator
            .support()
            .iter()
            .map(|dm| measured.probs.get(dm).copied().unwrap_or(0.0))
            .collect();
        let len = measured_flat.len();
        Ok(Objective {
            rotator,
            measured: measured_flat,
            scratch: RefCell::new(vec![0.0; len]),
        })
    }

    fn eval(&self, x: f64) -> f64 {
        let mut template = self.scratch.borrow_mut();
        self.rotator.probs_into(x, &mut template);
        self.measured
            .iter()
            .zip(template.iter())
            .map(|(p, f)| (p - f) * (p - f))
            .sum()
    }
}

/// Sum of squared differences between the measured probabilities and the
/// template at x. Measured values outside the template support are
/// ignored; template m values missing from the measurement count as 0.
/// Arbitrary real inputs are accepted, so noisy vectors that stray
/// outside [0, 1] or do not sum to one are fine.
pub fn lms_objective(
    measured: &MeasurementDistribution,
    spec: &StateSpec,
    x: f64,
) -> Result<f64, StateError> {
    Ok(Objective::new(measured, spec)?.eval(x))
}

/// Global least-squares fit of the measured statistics over the domain.
///
/// A coarse scan (endpoints included, ties broken toward smaller x)
/// brackets the minimum; golden-section refinement shrinks the bracket
/// below `refine_tol`. The returned estimate is the best point ever
/// evaluated, so an exact hit on a grid node is never displaced by
/// refinement.
pub fn estimate_phase(
    measured: &MeasurementDistribution,
    spec: &StateSpec,
    config: &EstimationConfig,
) -> Result<EstimationResult, PffaError> {
    config.validate()?;
    let obj = Objective::new(measured, spec)?;
    let objective = |x: f64| obj.eval(x);

    let (a, b) = config.domain;
    let n = config.coarse_grid;
    let step = (b - a) / (n - 1) as f64;
    let mut best_x = a;
    let mut best_f = f64::INFINITY;
    let mut best_i = 0usize;
    for i in 0..n {
        let x = if i + 1 == n { b } else { a + i as f64 * step };
        let f = objective(x);
        if !f.is_finite() {
            return Err(PffaError::NonFiniteObjective { x });
        }
        if f < best_f {
            best_f = f;
            best_x = x;
            best_i = i;
        }
    }

    let lo = if best_i == 0 {
        a
    } else {
        a + (best_i - 1) as f64 * step
    };
    let hi = if best_i + 1 >= n {
        b
    } else {
        a + (best_i + 1) as f64 * step
    };
    let refined = golden_min(objective, lo, hi, config.refine_tol);

    let (estimate, residual) = if refined.fx < best_f {
        (refined.x, refined.fx)
    } else {
        (best_x, best_f)
    };
    Ok(EstimationResult {
        estimate,
        residual,
        evaluations: n as u64 + refined.evaluations,
    })
}

/// Objective values on an even grid over `[lo, hi]` - the identifiability
/// diagnostic. Scanning a full turn shows every phase the measured
/// statistics cannot be distinguished from, which is what confines the
/// working domain to a single bin width.
pub fn objective_scan(
    measured: &MeasurementDistribution,
    spec: &StateSpec,
    points: usize,
    lo: f64,
    hi: f64,
) -> Result<Vec<(f64, f64)>, StateError> {
    let obj = Objective::new(measured, spec)?;
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    Ok((0..points.max(2))
        .map(|i| {
            let x = lo + i as f64 * step;
            (x, obj.eval(x))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let c = EstimationConfig {
            domain: (1.0, 1.0),
            ..Default::default()
        };
        assert!(matches!(c.validate(), Err(PffaError::EmptyDomain { .. })));
        let c = EstimationConfig {
            coarse_grid: 10,
            ..Default::default()
        };
        assert!(matches!(
            c.validate(),
            Err(PffaError::CoarseGridTooSmall(10))
        ));
        let c = EstimationConfig {
            refine_tol: 1e-16,
            ..Default::default()
        };
        assert!(matches!(c.validate(), Err(PffaError::RefineTolTooSmall(_))));
        assert!(EstimationConfig::default().validate().is_ok());
    }

    #[test]
    fn template_support_size() {
        let spec = StateSpec::Noon { j_max: 2 };
        let t = template_probs(&spec, 0.3).unwrap();
        assert_eq!(t.probs.len(), 5, "2j+1 template functions for j = 2");
    }

    #[test]
    fn non_finite_measurement_is_reported() {
        let spec = StateSpec::Noon { j_max: 2 };
        let mut measured = template_probs(&spec, 0.1).unwrap();
        *measured.probs.get_mut(&4).unwrap() = f64::NAN;
        let err = estimate_phase(&measured, &spec, &EstimationConfig::default()).unwrap_err();
        assert!(matches!(err, PffaError::NonFiniteObjective { .. }));
    }
}
