//! Additive white-Gaussian-noise robustness study for the template
//! fitting estimator: perturb each measured probability with an
//! independent Gaussian sample, re-run the fit, and aggregate the error
//! statistics over many trials and noise powers.
//!
//! Reproducibility: every trial draws from its own counter-derived
//! ChaCha stream, so results are a pure function of (spec, configs,
//! seed) no matter how trials are scheduled across threads. Aggregation
//! always reduces in trial order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::pffa::{estimate_phase, EstimationConfig, PffaError};
use crate::rotation::{interferometer_probs, MeasurementDistribution};
use crate::states::{build_state, StateError, StateSpec};

/// Stream offset separating the absolute-error sub-experiment from the
/// signed-error one, so the two never share noise draws.
const ABS_STREAM_BASE: u64 = 1 << 63;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("trial counts must be at least 1")]
    NoTrials,
    #[error("noise power must be non-negative and finite, got {0}")]
    InvalidSigma2(f64),
    #[error("estimation failed in trial {trial}: {source}")]
    Estimation { trial: u64, source: PffaError },
}

/// One noise-study configuration.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// AWGN power sigma^2 added to each probability.
    pub sigma2: f64,
    /// Trials averaged for the signed mean error.
    pub trials_mean: u64,
    /// Trials averaged for the mean absolute error.
    pub trials_abs: u64,
    /// True arm phase the statistics are generated at, radians.
    pub phi_true: f64,
    /// Master seed; trial t uses stream t of this seed.
    pub seed: u64,
    /// Clamp perturbed probabilities into [0, 1]. Off by default: the
    /// fit accepts arbitrary real vectors and no projection is applied.
    pub clamp: bool,
}

impl NoiseConfig {
    pub fn new(sigma2: f64, phi_true: f64, seed: u64) -> Self {
        NoiseConfig {
            sigma2,
            trials_mean: 40_000,
            trials_abs: 2_000,
            phi_true,
            seed,
            clamp: false,
        }
    }

    fn validate(&self) -> Result<(), NoiseError> {
        if self.trials_mean == 0 || self.trials_abs == 0 {
            return Err(NoiseError::NoTrials);
        }
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(NoiseError::InvalidSigma2(self.sigma2));
        }
        Ok(())
    }
}

/// Aggregated error statistics at one noise power.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sigma2: f64,
    /// Mean signed error over `trials` draws, radians.
    pub mean_error: f64,
    /// Mean |error| over the (separate) absolute-error sub-experiment.
    pub mean_abs_error: f64,
    /// Sample standard deviation of the signed errors.
    pub std_error: f64,
    /// Trial count of the signed-error sub-experiment.
    pub trials: u64,
}

/// A standard normal draw via Box-Muller on explicit 53-bit uniforms.
///
/// Two `next_u64` calls per sample keep the stream accounting exact.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let scale = (-53f64).exp2();
    let u = ((rng.next_u64() >> 11) + 1) as f64 * scale; // (0, 1]
    let v = (rng.next_u64() >> 11) as f64 * scale; // [0, 1)
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

/// Adds an independent Gaussian(0, sigma2) sample to each probability, in
/// ascending m order. No clamping and no renormalization: the perturbed
/// vector may leave [0, 1] and need not sum to one.
pub fn perturb(
    measured: &MeasurementDistribution,
    sigma2: f64,
    rng: &mut impl RngCore,
) -> MeasurementDistribution {
    let sigma = sigma2.sqrt();
    let mut out = measured.clone();
    for p in out.probs.values_mut() {
        *p += sigma * standard_normal(rng);
    }
    out
}

/// The RNG behind trial `stream` of a master seed. Trial t of the
/// signed-error experiment uses stream t; front ends wanting "the same
/// noise the first trial saw" use stream 0.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn run_one(
    clean: &MeasurementDistribution,
    spec: &StateSpec,
    config: &NoiseConfig,
    estimation: &EstimationConfig,
    stream: u64,
) -> Result<f64, PffaError> {
    let mut rng = trial_rng(config.seed, stream);
    let mut noisy = perturb(clean, config.sigma2, &mut rng);
    if config.clamp {
        for p in noisy.probs.values_mut() {
            *p = p.clamp(0.0, 1.0);
        }
    }
    let result = estimate_phase(&noisy, spec, estimation)?;
    Ok(result.estimate - config.phi_true)
}

fn collect_errors(
    clean: &MeasurementDistribution,
    spec: &StateSpec,
    config: &NoiseConfig,
    estimation: &EstimationConfig,
    trials: u64,
    stream_base: u64,
) -> Result<Vec<f64>, NoiseError> {
    #[cfg(feature = "parallel")]
    let raw: Vec<Result<f64, PffaError>> = (0..trials)
        .into_par_iter()
        .map(|t| run_one(clean, spec, config, estimation, stream_base + t))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let raw: Vec<Result<f64, PffaError>> = (0..trials)
        .map(|t| run_one(clean, spec, config, estimation, stream_base + t))
        .collect();

    raw.into_iter()
        .enumerate()
        .map(|(t, r)| {
            r.map_err(|source| NoiseError::Estimation {
                trial: t as u64,
                source,
            })
        })
        .collect()
}

/// Runs the two sub-experiments at one noise power: `trials_mean` draws
/// for the signed average and `trials_abs` independent draws for the
/// absolute average, mirroring how the two curves are estimated
/// separately.
pub fn run_trials(
    spec: &StateSpec,
    config: &NoiseConfig,
    estimation: &EstimationConfig,
) -> Result<SweepRow, NoiseError> {
    config.validate()?;
    let clean = interferometer_probs(&build_state(spec)?, config.phi_true);

    let signed = collect_errors(&clean, spec, config, estimation, config.trials_mean, 0)?;
    let mean_error = signed.iter().sum::<f64>() / signed.len() as f64;
    let var = if signed.len() > 1 {
        signed
            .iter()
            .map(|e| (e - mean_error) * (e - mean_error))
            .sum::<f64>()
            / (signed.len() - 1) as f64
    } else {
        0.0
    };

    let abs = collect_errors(
        &clean,
        spec,
        config,
        estimation,
        config.trials_abs,
        ABS_STREAM_BASE,
    )?;
    let mean_abs_error = abs.iter().map(|e| e.abs()).sum::<f64>() / abs.len() as f64;

    Ok(SweepRow {
        sigma2: config.sigma2,
        mean_error,
        mean_abs_error,
        std_error: var.sqrt(),
        trials: config.trials_mean,
    })
}

/// One [`SweepRow`] per noise power, in input order, all deriving their
/// trial streams from the same master seed.
pub fn sweep(
    spec: &StateSpec,
    sigma2_list: &[f64],
    base_config: &NoiseConfig,
    estimation: &EstimationConfig,
) -> Result<Vec<SweepRow>, NoiseError> {
    sigma2_list
        .iter()
        .map(|&sigma2| {
            run_trials(
                spec,
                &NoiseConfig {
                    sigma2,
                    ..*base_config
                },
                estimation,
            )
        })
        .collect()
}
