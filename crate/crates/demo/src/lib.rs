//! Browser bindings: a thin wasm-bindgen layer over the library for the
//! static demo page. Curves come back as interleaved Float64Arrays
//! (x0, y0, x1, y1, ...) ready for canvas plotting; reports come back as
//! JSON strings. Everything also compiles and runs natively, which is
//! how the unit tests exercise it.

use std::f64::consts::PI;

use phaserep::noise::{perturb, trial_rng};
use phaserep::pffa::{estimate_phase, objective_scan, EstimationConfig};
use phaserep::phase_rep::{metric_report, PhaseDistribution};
use phaserep::rotation::interferometer_probs;
use phaserep::states::{build_state, StateSpec};
use wasm_bindgen::prelude::*;

fn parse_spec(spec_json: &str) -> Result<StateSpec, String> {
    serde_json::from_str(spec_json).map_err(|e| format!("bad spec: {e}"))
}

/// P(phi) sampled on [-pi, pi], interleaved as (phi, pdf) pairs.
#[wasm_bindgen]
pub fn pdf_points(spec_json: &str, samples: usize) -> Result<Vec<f64>, String> {
    let spec = parse_spec(spec_json)?;
    let state = build_state(&spec).map_err(|e| e.to_string())?;
    let dist = PhaseDistribution::new(&state).map_err(|e| e.to_string())?;
    let n = samples.clamp(16, 1 << 16);
    let step = std::f64::consts::TAU / n as f64;
    let mut out = Vec::with_capacity(2 * (n + 1));
    for k in 0..=n {
        let phi = -PI + k as f64 * step;
        out.push(phi);
        out.push(dist.pdf(phi));
    }
    Ok(out)
}

/// Full numerical/closed-form metric report as JSON.
#[wasm_bindgen]
pub fn metric_report_json(spec_json: &str) -> Result<String, String> {
    let spec = parse_spec(spec_json)?;
    let report = metric_report(&spec).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// One simulate -> perturb -> fit run; JSON with the estimate and the
/// signed error against the phase the statistics were simulated at.
#[wasm_bindgen]
pub fn estimate_once(spec_json: &str, phi: f64, sigma2: f64, seed: u32) -> Result<String, String> {
    let spec = parse_spec(spec_json)?;
    let state = build_state(&spec).map_err(|e| e.to_string())?;
    let clean = interferometer_probs(&state, phi);
    let measured = if sigma2 > 0.0 {
        perturb(&clean, sigma2, &mut trial_rng(u64::from(seed), 0))
    } else {
        clean
    };
    let cfg = EstimationConfig::default();
    if phi < cfg.domain.0 || phi > cfg.domain.1 {
        return Err(format!(
            "phi must lie in the estimation window [{:.3}, {:.3}]",
            cfg.domain.0, cfg.domain.1
        ));
    }
    let result = estimate_phase(&measured, &spec, &cfg).map_err(|e| e.to_string())?;
    serde_json::to_string(&serde_json::json!({
        "estimate": result.estimate,
        "residual": result.residual,
        "evaluations": result.evaluations,
        "true_phi": phi,
        "signed_error": result.estimate - phi,
    }))
    .map_err(|e| e.to_string())
}

/// Least-squares objective over [0, x_max], interleaved (x, objective):
/// the identifiability picture showing which phases the measured
/// statistics cannot be told apart from.
#[wasm_bindgen]
pub fn objective_points(
    spec_json: &str,
    phi: f64,
    sigma2: f64,
    seed: u32,
    samples: usize,
    x_max: f64,
) -> Result<Vec<f64>, String> {
    let spec = parse_spec(spec_json)?;
    let state = build_state(&spec).map_err(|e| e.to_string())?;
    let clean = interferometer_probs(&state, phi);
    let measured = if sigma2 > 0.0 {
        perturb(&clean, sigma2, &mut trial_rng(u64::from(seed), 0))
    } else {
        clean
    };
    let scan = objective_scan(&measured, &spec, samples.clamp(16, 1 << 14), 0.0, x_max)
        .map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(2 * scan.len());
    for (x, f) in scan {
        out.push(x);
        out.push(f);
    }
    Ok(out)
}
