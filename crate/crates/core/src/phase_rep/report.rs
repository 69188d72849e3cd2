//! Side-by-side numerical and closed-form metric evaluation for one
//! state specification.

use serde::Serialize;

use super::formulas;
use super::{bin_layout, PhaseDistribution, PhaseRepError};
use crate::states::{build_state, StateError, StateSpec};

/// Relative tolerance for flagging twin agreement.
pub const TWIN_REL_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    PhaseRep(#[from] PhaseRepError),
}

/// One metric with its numerically computed value, its closed-form twin
/// where one exists, and an agreement flag.
#[derive(Clone, Debug, Serialize)]
pub struct MetricPair {
    pub numerical: Option<f64>,
    pub closed_form: Option<f64>,
    pub agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MetricPair {
    fn new(numerical: Option<f64>, closed_form: Option<f64>) -> Self {
        let agrees = match (numerical, closed_form) {
            (Some(a), Some(b)) => {
                let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                Some((a - b).abs() <= TWIN_REL_TOL * scale)
            }
            _ => None,
        };
        MetricPair {
            numerical,
            closed_form,
            agrees,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// All metrics of one state, absolute (HWHM in radians, variance in
/// radians squared), with closed-form twins where a formula exists.
#[derive(Clone, Debug, Serialize)]
pub struct MetricReport {
    pub spec: StateSpec,
    pub photon_cost: f64,
    pub bin_count: u32,
    pub bin_width: f64,
    pub peak_height: MetricPair,
    pub visibility: MetricPair,
    pub hwhm: MetricPair,
    pub bin_variance: MetricPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_drop: Option<MetricPair>,
}

/// Evaluates every metric numerically and pairs it with whichever closed
/// form exists for the family of `spec`.
pub fn metric_report(spec: &StateSpec) -> Result<MetricReport, ReportError> {
    let state = build_state(spec)?;
    let dist = PhaseDistribution::new(&state)?;
    let layout = bin_layout(&state)?;
    let n = state.photon_cost();

    let (_, peak) = dist.refined_peak()?;
    let visibility = dist.visibility()?;
    let hwhm = dist.hwhm(&layout)?;
    let bin_variance = dist.bin_variance(&layout)?;

    let peak_pair = MetricPair::new(
        Some(peak),
        matches!(spec, StateSpec::Noon { .. }).then(formulas::noon_peak_height),
    );

    let vis_closed = match spec {
        StateSpec::Noon { .. } => Some(1.0),
        StateSpec::NoonVac { n, .. } => Some(formulas::noonvac_visibility(*n)),
        _ => None,
    };
    let vis_pair = MetricPair::new(Some(visibility), vis_closed);

    let hwhm_closed = match spec {
        StateSpec::Noon { .. } => Some(formulas::noon_hwhm_coeff() / n),
        StateSpec::SubState { r1, .. } => Some(formulas::substate_hwhm_coeff(*r1) / n),
        StateSpec::NoonVac { n: weight, .. } => {
            formulas::noonvac_hwhm_coeff(*weight).map(|c| c / n)
        }
        StateSpec::General { .. } => None,
    };
    let mut hwhm_pair = MetricPair::new(hwhm, hwhm_closed);
    if hwhm.is_none() {
        hwhm_pair = hwhm_pair.with_note("fringe floor exceeds half the peak; HWHM undefined");
    }

    let bv_closed = match spec {
        StateSpec::Noon { .. } => Some(formulas::noon_bin_variance_coeff() / (n * n)),
        StateSpec::SubState { r1, .. } => {
            Some(formulas::substate_bin_variance_coeff(*r1) / (n * n))
        }
        StateSpec::NoonVac { n: weight, .. } => {
            Some(formulas::noonvac_bin_variance_coeff(*weight) / (n * n))
        }
        StateSpec::General { .. } => None,
    };
    let mut bv_pair = MetricPair::new(Some(bin_variance), bv_closed);
    if matches!(spec, StateSpec::SubState { .. }) {
        bv_pair = bv_pair.with_note(
            "closed form reproduces only the r1 endpoints; the quadrature value is authoritative",
        );
    }

    let p_drop = layout
        .kept_mask
        .is_some()
        .then(|| -> Result<MetricPair, ReportError> {
            let numerical = dist.p_drop(&layout)?;
            let closed = match spec {
                StateSpec::SubState { r1, .. } => Some(formulas::substate_p_drop(*r1)),
                _ => None,
            };
            Ok(MetricPair::new(Some(numerical), closed))
        })
        .transpose()?;

    Ok(MetricReport {
        spec: *spec,
        photon_cost: n,
        bin_count: layout.bin_count,
        bin_width: layout.bin_width,
        peak_height: peak_pair,
        visibility: vis_pair,
        hwhm: hwhm_pair,
        bin_variance: bv_pair,
        p_drop,
    })
}
