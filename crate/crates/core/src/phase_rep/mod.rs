//! The phase representation: the probability density P(phi) conjugate to
//! the number-difference measurement, its bin geometry, and the local
//! performance metrics defined on one bin.
//!
//! For states with a unique j at every occupied m the phase wavefunction
//! reduces to a Fourier series over the number-ket amplitudes,
//! Psi(phi) = (2*pi)^{-1/2} Sum_m c_m e^{i m phi}, and P = |Psi|^2.
//! Every metric here is computed numerically (quadrature, root finding,
//! scan-plus-refine extrema); the closed forms in [`formulas`] provide the
//! twin values the numbers are checked against.

pub mod formulas;
mod report;

pub use report::{metric_report, MetricPair, MetricReport};

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{adaptive_simpson, bisect, golden_max};
use crate::states::QuantumState;

/// Quadrature tolerance for bin masses and moments.
const QUAD_TOL: f64 = 1e-13;
/// Abscissa tolerance for extremum refinement and root finding.
const PHI_TOL: f64 = 1e-12;
/// Dense-scan resolution per period or half-bin.
const SCAN_POINTS: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum PhaseRepError {
    #[error("phase representation requires a unique j per m; doubled m = {doubled_m} appears under multiple j")]
    DuplicateM { doubled_m: i32 },
    #[error("state has no phase periodicity")]
    Aperiodic,
    #[error("m support mixes parities; the density is not 2*pi-periodic")]
    MixedParity,
    #[error("layout carries no kept/dropped split")]
    NoDroppedBins,
    #[error("bin carries no probability mass")]
    ZeroBinMass,
}

/// Evaluator for P(phi) = |Psi(phi)|^2 on [-pi, pi).
#[derive(Clone, Debug)]
pub struct PhaseDistribution {
    coeffs: Vec<(i32, Complex64)>,
    period: Option<f64>,
    gap: Option<f64>,
}

impl PhaseDistribution {
    /// Builds the evaluator, rejecting states where one m is populated by
    /// several j blocks (no Fourier reduction exists for those).
    pub fn new(state: &QuantumState) -> Result<Self, PhaseRepError> {
        let mut coeffs: Vec<(i32, Complex64)> = Vec::with_capacity(state.entries().len());
        for e in state.entries() {
            let dm = e.m.doubled();
            if coeffs.iter().any(|&(d, _)| d == dm) {
                return Err(PhaseRepError::DuplicateM { doubled_m: dm });
            }
            coeffs.push((dm, e.amp));
        }
        coeffs.sort_by_key(|&(d, _)| d);
        let gap = state.m_gap().ok();
        let period = gap.map(|g| TAU / g);
        Ok(PhaseDistribution {
            coeffs,
            period,
            gap,
        })
    }

    /// Psi(phi): the Fourier sum over number-ket amplitudes.
    pub fn wavefunction(&self, phi: f64) -> Complex64 {
        let norm = 1.0 / TAU.sqrt();
        self.coeffs
            .iter()
            .map(|&(dm, amp)| amp * Complex64::from_polar(1.0, 0.5 * f64::from(dm) * phi))
            .sum::<Complex64>()
            * norm
    }

    /// P(phi) = |Psi(phi)|^2, in units of 1/radian.
    pub fn pdf(&self, phi: f64) -> f64 {
        self.wavefunction(phi).norm_sqr()
    }

    /// PDF period 2*pi/gap; `None` for an aperiodic (single-m) state.
    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn m_gap(&self) -> Option<f64> {
        self.gap
    }

    /// Total mass on [-pi, pi); equals 1 for a normalized integer-gap state.
    pub fn total_mass(&self) -> f64 {
        adaptive_simpson(|phi| self.pdf(phi), -PI, PI, QUAD_TOL)
    }

    /// Location and height of the principal peak, found by a dense scan
    /// over one period followed by golden-section refinement.
    pub fn refined_peak(&self) -> Result<(f64, f64), PhaseRepError> {
        let period = self.period.ok_or(PhaseRepError::Aperiodic)?;
        let lo = -0.5 * period;
        let step = period / SCAN_POINTS as f64;
        let mut best_k = 0usize;
        let mut best = f64::NEG_INFINITY;
        for k in 0..=SCAN_POINTS {
            let v = self.pdf(lo + k as f64 * step);
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let a = lo + best_k.saturating_sub(1) as f64 * step;
        let b = lo + (best_k + 1).min(SCAN_POINTS) as f64 * step;
        let r = golden_max(|phi| self.pdf(phi), a, b, PHI_TOL);
        Ok(if r.fx >= best {
            (r.x, r.fx)
        } else {
            (lo + best_k as f64 * step, best)
        })
    }

    /// Fringe visibility (max - min)/(max + min) between the principal
    /// peak and the inter-peak symmetry point half a period away.
    ///
    /// For every family here the point midway between adjacent principal
    /// peaks is a critical point of the PDF; its value is the fringe
    /// floor. Families whose density crosses zero inside the period
    /// (N00N, sub-states, vacuum-entangled states below n = 2) would
    /// report visibility 1 under a raw global minimum, which says nothing
    /// about the peak-to-trough contrast the metric is meant to capture.
    pub fn visibility(&self) -> Result<f64, PhaseRepError> {
        let period = self.period.ok_or(PhaseRepError::Aperiodic)?;
        let (peak_phi, peak) = self.refined_peak()?;
        let trough = self.pdf(peak_phi + 0.5 * period);
        Ok((peak - trough) / (peak + trough))
    }

    /// Half-width at half-maximum on the central bin: the first phi
    /// above the bin center where P falls to half the peak height
    /// (measured from the zero level), returned as the distance from the
    /// center. `None` when the density never drops to half maximum
    /// inside the bin.
    ///
    /// Distances run from the exact bin center; only the peak *value*
    /// comes from extremum refinement, so the f64 plateau around a
    /// smooth maximum cannot shift the root.
    pub fn hwhm(&self, layout: &BinLayout) -> Result<Option<f64>, PhaseRepError> {
        let (_, peak) = self.refined_peak()?;
        let half = 0.5 * peak;
        let hw = 0.5 * layout.bin_width;
        // First sign change of P - half on a dense grid, then bisection.
        let step = hw / SCAN_POINTS as f64;
        let mut prev = self.pdf(0.0) - half;
        for k in 1..=SCAN_POINTS {
            let t = k as f64 * step;
            let cur = self.pdf(t) - half;
            if cur <= 0.0 && prev > 0.0 {
                let root = bisect(|t| self.pdf(t) - half, (k - 1) as f64 * step, t, PHI_TOL)
                    .expect("bracketed sign change");
                return Ok(Some(root));
            }
            prev = cur;
        }
        Ok(None)
    }

    /// Variance of the PDF renormalized to one bin, about the bin center.
    ///
    /// The kept (central) bin is used for a split layout; integration runs
    /// in bin-centered coordinates so the branch cut at +-pi is never
    /// crossed.
    pub fn bin_variance(&self, layout: &BinLayout) -> Result<f64, PhaseRepError> {
        let hw = 0.5 * layout.bin_width;
        let mass = adaptive_simpson(|t| self.pdf(t), -hw, hw, QUAD_TOL);
        if mass <= 1e-9 {
            return Err(PhaseRepError::ZeroBinMass);
        }
        let second = adaptive_simpson(|t| t * t * self.pdf(t), -hw, hw, QUAD_TOL);
        Ok(second / mass)
    }

    /// Probability that an estimate lands in a dropped bin.
    ///
    /// All dropped bins are congruent by periodicity, so one bin is
    /// integrated in centered coordinates and scaled by the count.
    pub fn p_drop(&self, layout: &BinLayout) -> Result<f64, PhaseRepError> {
        let mask = layout
            .kept_mask
            .as_ref()
            .ok_or(PhaseRepError::NoDroppedBins)?;
        let dropped = mask.iter().filter(|&&k| !k).count();
        if dropped == 0 {
            return Err(PhaseRepError::NoDroppedBins);
        }
        let hw = 0.5 * layout.bin_width;
        // The dropped bin adjacent to the kept center bin sits one bin
        // width away from phi = 0.
        let center = layout.bin_width;
        let mass = adaptive_simpson(|t| self.pdf(center + t), -hw, hw, QUAD_TOL);
        Ok(dropped as f64 * mass)
    }
}

/// Phase-axis bin geometry of a periodic state.
///
/// `bin_count * bin_width` spans the full 2*pi interval and one center
/// always lies at phi = 0. For the sub-state family each period splits
/// into a kept and a dropped sub-bin; `kept_mask` marks which centers
/// survive that protocol (`None` when no splitting applies).
#[derive(Clone, Debug, PartialEq)]
pub struct BinLayout {
    pub bin_count: u32,
    pub bin_width: f64,
    pub centers: Vec<f64>,
    pub kept_mask: Option<Vec<bool>>,
}

/// Derives the bin layout from the structural m support of `state`.
///
/// The split protocol applies exactly when the support has the
/// five-point sub-harmonic pattern {0, +-h, +-2h}: the PDF period
/// 2*pi/h then covers one enhanced and one suppressed sub-bin, each of
/// width pi/h, with the kept sub-bin centered on the peak at phi = 0.
pub fn bin_layout(state: &QuantumState) -> Result<BinLayout, PhaseRepError> {
    let dms = state.support_doubled_m();
    if dms.len() < 2 {
        return Err(PhaseRepError::Aperiodic);
    }
    let mut gd = 0u32;
    for pair in dms.windows(2) {
        gd = crate::numerics::gcd(gd, (pair[1] - pair[0]) as u32);
    }
    if !gd.is_multiple_of(2) {
        return Err(PhaseRepError::MixedParity);
    }
    let gap = f64::from(gd) / 2.0; // integer-valued
    let split =
        dms.len() == 5 && dms == [-2 * gd as i32, -(gd as i32), 0, gd as i32, 2 * gd as i32];

    let (count, width) = if split {
        (gd, PI / gap)
    } else {
        (gd / 2, TAU / gap)
    };

    let mut cells: Vec<(f64, bool)> = (0..count)
        .map(|k| {
            let mut c = k as f64 * width;
            if c >= PI - 1e-12 {
                c -= TAU;
            }
            (c, k % 2 == 0)
        })
        .collect();
    cells.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite centers"));
    let centers: Vec<f64> = cells.iter().map(|&(c, _)| c).collect();
    let kept_mask = split.then(|| cells.iter().map(|&(_, k)| k).collect());

    Ok(BinLayout {
        bin_count: count,
        bin_width: width,
        centers,
        kept_mask,
    })
}

/// Psi(phi) for `state`; errors when the state has no unique j per m.
pub fn phase_wavefunction(state: &QuantumState, phi: f64) -> Result<Complex64, PhaseRepError> {
    Ok(PhaseDistribution::new(state)?.wavefunction(phi))
}

/// P(phi) for `state`.
pub fn phase_pdf(state: &QuantumState, phi: f64) -> Result<f64, PhaseRepError> {
    Ok(PhaseDistribution::new(state)?.pdf(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::HalfInt;
    use crate::states::{build_state, AmplitudeEntry, StateSpec};

    #[test]
    fn duplicate_m_rejected() {
        // Two entries at m = 0 under different j.
        let state = QuantumState::normalized(vec![
            AmplitudeEntry::from_fock(0, 0, 1.0),
            AmplitudeEntry::from_fock(1, 1, 1.0),
        ])
        .unwrap();
        assert_eq!(
            PhaseDistribution::new(&state).unwrap_err(),
            PhaseRepError::DuplicateM { doubled_m: 0 }
        );
    }

    #[test]
    fn aperiodic_has_no_layout() {
        let state = QuantumState::normalized(vec![AmplitudeEntry::from_fock(2, 0, 1.0)]).unwrap();
        assert_eq!(bin_layout(&state).unwrap_err(), PhaseRepError::Aperiodic);
        let dist = PhaseDistribution::new(&state).unwrap();
        assert_eq!(dist.period(), None);
        assert_eq!(dist.visibility().unwrap_err(), PhaseRepError::Aperiodic);
    }

    #[test]
    fn mixed_parity_rejected() {
        let state = QuantumState::normalized(vec![
            AmplitudeEntry::from_fock(0, 0, 1.0),
            AmplitudeEntry {
                j: HalfInt::from_doubled(1),
                m: HalfInt::from_doubled(1),
                amp: num_complex::Complex64::new(1.0, 0.0),
            },
        ])
        .unwrap();
        assert_eq!(bin_layout(&state).unwrap_err(), PhaseRepError::MixedParity);
    }

    #[test]
    fn layout_invariants() {
        for spec in [
            StateSpec::Noon { j_max: 4 },
            StateSpec::SubState { j_max: 8, r1: 1.0 },
            StateSpec::NoonVac { j_max: 8, n: 3.0 },
        ] {
            let layout = bin_layout(&build_state(&spec).unwrap()).unwrap();
            assert!((f64::from(layout.bin_count) * layout.bin_width - TAU).abs() < 1e-12);
            assert!(
                layout.centers.iter().any(|c| c.abs() < 1e-12),
                "one center at zero"
            );
            assert_eq!(layout.centers.len(), layout.bin_count as usize);
            for c in &layout.centers {
                assert!(*c >= -PI - 1e-12 && *c < PI);
            }
        }
    }

    #[test]
    fn substate_split_geometry() {
        let layout =
            bin_layout(&build_state(&StateSpec::SubState { j_max: 8, r1: 1.0 }).unwrap()).unwrap();
        assert_eq!(layout.bin_count, 8);
        assert!((layout.bin_width - TAU / 8.0).abs() < 1e-15);
        let mask = layout.kept_mask.as_ref().unwrap();
        assert_eq!(mask.iter().filter(|&&k| k).count(), 4);
        // Kept centers sit at multiples of the period pi/2.
        for (c, &kept) in layout.centers.iter().zip(mask.iter()) {
            let frac = (c / (PI / 2.0)).round() * (PI / 2.0) - c;
            assert_eq!(kept, frac.abs() < 1e-9, "center {c}");
        }
    }
}
