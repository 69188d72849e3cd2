//! Construction of the three interferometer state families in the
//! angular-momentum basis.
//!
//! Two harmonic oscillators map onto angular momentum with
//! m = (n_u - n_d)/2 and j = (n_u + n_d)/2, so every Fock pair
//! |n_u>|n_d> lands on a single (j, m) basis ket. The families built
//! here superpose a 2·j_max-photon two-mode path state, its half-order
//! sub-harmonic, and the vacuum, with weights (r2, r2, r1, r1, 1)
//! before normalization:
//!
//! * `Noon`     - the two extreme kets alone, equal weight;
//! * `SubState` - r2 fixed at 1/sqrt(2) so vacuum and the larger path
//!   state are equally likely, r1 free;
//! * `NoonVac`  - path state entangled with the vacuum only, with
//!   r2 = 1/sqrt(2n);
//! * `General`  - both r1 and r2 free, for parameter sweeps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::HalfInt;
use crate::numerics::gcd;

/// Normalization slack accepted on a constructed state.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("j_max must be positive, got {0}")]
    NonPositiveJmax(u32),
    #[error("sub-state j_max must be even so the sub-harmonic lands on integer m, got {0}")]
    OddJmaxParity(u32),
    #[error("n must be positive, got {0}")]
    NonPositiveN(f64),
    #[error("r1 must be non-negative, got {0}")]
    NegativeR1(f64),
    #[error("r2 must be positive, got {0}")]
    NonPositiveR2(f64),
    #[error("|m| = {m} exceeds j = {j}")]
    MOutOfRange { j: HalfInt, m: HalfInt },
    #[error("2j = {dj} and 2m = {dm} must have the same parity")]
    ParityMismatch { dj: i32, dm: i32 },
    #[error("duplicate entry at (j = {j}, m = {m})")]
    DuplicateEntry { j: HalfInt, m: HalfInt },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("single-m state has no phase periodicity")]
    Aperiodic,
}

/// One amplitude in the (j, m) basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeEntry {
    pub j: HalfInt,
    pub m: HalfInt,
    pub amp: Complex64,
}

impl AmplitudeEntry {
    /// Builds an entry from the Fock occupation pair it originates from.
    pub fn from_fock(n_u: u32, n_d: u32, amp: f64) -> Self {
        AmplitudeEntry {
            j: HalfInt::from_doubled((n_u + n_d) as i32),
            m: HalfInt::from_doubled(n_u as i32 - n_d as i32),
            amp: Complex64::new(amp, 0.0),
        }
    }

    fn check(&self) -> Result<(), StateError> {
        if self.m.abs() > self.j {
            return Err(StateError::MOutOfRange {
                j: self.j,
                m: self.m,
            });
        }
        if (self.j.doubled() - self.m.doubled()) % 2 != 0 {
            return Err(StateError::ParityMismatch {
                dj: self.j.doubled(),
                dm: self.m.doubled(),
            });
        }
        Ok(())
    }
}

/// A normalized pure state as a sparse list of (j, m) amplitudes.
///
/// Entries are stored sorted by (j, m); the sum of |amp|^2 is 1 to within
/// [`NORM_TOL`] after construction. Values are immutable afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    entries: Vec<AmplitudeEntry>,
}

impl QuantumState {
    /// Validates the entry invariants and rescales to unit norm.
    pub fn normalized(mut entries: Vec<AmplitudeEntry>) -> Result<Self, StateError> {
        for e in &entries {
            e.check()?;
        }
        entries.sort_by_key(|e| (e.j, e.m));
        for pair in entries.windows(2) {
            if pair[0].j == pair[1].j && pair[0].m == pair[1].m {
                return Err(StateError::DuplicateEntry {
                    j: pair[0].j,
                    m: pair[0].m,
                });
            }
        }
        let norm_sq: f64 = entries.iter().map(|e| e.amp.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(StateError::ZeroNorm);
        }
        let scale = norm_sq.sqrt().recip();
        for e in &mut entries {
            e.amp *= scale;
        }
        Ok(QuantumState { entries })
    }

    pub fn entries(&self) -> &[AmplitudeEntry] {
        &self.entries
    }

    /// Mean angular momentum, the cost driver: Sum |amp|^2 * j.
    pub fn expected_j(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.amp.norm_sqr() * e.j.value())
            .sum()
    }

    /// Expected photon number `N = 2<j>`.
    pub fn photon_cost(&self) -> f64 {
        2.0 * self.expected_j()
    }

    /// Fundamental m-spacing: the gcd of the m differences across the
    /// support, which sets the phase-PDF period 2*pi/gap.
    ///
    /// A state whose support is a single m value is aperiodic and is
    /// reported as such rather than as a zero gap.
    pub fn m_gap(&self) -> Result<f64, StateError> {
        let mut dms: Vec<i32> = self.entries.iter().map(|e| e.m.doubled()).collect();
        dms.sort_unstable();
        dms.dedup();
        if dms.len() < 2 {
            return Err(StateError::Aperiodic);
        }
        let mut g = 0u32;
        for pair in dms.windows(2) {
            g = gcd(g, (pair[1] - pair[0]) as u32);
        }
        Ok(f64::from(g) / 2.0)
    }

    /// Doubled m values of the support, sorted ascending, without duplicates.
    pub(crate) fn support_doubled_m(&self) -> Vec<i32> {
        let mut dms: Vec<i32> = self.entries.iter().map(|e| e.m.doubled()).collect();
        dms.sort_unstable();
        dms.dedup();
        dms
    }
}

/// Parameter set selecting one member of the state families.
///
/// Serializes as `{"kind": "...", "j_max": ..., ...}` with unused fields
/// omitted.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Noon {
        j_max: u32,
    },
    #[serde(rename = "substate")]
    SubState {
        j_max: u32,
        r1: f64,
    },
    #[serde(rename = "noonvac")]
    NoonVac {
        j_max: u32,
        n: f64,
    },
    General {
        j_max: u32,
        r1: f64,
        r2: f64,
    },
}

impl StateSpec {
    pub fn j_max(&self) -> u32 {
        match *self {
            StateSpec::Noon { j_max }
            | StateSpec::SubState { j_max, .. }
            | StateSpec::NoonVac { j_max, .. }
            | StateSpec::General { j_max, .. } => j_max,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            StateSpec::Noon { .. } => "noon",
            StateSpec::SubState { .. } => "substate",
            StateSpec::NoonVac { .. } => "noonvac",
            StateSpec::General { .. } => "general",
        }
    }

    pub fn validate(&self) -> Result<(), StateError> {
        let j_max = self.j_max();
        if j_max == 0 {
            return Err(StateError::NonPositiveJmax(j_max));
        }
        match *self {
            StateSpec::Noon { .. } => Ok(()),
            StateSpec::SubState { j_max, r1 } | StateSpec::General { j_max, r1, .. } => {
                // The sub-harmonic ket sits at m = j_max/2; odd j_max would
                // mix integer and half-integer m and break the 2*pi-periodic
                // phase representation.
                if j_max % 2 != 0 {
                    return Err(StateError::OddJmaxParity(j_max));
                }
                if r1 < 0.0 || !r1.is_finite() {
                    return Err(StateError::NegativeR1(r1));
                }
                if let StateSpec::General { r2, .. } = *self {
                    if !(r2 > 0.0 && r2.is_finite()) {
                        return Err(StateError::NonPositiveR2(r2));
                    }
                }
                Ok(())
            }
            StateSpec::NoonVac { n, .. } => {
                if n > 0.0 && n.is_finite() {
                    Ok(())
                } else {
                    Err(StateError::NonPositiveN(n))
                }
            }
        }
    }

    pub fn build(&self) -> Result<QuantumState, StateError> {
        build_state(self)
    }
}

/// Builds and normalizes the state selected by `spec`.
///
/// The raw superposition weights are (r2, r2, r1, r1, 1) on the kets
/// |2·j_max, 0>, |0, 2·j_max>, |j_max, 0>, |0, j_max>, |0, 0>. Families
/// that omit a ket structurally (Noon, NoonVac) carry no entry for it;
/// SubState and General keep all five entries even at r1 = 0 because the
/// alternate-bin protocol is defined by the family's structure.
pub fn build_state(spec: &StateSpec) -> Result<QuantumState, StateError> {
    spec.validate()?;
    let j_max = spec.j_max();
    let entries = match *spec {
        StateSpec::Noon { .. } => vec![
            AmplitudeEntry::from_fock(2 * j_max, 0, 1.0),
            AmplitudeEntry::from_fock(0, 2 * j_max, 1.0),
        ],
        StateSpec::SubState { r1, .. } => eq_family(j_max, r1, std::f64::consts::FRAC_1_SQRT_2),
        StateSpec::General { r1, r2, .. } => eq_family(j_max, r1, r2),
        StateSpec::NoonVac { n, .. } => {
            let r2 = 1.0 / (2.0 * n).sqrt();
            vec![
                AmplitudeEntry::from_fock(2 * j_max, 0, r2),
                AmplitudeEntry::from_fock(0, 2 * j_max, r2),
                AmplitudeEntry::from_fock(0, 0, 1.0),
            ]
        }
    };
    QuantumState::normalized(entries)
}

fn eq_family(j_max: u32, r1: f64, r2: f64) -> Vec<AmplitudeEntry> {
    vec![
        AmplitudeEntry::from_fock(2 * j_max, 0, r2),
        AmplitudeEntry::from_fock(0, 2 * j_max, r2),
        AmplitudeEntry::from_fock(j_max, 0, r1),
        AmplitudeEntry::from_fock(0, j_max, r1),
        AmplitudeEntry::from_fock(0, 0, 1.0),
    ]
}
