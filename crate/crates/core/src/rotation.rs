//! Exact angular-momentum algebra for the interferometer isomorphism:
//! J_x per j block from the ladder operators, its exponential
//! D_x(phi) = exp(-i phi J_x) by spectral decomposition, and the
//! measurement statistics P_m of a state under an arm-phase rotation.
//!
//! The spectral route (diagonalize the real symmetric J_x once per j,
//! then exponentiate eigenvalues) avoids rotation-convention sign bugs;
//! a scaled Taylor-series exponential serves as an independent oracle in
//! the test suite only.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::HalfInt;
use crate::linalg::{sym_eigen, SymEigen};
use crate::states::QuantumState;

#[derive(Debug, Error, PartialEq)]
pub enum RotationError {
    #[error("j must be a non-negative half-integer, got doubled value {0}")]
    InvalidJ(i32),
}

/// A dense operator on one angular-momentum block.
///
/// Rows and columns are indexed by m ascending from -j to +j.
#[derive(Clone, Debug)]
pub struct AngularBlock {
    j: HalfInt,
    elems: Vec<Complex64>,
}

impl AngularBlock {
    fn zeros(j: HalfInt) -> Self {
        let dim = (j.doubled() + 1) as usize;
        AngularBlock {
            j,
            elems: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn dim(&self) -> usize {
        (self.j.doubled() + 1) as usize
    }

    /// m value of row or column index `idx`.
    pub fn m_at(&self, idx: usize) -> HalfInt {
        HalfInt::from_doubled(-self.j.doubled() + 2 * idx as i32)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.elems[row * self.dim() + col]
    }

    fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let d = self.dim();
        self.elems[row * d + col] = value;
    }

    /// Applies the block to a coefficient vector (length 2j+1).
    pub fn apply(&self, vec: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        assert_eq!(vec.len(), d);
        let mut out = vec![Complex64::ZERO; d];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.elems[r * d..(r + 1) * d];
            *o = row.iter().zip(vec).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Max-abs deviation of U * U^dagger from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.get(r, k) * self.get(c, k).conj();
                }
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// Spectral data of J_x for one j, reused across all rotation angles.
#[derive(Debug)]
struct JxEigen {
    eigen: SymEigen,
}

static JX_CACHE: OnceLock<RwLock<HashMap<i32, Arc<JxEigen>>>> = OnceLock::new();

fn check_j(j: HalfInt) -> Result<(), RotationError> {
    if j.doubled() < 0 {
        return Err(RotationError::InvalidJ(j.doubled()));
    }
    Ok(())
}

/// The x-component angular-momentum matrix (J+ + J-)/2 on block j.
///
/// Real symmetric with zero diagonal; the only nonzero elements are
/// <j, m+1 | J_x | j, m> = sqrt(j(j+1) - m(m+1)) / 2.
pub fn jx_matrix(j: HalfInt) -> Result<AngularBlock, RotationError> {
    check_j(j)?;
    let mut block = AngularBlock::zeros(j);
    let jv = j.value();
    for k in 0..block.dim().saturating_sub(1) {
        let m = block.m_at(k).value();
        let c = 0.5 * (jv * (jv + 1.0) - m * (m + 1.0)).sqrt();
        block.set(k + 1, k, Complex64::new(c, 0.0));
        block.set(k, k + 1, Complex64::new(c, 0.0));
    }
    Ok(block)
}

fn jx_eigen(j: HalfInt) -> Arc<JxEigen> {
    let cache = JX_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(found) = cache.read().expect("jx cache poisoned").get(&j.doubled()) {
        return Arc::clone(found);
    }
    let dim = (j.doubled() + 1) as usize;
    let block = jx_matrix(j).expect("validated j");
    let real: Vec<f64> = block.elems.iter().map(|z| z.re).collect();
    let eigen = sym_eigen(dim, &real);
    let entry = Arc::new(JxEigen { eigen });
    let mut guard = cache.write().expect("jx cache poisoned");
    Arc::clone(guard.entry(j.doubled()).or_insert(entry))
}

/// Rotation about x by `phi` on block j: exp(-i phi J_x) = V e^{-i phi L} V^T.
pub fn rotation_block(j: HalfInt, phi: f64) -> Result<AngularBlock, RotationError> {
    check_j(j)?;
    let data = jx_eigen(j);
    let e = &data.eigen;
    let d = e.dim;
    let phases: Vec<Complex64> = e
        .values
        .iter()
        .map(|&lambda| Complex64::from_polar(1.0, -phi * lambda))
        .collect();
    let mut block = AngularBlock::zeros(j);
    for r in 0..d {
        for c in 0..d {
            let mut acc = Complex64::ZERO;
            for (k, phase) in phases.iter().enumerate() {
                let vk = e.vector(k);
                acc += phase * (vk[r] * vk[c]);
            }
            block.set(r, c, acc);
        }
    }
    Ok(block)
}

/// Measurement statistics of the number-difference observable at a fixed
/// interferometer arm phase.
///
/// Keys are doubled m values so half-integer m serializes exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDistribution {
    pub phi: f64,
    pub probs: BTreeMap<i32, f64>,
}

impl MeasurementDistribution {
    pub fn prob(&self, m: HalfInt) -> f64 {
        self.probs.get(&m.doubled()).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }
}

/// P_m for `state` rotated by `phi`: each j block rotates independently
/// and blocks of distinct j add incoherently at the same m.
pub fn interferometer_probs(state: &QuantumState, phi: f64) -> MeasurementDistribution {
    StateRotator::new(state).probs_at(phi)
}

struct RotatorBlock {
    dj: i32,
    eigen: Arc<JxEigen>,
    /// V^T psi for the block's amplitude vector, phase-independent.
    projected: Vec<f64>,
}

/// Precomputed spectral data for rotating one fixed state by many phases.
///
/// Per block, exp(-i phi J_x) psi = V (e^{-i phi L} * (V^T psi)): the
/// projection V^T psi is phase independent, so each evaluation costs one
/// phase factor per eigenvalue plus one small matrix application. This is
/// the hot path of the template fit.
pub struct StateRotator {
    blocks: Vec<RotatorBlock>,
    /// Sorted doubled-m union of the block supports.
    support: Vec<i32>,
}

impl StateRotator {
    pub fn new(state: &QuantumState) -> Self {
        let mut amps: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
        for entry in state.entries() {
            let dj = entry.j.doubled();
            let dim = (dj + 1) as usize;
            let vec = amps.entry(dj).or_insert_with(|| vec![0.0; dim]);
            let idx = ((entry.m.doubled() + dj) / 2) as usize;
            // Constructed amplitudes are real; a complex state would need
            // a complex projection here.
            debug_assert_eq!(entry.amp.im, 0.0);
            vec[idx] = entry.amp.re;
        }

        let mut support: Vec<i32> = Vec::new();
        let blocks = amps
            .into_iter()
            .map(|(dj, psi)| {
                let eigen = jx_eigen(HalfInt::from_doubled(dj));
                let d = eigen.eigen.dim;
                let projected: Vec<f64> = (0..d)
                    .map(|k| {
                        eigen
                            .eigen
                            .vector(k)
                            .iter()
                            .zip(&psi)
                            .map(|(v, a)| v * a)
                            .sum()
                    })
                    .collect();
                for k in 0..d {
                    support.push(-dj + 2 * k as i32);
                }
                RotatorBlock {
                    dj,
                    eigen,
                    projected,
                }
            })
            .collect();
        support.sort_unstable();
        support.dedup();
        StateRotator { blocks, support }
    }

    /// Doubled-m values carrying probability, ascending.
    pub fn support(&self) -> &[i32] {
        &self.support
    }

    /// Writes P_m at `phi` into `out`, aligned with [`Self::support`].
    pub fn probs_into(&self, phi: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.support.len());
        out.fill(0.0);
        let mut weighted: Vec<Complex64> = Vec::new();
        for block in &self.blocks {
            let e = &block.eigen.eigen;
            let d = e.dim;
            weighted.clear();
            weighted.extend(
                (0..d).map(|k| Complex64::from_polar(1.0, -phi * e.values[k]) * block.projected[k]),
            );
            for r in 0..d {
                let mut acc = Complex64::ZERO;
                for (k, w) in weighted.iter().enumerate() {
                    acc += w * e.vector(k)[r];
                }
                let dm = -block.dj + 2 * r as i32;
                let slot = self
                    .support
                    .binary_search(&dm)
                    .expect("support covers block");
                out[slot] += acc.norm_sqr();
            }
        }
    }

    pub fn probs_at(&self, phi: f64) -> MeasurementDistribution {
        let mut flat = vec![0.0; self.support.len()];
        self.probs_into(phi, &mut flat);
        let probs = self.support.iter().copied().zip(flat).collect();
        MeasurementDistribution { phi, probs }
    }
}
