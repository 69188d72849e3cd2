//! Independent oracles shared by the integration tests. Everything here
//! is built from first principles (ladder coefficients, scaled Taylor
//! series) without touching the spectral code paths it cross-checks.

// Each test target compiles its own copy and uses a different subset.
#![allow(dead_code)]

use num_complex::Complex64;

/// Dense row-major complex matrix, just enough for the oracle.
#[derive(Clone)]
pub struct Mat {
    pub dim: usize,
    pub elems: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Mat {
            dim,
            elems: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m.elems[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.elems[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.elems[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat {
        Mat {
            dim: self.dim,
            elems: self.elems.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat {
            dim: self.dim,
            elems: self
                .elems
                .iter()
                .zip(&other.elems)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    pub fn max_norm(&self) -> f64 {
        self.elems.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
    }
}

/// J_x on the block of doubled angular momentum `dj`, built directly from
/// the ladder coefficients.
pub fn jx_oracle(dj: i32) -> Mat {
    let dim = (dj + 1) as usize;
    let j = f64::from(dj) / 2.0;
    let mut m = Mat::zeros(dim);
    for k in 0..dim - 1 {
        let mk = -j + k as f64;
        let c = 0.5 * (j * (j + 1.0) - mk * (mk + 1.0)).sqrt();
        m.set(k + 1, k, Complex64::new(c, 0.0));
        m.set(k, k + 1, Complex64::new(c, 0.0));
    }
    m
}

/// exp(-i phi J_x) by scaling and squaring with a 30-term Taylor series.
pub fn rotation_oracle(dj: i32, phi: f64) -> Mat {
    let a = jx_oracle(dj).scale(Complex64::new(0.0, -phi));
    // Scale until the max entry is small, run the series, square back.
    let mut squarings = 0u32;
    let mut norm = a.max_norm();
    while norm > 0.25 {
        norm *= 0.5;
        squarings += 1;
    }
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    let mut sum = Mat::identity(a.dim);
    let mut term = Mat::identity(a.dim);
    for k in 1..=30 {
        term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}
