//! Dense symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! The angular-momentum blocks handled here are small (dimension 2j+1,
//! tens at most), so Jacobi is plenty fast and converges to near machine
//! precision without pulling in a LAPACK backend.

/// Eigendecomposition of a real symmetric matrix.
///
/// `values` are sorted ascending; `vectors` is column-major with column k
/// holding the eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub dim: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }
}

/// Diagonalizes a real symmetric matrix given in row-major order.
///
/// Panics if `a.len() != dim * dim`. Symmetry is assumed, only the upper
/// triangle is read for the rotation targets.
pub fn sym_eigen(dim: usize, a: &[f64]) -> SymEigen {
    assert_eq!(a.len(), dim * dim, "matrix storage must be dim*dim");
    let mut m = a.to_vec();
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }

    let scale: f64 = a
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off = off.max(m[p * dim + q].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = m[p * dim + q];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = m[p * dim + p];
                let aqq = m[q * dim + q];
                let theta = (aqq - app) / (2.0 * apq);
                // Smaller-angle root keeps the rotation numerically stable.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..dim {
                    let mkp = m[k * dim + p];
                    let mkq = m[k * dim + q];
                    m[k * dim + p] = c * mkp - s * mkq;
                    m[k * dim + q] = s * mkp + c * mkq;
                }
                for k in 0..dim {
                    let mpk = m[p * dim + k];
                    let mqk = m[q * dim + k];
                    m[p * dim + k] = c * mpk - s * mqk;
                    m[q * dim + k] = s * mpk + c * mqk;
                }
                for k in 0..dim {
                    let vkp = v[p * dim + k];
                    let vkq = v[q * dim + k];
                    v[p * dim + k] = c * vkp - s * vkq;
                    v[q * dim + k] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| {
        m[i * dim + i]
            .partial_cmp(&m[j * dim + j])
            .expect("eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&i| m[i * dim + i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (col, &i) in order.iter().enumerate() {
        vectors[col * dim..(col + 1) * dim].copy_from_slice(&v[i * dim..(i + 1) * dim]);
    }

    SymEigen {
        dim,
        values,
        vectors,
    }
}
