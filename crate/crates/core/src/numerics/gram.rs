use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Pivots below this fraction of the largest diagonal entry are treated as zero.
const PIVOT_RELATIVE_FLOOR: f64 = 1e-12;
/// Allowed |a_ij - conj(a_ji)| relative to the largest diagonal magnitude.
const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Inverse of a small Hermitian positive-definite matrix via Cholesky.
///
/// Intended for the `K x K` Gram matrices of zero-forcing precoders
/// (`K` at most a few dozen). Returns [`Error::SingularMatrix`] when a
/// pivot drops below `1e-12` times the largest diagonal magnitude.
pub fn gram_inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "gram_inverse needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let max_diag = (0..n).map(|i| a[(i, i)].norm()).fold(0.0, f64::max);
    let defect = a.hermitian_defect().unwrap_or(f64::INFINITY);
    if defect.is_nan() || defect > HERMITIAN_TOLERANCE * max_diag.max(1.0) {
        return Err(Error::Domain(format!(
            "gram_inverse needs a Hermitian matrix (defect {defect:.3e})"
        )));
    }

    let threshold = PIVOT_RELATIVE_FLOOR * max_diag;
    let l = cholesky(a, threshold)?;

    // L^{-1} by forward substitution, column by column.
    let mut l_inv = ComplexMatrix::zeros(n, n)?;
    for col in 0..n {
        for i in col..n {
            let mut acc = if i == col {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for k in col..i {
                acc -= l[(i, k)] * l_inv[(k, col)];
            }
            l_inv[(i, col)] = acc / l[(i, i)].re;
        }
    }
    // A^{-1} = L^{-H} L^{-1}
    l_inv.adjoint().matmul(&l_inv)
}

/// Lower-triangular `L` with `A = L L^H`.
fn cholesky(a: &ComplexMatrix, threshold: f64) -> Result<ComplexMatrix> {
    let n = a.rows();
    let mut l = ComplexMatrix::zeros(n, n)?;
    for j in 0..n {
        let pivot = a[(j, j)].re - (0..j).map(|k| l[(j, k)].norm_sqr()).sum::<f64>();
        if pivot.is_nan() || pivot <= threshold {
            return Err(Error::SingularMatrix { pivot, threshold });
        }
        let diag = pivot.sqrt();
        l[(j, j)] = Complex64::new(diag, 0.0);
        for i in j + 1..n {
            let mut acc = a[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / diag;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{complex_gaussian_matrix, SimRng};

    fn residual(a: &ComplexMatrix, inv: &ComplexMatrix) -> f64 {
        let eye = ComplexMatrix::identity(a.rows()).unwrap();
        a.matmul(inv).unwrap().sub(&eye).unwrap().frobenius_norm()
    }

    #[test]
    fn identity_inverts_to_identity() {
        let eye = ComplexMatrix::identity(4).unwrap();
        assert_eq!(gram_inverse(&eye).unwrap(), eye);
    }

    #[test]
    fn diagonal_inverse() {
        let a = ComplexMatrix::from_real_diagonal(&[2.0, 4.0]).unwrap();
        let inv = gram_inverse(&a).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[0.5, 0.25]).unwrap();
        assert!(inv.sub(&expected).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn random_hermitian_pd_residual() {
        let mut rng = SimRng::new(11);
        let x = complex_gaussian_matrix(&mut rng, 4, 4).unwrap();
        let mut a = x.matmul(&x.adjoint()).unwrap();
        for i in 0..4 {
            a[(i, i)] += 0.5;
        }
        let inv = gram_inverse(&a).unwrap();
        assert!(residual(&a, &inv) <= 1e-9);
    }

    #[test]
    fn rank_deficient_gram_is_singular() {
        let mut rng = SimRng::new(3);
        let row = complex_gaussian_matrix(&mut rng, 1, 8).unwrap();
        // two identical users
        let h = ComplexMatrix::from_fn(2, 8, |_, j| row[(0, j)]).unwrap();
        let g = h.matmul(&h.adjoint()).unwrap();
        assert!(matches!(gram_inverse(&g), Err(Error::SingularMatrix { .. })));
        let zero = ComplexMatrix::zeros(3, 3).unwrap();
        assert!(matches!(gram_inverse(&zero), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let mut a = ComplexMatrix::identity(2).unwrap();
        a[(0, 1)] = Complex64::new(0.3, 0.0);
        assert!(matches!(gram_inverse(&a), Err(Error::Domain(_))));
        let r = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(gram_inverse(&r), Err(Error::Dimension(_))));
    }

    /// Random Hermitian PD matrices with prescribed spectrum U diag(λ) U^H,
    /// condition number up to 1e6.
    #[test]
    fn residual_bound_over_conditioned_matrices() {
        let mut rng = SimRng::new(2024);
        for trial in 0..1000 {
            let k = 1 + trial % 8;
            let q = unitary(&mut rng, k);
            let log_cond = 6.0 * (trial as f64 / 999.0);
            let eig: Vec<f64> = (0..k)
                .map(|i| {
                    let t = if k == 1 { 0.0 } else { i as f64 / (k - 1) as f64 };
                    10f64.powf(-log_cond * t)
                })
                .collect();
            let d = ComplexMatrix::from_real_diagonal(&eig).unwrap();
            let mut a = q.matmul(&d).unwrap().matmul(&q.adjoint()).unwrap();
            // exact Hermitian symmetry
            for i in 0..k {
                a[(i, i)].im = 0.0;
                for j in i + 1..k {
                    a[(j, i)] = a[(i, j)].conj();
                }
            }
            let inv = gram_inverse(&a).unwrap();
            let r = residual(&a, &inv);
            assert!(r <= 1e-9 * k as f64, "trial {trial}: residual {r:e}");
        }
    }

    /// Orthonormalize a Gaussian matrix with modified Gram-Schmidt.
    fn unitary(rng: &mut SimRng, k: usize) -> ComplexMatrix {
        let mut q = complex_gaussian_matrix(rng, k, k).unwrap();
        for j in 0..k {
            for p in 0..j {
                let proj: Complex64 = (0..k).map(|i| q[(i, p)].conj() * q[(i, j)]).sum();
                for i in 0..k {
                    let v = q[(i, p)];
                    q[(i, j)] -= proj * v;
                }
            }
            let n = q.column_norm(j);
            q.scale_column(j, 1.0 / n);
        }
        q
    }
}
