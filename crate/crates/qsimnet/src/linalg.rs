//! Shared dense linear-algebra helpers: condition numbers, matrix
//! exponentials and a general complex eigendecomposition with an honest
//! failure mode for defective matrices.

use nalgebra::linalg::Schur;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Iteration cap for Schur and SVD; nalgebra's unbounded variants can
/// spin forever on degenerate inputs (the zero matrix among them).
const MAX_ITER: usize = 10_000;

fn cond_from_singular_values(sv: &DVector<f64>) -> f64 {
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// 2-norm condition number via singular values. Returns `f64::INFINITY`
/// when the smallest singular value vanishes or the SVD fails to
/// converge (conservatively treated as singular).
pub(crate) fn condition_number(m: &DMatrix<f64>) -> f64 {
    match m.clone().try_svd(false, false, f64::EPSILON, MAX_ITER) {
        Some(svd) => cond_from_singular_values(&svd.singular_values),
        None => f64::INFINITY,
    }
}

pub(crate) fn condition_number_complex(m: &DMatrix<Complex64>) -> f64 {
    match m.clone().try_svd(false, false, f64::EPSILON, MAX_ITER) {
        Some(svd) => cond_from_singular_values(&svd.singular_values),
        None => f64::INFINITY,
    }
}

pub(crate) fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Scaled-and-squared (Padé) matrix exponential.
pub(crate) fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().exp()
}

/// Cross-check oracle for the spectral propagation path.
#[cfg(test)]
pub(crate) fn expm_complex(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.clone().exp()
}

/// Eigendecomposition result of a general real matrix, with complex
/// eigenvalues and eigenvectors (columns of `vectors`).
pub(crate) struct GeneralEigen {
    pub values: DVector<Complex64>,
    pub vectors: DMatrix<Complex64>,
}

/// Diagonalize a general real square matrix.
///
/// Eigenvalues come from the real Schur form; eigenvectors are recovered
/// per eigenvalue cluster as the near-nullspace of `m - lambda I` (complex
/// SVD), which also handles multiplicity. Returns `None` when the matrix
/// is defective or the eigenvector basis is too ill-conditioned
/// (condition number above `cond_limit`), so callers can fall back to a
/// matrix-exponential path.
pub(crate) fn general_eigen(m: &DMatrix<f64>, cond_limit: f64) -> Option<GeneralEigen> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return None;
    }
    if m.iter().all(|&x| x == 0.0) {
        return Some(GeneralEigen {
            values: DVector::zeros(n),
            vectors: DMatrix::identity(n, n),
        });
    }
    let scale = m.norm().max(1.0);
    let raw = Schur::try_new(m.clone(), f64::EPSILON, MAX_ITER)?.complex_eigenvalues();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (raw[a].re, raw[a].im)
            .partial_cmp(&(raw[b].re, raw[b].im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    // Group eigenvalues that coincide up to the Schur accuracy scale.
    let cluster_tol = 1e-8 * scale;
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some((center, count)) if (raw[i] - *center).norm() <= cluster_tol => {
                *count += 1;
            }
            _ => clusters.push((raw[i], 1)),
        }
    }

    let mc = to_complex(m);
    let mut values = DVector::zeros(n);
    let mut vectors = DMatrix::zeros(n, n);
    let mut col = 0;
    for &(center, count) in &clusters {
        let shifted = &mc - DMatrix::from_diagonal_element(n, n, center);
        let svd = shifted.try_svd(false, true, f64::EPSILON, MAX_ITER)?;
        let v_t = svd.v_t?;
        // Rows of V^T with the smallest singular values span the
        // (approximate) nullspace; singular values are sorted descending.
        for j in 0..count {
            let row = n - 1 - j;
            for r in 0..n {
                vectors[(r, col)] = v_t[(row, r)].conj();
            }
            values[col] = center;
            col += 1;
        }
    }
    debug_assert_eq!(col, n);

    // Validate: residual of the candidate decomposition and basis conditioning.
    let lambda = DMatrix::from_diagonal(&values);
    let residual = (&mc * &vectors - &vectors * lambda).norm();
    if residual > 1e-7 * scale {
        return None;
    }
    if condition_number_complex(&vectors) > cond_limit {
        return None;
    }
    Some(GeneralEigen { values, vectors })
}
