//! Finite-dimensional quantum systems: Hermitian Hamiltonians, state
//! vectors, exact Schrödinger evolution and Born probabilities.
//!
//! Evolution is computed by spectral decomposition of the (constant)
//! Hamiltonian, so trajectories are exact up to rounding and serve as the
//! ground truth the circuit side is verified against.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Relative Hermiticity tolerance (against the largest entry magnitude).
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on the squared norm of a state vector at construction.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Condition-number bound above which a transform is treated as singular.
const INVERTIBILITY_LIMIT: f64 = 1e12;

/// Real coefficients of a two-level Hamiltonian in the identity + Pauli
/// basis: `identity * I + x * sigma_x + y * sigma_y + z * sigma_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoefficients {
    pub identity: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliCoefficients {
    pub fn new(identity: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let c = Self { identity, x, y, z };
        if c.as_array().iter().all(|v| v.is_finite()) {
            Ok(c)
        } else {
            Err(Error::NonFinite {
                what: "Pauli coefficients",
            })
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.identity, self.x, self.y, self.z]
    }
}

/// A validated Hermitian matrix in natural units.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: DMatrix<Complex64>,
}

/// Eigenvalues (ascending) and matching eigenvector columns of a
/// Hamiltonian. Each eigenvector is phase-fixed so its first component of
/// significant magnitude is positive real, which makes the decomposition
/// reproducible across runs.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl Hamiltonian {
    /// Validates shape, finiteness and Hermiticity (relative tolerance
    /// [`HERMITICITY_TOL`] against the largest entry magnitude).
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::BadShape);
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "Hamiltonian entries",
            });
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut max_dev = 0.0f64;
        for k in 0..n {
            for l in k..n {
                let dev = (matrix[(k, l)] - matrix[(l, k)].conj()).norm();
                max_dev = max_dev.max(dev);
            }
        }
        let tol = HERMITICITY_TOL * scale;
        if max_dev > tol {
            return Err(Error::NotHermitian {
                max_deviation: max_dev,
                tolerance: tol,
            });
        }
        Ok(Self { matrix })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(DMatrix::zeros(n, n))
    }

    /// Two-level Hamiltonian from its Pauli coefficients:
    /// `[[xi0+xi3, xi1-i*xi2], [xi1+i*xi2, xi0-xi3]]`.
    pub fn from_pauli(xi: &PauliCoefficients) -> Self {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(xi.identity + xi.z, 0.0),
                Complex64::new(xi.x, -xi.y),
                Complex64::new(xi.x, xi.y),
                Complex64::new(xi.identity - xi.z, 0.0),
            ],
        );
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Real part, a symmetric matrix for any Hermitian input.
    pub fn real_part(&self) -> DMatrix<f64> {
        self.matrix.map(|z| z.re)
    }

    /// Imaginary part, an antisymmetric matrix for any Hermitian input.
    pub fn imag_part(&self) -> DMatrix<f64> {
        self.matrix.map(|z| z.im)
    }

    /// Eigendecomposition with ascending eigenvalues and a deterministic
    /// phase convention on the eigenvectors.
    pub fn spectrum(&self) -> Spectrum {
        let eig = self.matrix.clone().symmetric_eigen();
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[a]
                .partial_cmp(&eig.eigenvalues[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut values = DVector::zeros(n);
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            values[dst] = eig.eigenvalues[src];
            let col = eig.eigenvectors.column(src);
            // Rotate the global phase so the first significant component
            // is positive real.
            let pivot = col.iter().find(|z| z.norm() > 1e-9);
            let phase = match pivot {
                Some(z) => z.conj() / z.norm(),
                None => Complex64::new(1.0, 0.0),
            };
            for r in 0..n {
                vectors[(r, dst)] = col[r] * phase;
            }
        }
        Spectrum {
            eigenvalues: values,
            eigenvectors: vectors,
        }
    }

    /// Adds `c * I` with `c = max(0, margin - lambda_min)` so every
    /// eigenvalue of the result is at least `margin`. Born probabilities of
    /// the evolution are unchanged (the shift is a global phase). Returns
    /// the shifted Hamiltonian and the applied shift.
    pub fn shift_spectrum(&self, margin: f64) -> Result<(Self, f64)> {
        if !(margin > 0.0) || !margin.is_finite() {
            return Err(Error::InvalidConfig {
                reason: format!("spectrum shift margin must be positive, got {margin}"),
            });
        }
        let lambda_min = self
            .spectrum()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let c = (margin - lambda_min).max(0.0);
        let shifted = &self.matrix + DMatrix::from_diagonal_element(self.dim(), self.dim(), Complex64::new(c, 0.0));
        Ok((Self { matrix: shifted }, c))
    }

    /// Conjugation `omega * H * omega^{-1}`. For unitary `omega` the result
    /// is Hermitian with the same spectrum; in general it is returned as a
    /// plain complex matrix.
    pub fn similarity_transform(&self, omega: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
        let n = self.dim();
        if omega.nrows() != n || omega.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: omega.nrows(),
            });
        }
        if linalg::condition_number_complex(omega) > INVERTIBILITY_LIMIT {
            return Err(Error::SingularTransform);
        }
        let inv = omega.clone().try_inverse().ok_or(Error::SingularTransform)?;
        Ok(omega * &self.matrix * inv)
    }
}

/// A normalized complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Rejects non-normalized input (squared norm off unity by more than
    /// [`NORMALIZATION_TOL`]); use [`StateVector::normalized`] to rescale
    /// explicitly instead.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::BadShape);
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { what: "amplitudes" });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Scales the input to unit norm; rejects the zero vector.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::BadShape);
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { what: "amplitudes" });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amplitudes: amplitudes / Complex64::new(norm, 0.0),
        })
    }

    /// Basis state `|k>` of dimension `n`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: k,
            });
        }
        let mut v = DVector::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Born probabilities `p_k = |psi_k|^2`.
    pub fn born_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Born probabilities of a state, `p_k = |psi_k|^2`.
pub fn born_probabilities(psi: &StateVector) -> Vec<f64> {
    psi.born_probabilities()
}

/// Exact evolution sampled on a time grid.
#[derive(Debug, Clone)]
pub struct QuantumTrajectory {
    times: Vec<f64>,
    states: Vec<StateVector>,
}

impl QuantumTrajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Time series of the `k`-th amplitude.
    pub fn component(&self, k: usize) -> Vec<Complex64> {
        self.states.iter().map(|s| s.amplitudes()[k]).collect()
    }
}

/// Solves `i d/dt psi = H psi` exactly via the spectral decomposition:
/// `psi(t) = U exp(-i Lambda t) U^dagger psi(0)`.
///
/// The grid must be finite, strictly increasing and start at 0.
pub fn propagate(h: &Hamiltonian, psi0: &StateVector, times: &[f64]) -> Result<QuantumTrajectory> {
    let n = h.dim();
    if psi0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: psi0.dim(),
        });
    }
    validate_time_grid(times)?;

    let spec = h.spectrum();
    let u = &spec.eigenvectors;
    let coeffs = u.adjoint() * psi0.amplitudes();

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let phased = DVector::from_iterator(
            n,
            (0..n).map(|j| {
                let phase = Complex64::new(0.0, -spec.eigenvalues[j] * t).exp();
                coeffs[j] * phase
            }),
        );
        let psi = u * phased;
        states.push(StateVector::new(psi)?);
    }
    Ok(QuantumTrajectory {
        times: times.to_vec(),
        states,
    })
}

pub(crate) fn validate_time_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::BadTimeGrid);
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::BadTimeGrid);
    }
    if times[0] != 0.0 {
        return Err(Error::BadTimeGrid);
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::BadTimeGrid);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    pub(crate) fn sigma_x() -> Hamiltonian {
        Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 1.0, 0.0, 0.0).unwrap())
    }

    pub(crate) fn sigma_y() -> Hamiltonian {
        Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, 1.0, 0.0).unwrap())
    }

    pub(crate) fn sigma_z() -> Hamiltonian {
        Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, 0.0, 1.0).unwrap())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_matrix_construction() {
        // sigma_z
        let h = sigma_z();
        assert_eq!(h.matrix()[(0, 0)], c(1.0, 0.0));
        assert_eq!(h.matrix()[(1, 1)], c(-1.0, 0.0));
        assert_eq!(h.matrix()[(0, 1)], c(0.0, 0.0));
        // identity
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(1.0, 0.0, 0.0, 0.0).unwrap());
        assert_eq!(h.matrix()[(0, 0)], c(1.0, 0.0));
        assert_eq!(h.matrix()[(1, 1)], c(1.0, 0.0));
        // sigma_y
        let h = sigma_y();
        assert_eq!(h.matrix()[(0, 1)], c(0.0, -1.0));
        assert_eq!(h.matrix()[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    fn hermiticity_is_enforced() {
        let bad = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            Hamiltonian::new(bad),
            Err(Error::NotHermitian { .. })
        ));
        let ok = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        assert!(Hamiltonian::new(ok).is_ok());
    }

    #[test]
    fn state_vector_rejects_non_normalized() {
        let v = DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            StateVector::new(v.clone()),
            Err(Error::NotNormalized { .. })
        ));
        let s = StateVector::normalized(v).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn zero_hamiltonian_is_stationary() {
        let h = Hamiltonian::zero(3).unwrap();
        let psi0 = StateVector::normalized(DVector::from_vec(vec![
            c(0.5, 0.1),
            c(-0.3, 0.7),
            c(0.2, 0.0),
        ]))
        .unwrap();
        let times: Vec<f64> = (0..50).map(|k| k as f64 * 0.1).collect();
        let traj = propagate(&h, &psi0, &times).unwrap();
        for s in traj.states() {
            for k in 0..3 {
                assert!((s.amplitudes()[k] - psi0.amplitudes()[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn sigma_x_rotation_closed_form() {
        // exp(-i sigma_x t) = cos t * I - i sin t * sigma_x, so at t = pi/2
        // the state (1,0) maps to (0,-i).
        let h = sigma_x();
        let psi0 = StateVector::basis(2, 0).unwrap();
        let traj = propagate(&h, &psi0, &[0.0, PI / 2.0]).unwrap();
        let end = traj.states().last().unwrap();
        assert!((end.amplitudes()[0] - c(0.0, 0.0)).norm() < 1e-12);
        assert!((end.amplitudes()[1] - c(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_hamiltonian_pure_phases() {
        let h = Hamiltonian::new(DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(1.0, 0.0),
            c(2.5, 0.0),
            c(-0.5, 0.0),
        ])))
        .unwrap();
        let psi0 = StateVector::normalized(DVector::from_vec(vec![
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(1.0, 1.0),
        ]))
        .unwrap();
        let t = 0.37;
        let traj = propagate(&h, &psi0, &[0.0, t]).unwrap();
        let end = traj.states().last().unwrap();
        for (k, &lambda) in [1.0, 2.5, -0.5].iter().enumerate() {
            let expect = psi0.amplitudes()[k] * c(0.0, -lambda * t).exp();
            assert!((end.amplitudes()[k] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn born_probabilities_basic() {
        let s = StateVector::basis(2, 0).unwrap();
        assert_eq!(s.born_probabilities(), vec![1.0, 0.0]);

        let s = StateVector::new(DVector::from_vec(vec![
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, FRAC_1_SQRT_2),
        ]))
        .unwrap();
        let p = s.born_probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

        // propagate(sigma_x, (1,0)) at t = pi/4 gives (1/2, 1/2).
        let traj = propagate(&sigma_x(), &StateVector::basis(2, 0).unwrap(), &[0.0, PI / 4.0]).unwrap();
        let p = traj.states().last().unwrap().born_probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        let sum: f64 = p.iter().sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn similarity_transform_cases() {
        let h = sigma_z();
        // identity leaves H unchanged
        let id = DMatrix::identity(2, 2);
        let r = h.similarity_transform(&id).unwrap();
        assert!((&r - h.matrix()).norm() < 1e-14);
        // sigma_x * sigma_z * sigma_x = -sigma_z
        let sx = sigma_x();
        let r = h.similarity_transform(sx.matrix()).unwrap();
        assert!((&r + h.matrix()).norm() < 1e-12);
        // diagonal phases commute with diagonal H
        let omega = DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(0.0, 0.3).exp(),
            c(0.0, -1.1).exp(),
        ]));
        let r = h.similarity_transform(&omega).unwrap();
        assert!((&r - h.matrix()).norm() < 1e-12);
        // singular omega is rejected
        let sing = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            h.similarity_transform(&sing),
            Err(Error::SingularTransform)
        ));
    }

    #[test]
    fn unitary_similarity_preserves_spectrum() {
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        ))
        .unwrap();
        // Unitary: exp of (i * Hermitian) via spectral route is overkill here,
        // a rotation works.
        let th = 0.7f64;
        let u = DMatrix::from_row_slice(
            2,
            2,
            &[
                c(th.cos(), 0.0),
                c(th.sin(), 0.0),
                c(-th.sin(), 0.0),
                c(th.cos(), 0.0),
            ],
        );
        let transformed = h.similarity_transform(&u).unwrap();
        let ht = Hamiltonian::new(transformed).unwrap();
        let a = h.spectrum().eigenvalues;
        let b = ht.spectrum().eigenvalues;
        for k in 0..2 {
            assert!((a[k] - b[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn shift_spectrum_cases() {
        // sigma_x has eigenvalues -1, 1: margin 1 needs c = 2.
        let (shifted, c_applied) = sigma_x().shift_spectrum(1.0).unwrap();
        assert!((c_applied - 2.0).abs() < 1e-12);
        let ev = shifted.spectrum().eigenvalues;
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);

        // already one-sided: no shift
        let h = Hamiltonian::new(DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(5.0, 0.0),
            c(7.0, 0.0),
        ])))
        .unwrap();
        let (_, c_applied) = h.shift_spectrum(1.0).unwrap();
        assert_eq!(c_applied, 0.0);

        // zero matrix: c = margin
        let (_, c_applied) = Hamiltonian::zero(2).unwrap().shift_spectrum(1.0).unwrap();
        assert!((c_applied - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shift_preserves_born_probabilities() {
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.2, 0.0), c(0.4, 0.3), c(0.4, -0.3), c(-0.7, 0.0)],
        ))
        .unwrap();
        let (hs, c_applied) = h.shift_spectrum(0.5).unwrap();
        let psi0 = StateVector::normalized(DVector::from_vec(vec![c(0.6, 0.2), c(-0.3, 0.7)])).unwrap();
        let times: Vec<f64> = (0..100).map(|k| k as f64 * 0.05).collect();
        let a = propagate(&h, &psi0, &times).unwrap();
        let b = propagate(&hs, &psi0, &times).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let phase = c(0.0, -c_applied * t).exp();
            for k in 0..2 {
                let expect = a.states()[i].amplitudes()[k] * phase;
                let got = b.states()[i].amplitudes()[k];
                assert!((got - expect).norm() < 1e-10, "phase-shift property at t={t}");
                let pa = a.states()[i].born_probabilities()[k];
                let pb = b.states()[i].born_probabilities()[k];
                assert!((pa - pb).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn propagation_preserves_norm() {
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.4, 0.0),
                c(0.2, 0.5),
                c(-0.1, 0.3),
                c(0.2, -0.5),
                c(-0.8, 0.0),
                c(0.6, -0.2),
                c(-0.1, -0.3),
                c(0.6, 0.2),
                c(1.1, 0.0),
            ],
        ))
        .unwrap();
        let psi0 = StateVector::normalized(DVector::from_vec(vec![
            c(1.0, -0.5),
            c(0.3, 0.8),
            c(-0.2, 0.1),
        ]))
        .unwrap();
        let times: Vec<f64> = (0..200).map(|k| k as f64 * 0.05).collect();
        let traj = propagate(&h, &psi0, &times).unwrap();
        for s in traj.states() {
            let norm_sq: f64 = s.born_probabilities().iter().sum();
            assert!((norm_sq - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn spectral_propagation_matches_matrix_exponential() {
        // Cross-check against the scaled-and-squared exponential oracle.
        use crate::linalg::expm_complex;
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.9, 0.0),
                c(0.1, -0.7),
                c(0.4, 0.2),
                c(0.1, 0.7),
                c(-0.3, 0.0),
                c(-0.6, 0.1),
                c(0.4, -0.2),
                c(-0.6, -0.1),
                c(0.5, 0.0),
            ],
        ))
        .unwrap();
        let psi0 = StateVector::normalized(DVector::from_vec(vec![
            c(0.2, 0.4),
            c(-0.7, 0.1),
            c(0.5, -0.3),
        ]))
        .unwrap();
        let t = 3.7;
        let traj = propagate(&h, &psi0, &[0.0, t]).unwrap();
        let gen = h.matrix().map(|z| z * c(0.0, -t));
        let u = expm_complex(&gen);
        let expect = &u * psi0.amplitudes();
        let got = traj.states().last().unwrap().amplitudes();
        assert!((got - &expect).norm() < 1e-9);
    }

    #[test]
    fn bad_time_grids_are_rejected() {
        let h = Hamiltonian::zero(2).unwrap();
        let psi0 = StateVector::basis(2, 0).unwrap();
        assert!(propagate(&h, &psi0, &[]).is_err());
        assert!(propagate(&h, &psi0, &[0.5, 1.0]).is_err());
        assert!(propagate(&h, &psi0, &[0.0, 1.0, 1.0]).is_err());
        assert!(propagate(&h, &psi0, &[0.0, f64::NAN]).is_err());
    }

    #[test]
    fn spectrum_ordering_and_phase_convention() {
        let h = sigma_x();
        let s = h.spectrum();
        assert!(s.eigenvalues[0] < s.eigenvalues[1]);
        for j in 0..2 {
            let col = s.eigenvectors.column(j);
            let first = col.iter().find(|z| z.norm() > 1e-9).unwrap();
            assert!(first.im.abs() < 1e-12 && first.re > 0.0);
        }
    }
}
