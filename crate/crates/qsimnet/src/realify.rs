//! Decomplexification of the Schrödinger equation.
//!
//! A complex n-dimensional evolution is mapped onto real dynamics twice
//! over: first as a 2n-dimensional first-order block system (always
//! valid), then decoupled into an n-dimensional second-order system
//! whose coefficient pair feeds the network synthesis.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::quantum::{Hamiltonian, StateVector};

/// Relative commutator threshold deciding auto-mode routing.
pub const COMMUTATOR_REL_TOL: f64 = 1e-10;
/// Condition-number bound beyond which the real part counts as singular.
pub const REAL_PART_COND_LIMIT: f64 = 1e12;

/// Real and imaginary parts of a complex vector, stored side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct RealifiedState {
    pub real: DVector<f64>,
    pub imag: DVector<f64>,
}

impl RealifiedState {
    pub fn from_complex(v: &DVector<Complex64>) -> Self {
        Self {
            real: v.map(|z| z.re),
            imag: v.map(|z| z.im),
        }
    }

    pub fn dim(&self) -> usize {
        self.real.len()
    }

    /// The juxtaposed 2n real vector `(real, imag)`.
    pub fn stacked(&self) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(2 * n, |i, _| {
            if i < n {
                self.real[i]
            } else {
                self.imag[i - n]
            }
        })
    }
}

/// Splits a state into real and imaginary parts. Linear over real scalars.
pub fn decomplexify(psi: &StateVector) -> RealifiedState {
    RealifiedState::from_complex(psi.amplitudes())
}

/// Exact inverse of [`decomplexify`]: `real + i * imag`.
pub fn recomplexify(r: &RealifiedState) -> DVector<Complex64> {
    DVector::from_fn(r.dim(), |i, _| Complex64::new(r.real[i], r.imag[i]))
}

/// The 2n x 2n block system `d/dt (re, im) = M (re, im)` with
/// `M = [[H2, H1], [-H1, H2]]`, `H1 = Re(H)`, `H2 = Im(H)`.
///
/// Valid for every Hermitian Hamiltonian; no invertibility assumption.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockFirstOrder {
    matrix: DMatrix<f64>,
}

impl BlockFirstOrder {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn build_first_order(h: &Hamiltonian) -> BlockFirstOrder {
    let n = h.dim();
    let h1 = h.real_part();
    let h2 = h.imag_part();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&h2);
    m.view_mut((0, n), (n, n)).copy_from(&h1);
    m.view_mut((n, 0), (n, n)).copy_from(&(-&h1));
    m.view_mut((n, n), (n, n)).copy_from(&h2);
    BlockFirstOrder { matrix: m }
}

/// Which coefficient formula produced a [`SecondOrderSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffRoute {
    /// `A = -H2 - H1 H2 H1^{-1}`, `B = H1^2 + H1 H2 H1^{-1} H2`.
    General,
    /// `A = -2 H2`, `B = H1^2 + H2^2` (valid dynamics when `[H1,H2] = 0`).
    Commuting,
}

/// Route selection for [`second_order_coeffs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMode {
    /// Commuting when the relative commutator test passes, else general.
    Auto,
    General,
    Commuting,
}

/// Coefficients of the decoupled second-order dynamics
/// `q'' + A q' + B q = 0` satisfied by both the real and the imaginary
/// part of the evolving state.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderSystem {
    /// Damping-like coefficient (the paper-side `A`).
    pub damping: DMatrix<f64>,
    /// Stiffness-like coefficient (the paper-side `B`).
    pub stiffness: DMatrix<f64>,
    pub route: CoeffRoute,
    /// `||[H1, H2]||` (Frobenius) of the originating Hamiltonian, or
    /// `None` for systems assembled directly from matrices.
    pub commutator_norm: Option<f64>,
}

impl SecondOrderSystem {
    /// Wraps a raw coefficient pair (no Hamiltonian provenance).
    pub fn from_parts(damping: DMatrix<f64>, stiffness: DMatrix<f64>) -> Result<Self> {
        let n = damping.nrows();
        if damping.ncols() != n || stiffness.nrows() != n || stiffness.ncols() != n || n == 0 {
            return Err(Error::BadShape);
        }
        if damping.iter().chain(stiffness.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "second-order coefficients",
            });
        }
        Ok(Self {
            damping,
            stiffness,
            route: CoeffRoute::General,
            commutator_norm: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.damping.nrows()
    }
}

fn commutator_norm(h1: &DMatrix<f64>, h2: &DMatrix<f64>) -> f64 {
    (h1 * h2 - h2 * h1).norm()
}

fn commutator_test_passes(h1: &DMatrix<f64>, h2: &DMatrix<f64>, comm: f64) -> bool {
    let n1 = h1.norm();
    let n2 = h2.norm();
    if n1 == 0.0 || n2 == 0.0 {
        return true;
    }
    comm <= COMMUTATOR_REL_TOL * n1 * n2
}

/// Evaluates the commuting-form coefficients `A = -2 H2`,
/// `B = H1^2 + H2^2` unconditionally.
///
/// This is the printed two-level algebra; it reproduces the Schrödinger
/// dynamics only when `H1` and `H2` actually commute. The commutator norm
/// is recorded on the result so callers can tell the two situations apart.
pub fn commuting_coeffs(h: &Hamiltonian) -> SecondOrderSystem {
    let h1 = h.real_part();
    let h2 = h.imag_part();
    let comm = commutator_norm(&h1, &h2);
    SecondOrderSystem {
        damping: h2.map(|x| -2.0 * x),
        stiffness: &h1 * &h1 + &h2 * &h2,
        route: CoeffRoute::Commuting,
        commutator_norm: Some(comm),
    }
}

/// Derives the second-order coefficient pair from a Hamiltonian.
///
/// The general route needs `H1` invertible (condition number below
/// [`REAL_PART_COND_LIMIT`]); the commuting route is only accepted when
/// the relative commutator test passes. When both routes are valid they
/// agree to rounding.
pub fn second_order_coeffs(h: &Hamiltonian, mode: CoeffMode) -> Result<SecondOrderSystem> {
    let h1 = h.real_part();
    let h2 = h.imag_part();
    let comm = commutator_norm(&h1, &h2);
    let commuting_ok = commutator_test_passes(&h1, &h2, comm);

    let route = match mode {
        CoeffMode::Commuting => {
            if !commuting_ok {
                return Err(Error::NoncommutingParts {
                    commutator_norm: comm,
                });
            }
            CoeffRoute::Commuting
        }
        CoeffMode::Auto => {
            if commuting_ok {
                CoeffRoute::Commuting
            } else {
                CoeffRoute::General
            }
        }
        CoeffMode::General => CoeffRoute::General,
    };

    match route {
        CoeffRoute::Commuting => Ok(SecondOrderSystem {
            commutator_norm: Some(comm),
            ..commuting_coeffs(h)
        }),
        CoeffRoute::General => {
            let cond = linalg::condition_number(&h1);
            if !cond.is_finite() || cond > REAL_PART_COND_LIMIT {
                return Err(Error::SingularRealPart { condition: cond });
            }
            let h1_inv = h1.clone().try_inverse().ok_or(Error::SingularRealPart {
                condition: f64::INFINITY,
            })?;
            let conj = &h1 * &h2 * &h1_inv;
            Ok(SecondOrderSystem {
                damping: -&h2 - &conj,
                stiffness: &h1 * &h1 + &conj * &h2,
                route: CoeffRoute::General,
                commutator_norm: Some(comm),
            })
        }
    }
}

/// Which part of the complex state drives a real simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatePart {
    RealPart,
    ImagPart,
}

/// Initial data for the second-order system: the selected part of
/// `psi(0)` and of `d/dt psi(0) = -i H psi(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub position: DVector<f64>,
    pub velocity: DVector<f64>,
    pub part: StatePart,
}

pub fn initial_conditions(h: &Hamiltonian, psi0: &StateVector, part: StatePart) -> Result<InitialData> {
    let n = h.dim();
    if psi0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: psi0.dim(),
        });
    }
    let psidot0 = (h.matrix() * psi0.amplitudes()).map(|z| z * Complex64::new(0.0, -1.0));
    let (position, velocity) = match part {
        StatePart::RealPart => (
            psi0.amplitudes().map(|z| z.re),
            psidot0.map(|z| z.re),
        ),
        StatePart::ImagPart => (
            psi0.amplitudes().map(|z| z.im),
            psidot0.map(|z| z.im),
        ),
    };
    Ok(InitialData {
        position,
        velocity,
        part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{propagate, PauliCoefficients};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> Hamiltonian {
        let g = DMatrix::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let herm = (&g + g.adjoint()) * c(0.5, 0.0);
        Hamiltonian::new(herm).unwrap()
    }

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
        let v = DVector::from_fn(n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        StateVector::normalized(v).unwrap()
    }

    #[test]
    fn decomplexify_roundtrip() {
        let psi = StateVector::normalized(DVector::from_vec(vec![c(1.0, 2.0), c(3.0, 0.0)])).unwrap();
        let r = decomplexify(&psi);
        let scale = (1.0f64 + 4.0 + 9.0).sqrt();
        assert!((r.real[0] - 1.0 / scale).abs() < 1e-15);
        assert!((r.imag[0] - 2.0 / scale).abs() < 1e-15);
        assert!((r.real[1] - 3.0 / scale).abs() < 1e-15);
        assert_eq!(r.imag[1], 0.0);
        let back = recomplexify(&r);
        assert!((back - psi.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn decomplexify_is_real_linear() {
        let u = DVector::from_vec(vec![c(0.3, -0.2), c(0.1, 0.9)]);
        let v = DVector::from_vec(vec![c(-0.5, 0.4), c(0.7, 0.2)]);
        let (a, b) = (0.37, -1.42);
        let combo = &u * c(a, 0.0) + &v * c(b, 0.0);
        let ru = RealifiedState::from_complex(&u);
        let rv = RealifiedState::from_complex(&v);
        let rc = RealifiedState::from_complex(&combo);
        assert!((&rc.real - (&ru.real * a + &rv.real * b)).norm() < 1e-14);
        assert!((&rc.imag - (&ru.imag * a + &rv.imag * b)).norm() < 1e-14);
    }

    #[test]
    fn first_order_block_layout() {
        // H = sigma_x: H2 = 0, M = [[0, sigma_x], [-sigma_x, 0]].
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 1.0, 0.0, 0.0).unwrap());
        let m = build_first_order(&h);
        let mm = m.matrix();
        assert_eq!(mm[(0, 3)], 1.0);
        assert_eq!(mm[(1, 2)], 1.0);
        assert_eq!(mm[(2, 1)], -1.0);
        assert_eq!(mm[(3, 0)], -1.0);
        assert_eq!(mm.view((0, 0), (2, 2)).norm(), 0.0);
        assert_eq!(mm.view((2, 2), (2, 2)).norm(), 0.0);

        // H = sigma_y: H1 = 0, M = diag blocks H2 with H2 = [[0,-1],[1,0]].
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, 1.0, 0.0).unwrap());
        let m = build_first_order(&h);
        let mm = m.matrix();
        assert_eq!(mm[(0, 1)], -1.0);
        assert_eq!(mm[(1, 0)], 1.0);
        assert_eq!(mm[(2, 3)], -1.0);
        assert_eq!(mm[(3, 2)], 1.0);
        assert_eq!(mm.view((0, 2), (2, 2)).norm(), 0.0);

        // zero Hamiltonian gives the zero block matrix
        let m = build_first_order(&Hamiltonian::zero(2).unwrap());
        assert_eq!(m.matrix().norm(), 0.0);
    }

    #[test]
    fn first_order_matches_exact_evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(3, &mut rng);
        let psi0 = random_state(3, &mut rng);
        let m = build_first_order(&h);
        let x0 = decomplexify(&psi0).stacked();
        let t = 1.3;
        let traj = propagate(&h, &psi0, &[0.0, t]).unwrap();
        let xt = crate::linalg::expm(&(m.matrix() * t)) * x0;
        let end = traj.states().last().unwrap();
        for k in 0..3 {
            assert!((xt[k] - end.amplitudes()[k].re).abs() < 1e-9);
            assert!((xt[3 + k] - end.amplitudes()[k].im).abs() < 1e-9);
        }
    }

    #[test]
    fn structure_of_stored_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(4, &mut rng);
        let h1 = h.real_part();
        let h2 = h.imag_part();
        assert_eq!((&h1 - h1.transpose()).norm(), 0.0);
        assert_eq!((&h2 + h2.transpose()).norm(), 0.0);
    }

    #[test]
    fn commuting_examples() {
        // Pure sigma_y term: A = [[0, 2 xi2], [-2 xi2, 0]], B = -xi2^2 I.
        let xi2 = 0.8;
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, xi2, 0.0).unwrap());
        let sys = second_order_coeffs(&h, CoeffMode::Auto).unwrap();
        assert_eq!(sys.route, CoeffRoute::Commuting);
        assert!((sys.damping[(0, 1)] - 2.0 * xi2).abs() < 1e-15);
        assert!((sys.damping[(1, 0)] + 2.0 * xi2).abs() < 1e-15);
        assert!((sys.stiffness[(0, 0)] + xi2 * xi2).abs() < 1e-15);
        assert!((sys.stiffness[(1, 1)] + xi2 * xi2).abs() < 1e-15);
        assert!(sys.stiffness[(0, 1)].abs() < 1e-15);

        // Diagonal H: A = 0, B = diag(lambda^2).
        let h = Hamiltonian::new(DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(1.5, 0.0),
            c(-2.0, 0.0),
        ])))
        .unwrap();
        let sys = second_order_coeffs(&h, CoeffMode::Auto).unwrap();
        assert_eq!(sys.route, CoeffRoute::Commuting);
        assert_eq!(sys.damping.norm(), 0.0);
        assert!((sys.stiffness[(0, 0)] - 2.25).abs() < 1e-15);
        assert!((sys.stiffness[(1, 1)] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn general_route_worked_example() {
        // H = [[1, i], [-i, 2]] has noncommuting real and imaginary parts;
        // the general formulas give A = [[0, -3/2], [3, 0]],
        // B = [[1/2, 0], [0, 2]].
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        ))
        .unwrap();
        let sys = second_order_coeffs(&h, CoeffMode::Auto).unwrap();
        assert_eq!(sys.route, CoeffRoute::General);
        assert!(sys.commutator_norm.unwrap() > 0.1);
        let a_expect = DMatrix::from_row_slice(2, 2, &[0.0, -1.5, 3.0, 0.0]);
        let b_expect = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 2.0]);
        assert!((&sys.damping - a_expect).norm() < 1e-12, "A = {}", sys.damping);
        assert!((&sys.stiffness - b_expect).norm() < 1e-12, "B = {}", sys.stiffness);
    }

    #[test]
    fn strict_commuting_mode_rejects_noncommuting_parts() {
        let h = Hamiltonian::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        ))
        .unwrap();
        match second_order_coeffs(&h, CoeffMode::Commuting) {
            Err(Error::NoncommutingParts { commutator_norm }) => {
                assert!(commutator_norm > 0.0);
            }
            other => panic!("expected NoncommutingParts, got {other:?}"),
        }
    }

    #[test]
    fn general_mode_rejects_singular_real_part() {
        // H = sigma_y has H1 = 0.
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, 1.0, 0.0).unwrap());
        assert!(matches!(
            second_order_coeffs(&h, CoeffMode::General),
            Err(Error::SingularRealPart { .. })
        ));
        // The always-valid fallback is the first-order block system.
        let m = build_first_order(&h);
        assert_eq!(m.dim(), 4);
    }

    #[test]
    fn routes_agree_when_parts_commute() {
        // Real symmetric H (H2 = 0) commutes trivially; compare routes.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let g = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
            let sym = (&g + g.transpose()) * 0.5
                + DMatrix::from_diagonal_element(3, 3, 2.0);
            let h = Hamiltonian::new(sym.map(|x| c(x, 0.0))).unwrap();
            let a = second_order_coeffs(&h, CoeffMode::General).unwrap();
            let b = second_order_coeffs(&h, CoeffMode::Commuting).unwrap();
            assert!((&a.damping - &b.damping).norm() < 1e-10);
            assert!((&a.stiffness - &b.stiffness).norm() < 1e-10);
        }
    }

    #[test]
    fn both_parts_satisfy_the_second_order_equation() {
        // Finite-difference residual oracle: for random Hermitian H with
        // invertible real part, both Re(psi) and Im(psi) of the exact
        // evolution satisfy q'' + A q' + B q = 0.
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..5 {
            let h = random_hermitian(3, &mut rng);
            if linalg::condition_number(&h.real_part()) > 1e6 {
                continue;
            }
            let sys = second_order_coeffs(&h, CoeffMode::General).unwrap();
            let psi0 = random_state(3, &mut rng);
            let dt = 1e-4;
            let times: Vec<f64> = (0..200).map(|k| k as f64 * dt).collect();
            let traj = propagate(&h, &psi0, &times).unwrap();
            let parts: Vec<RealifiedState> = traj
                .states()
                .iter()
                .map(|s| RealifiedState::from_complex(s.amplitudes()))
                .collect();
            for select in [StatePart::RealPart, StatePart::ImagPart] {
                let grab = |i: usize| -> DVector<f64> {
                    match select {
                        StatePart::RealPart => parts[i].real.clone(),
                        StatePart::ImagPart => parts[i].imag.clone(),
                    }
                };
                let mut worst = 0.0f64;
                for i in 1..times.len() - 1 {
                    let q = grab(i);
                    let qdot = (grab(i + 1) - grab(i - 1)) / (2.0 * dt);
                    let qddot = (grab(i + 1) - &q * 2.0 + grab(i - 1)) / (dt * dt);
                    let residual = qddot + &sys.damping * qdot + &sys.stiffness * q;
                    worst = worst.max(residual.norm());
                }
                assert!(worst <= 1e-6, "residual {worst} for {select:?}");
            }
        }
    }

    #[test]
    fn initial_conditions_examples() {
        // H = sigma_y, psi0 = (1,0): -i H psi0 = (0, 1), purely real.
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 0.0, 1.0, 0.0).unwrap());
        let psi0 = StateVector::basis(2, 0).unwrap();
        let init = initial_conditions(&h, &psi0, StatePart::RealPart).unwrap();
        assert_eq!(init.position.as_slice(), &[1.0, 0.0]);
        assert!((init.velocity[0]).abs() < 1e-15);
        assert!((init.velocity[1] - 1.0).abs() < 1e-15);

        // H = sigma_x, psi0 = (1,0): -i H psi0 = (0, -i), real part zero.
        let h = Hamiltonian::from_pauli(&PauliCoefficients::new(0.0, 1.0, 0.0, 0.0).unwrap());
        let init = initial_conditions(&h, &psi0, StatePart::RealPart).unwrap();
        assert_eq!(init.velocity.as_slice(), &[0.0, 0.0]);
        let init = initial_conditions(&h, &psi0, StatePart::ImagPart).unwrap();
        assert_eq!(init.velocity.as_slice(), &[0.0, -1.0]);

        // zero Hamiltonian: velocity vanishes for any state.
        let h = Hamiltonian::zero(2).unwrap();
        let init = initial_conditions(&h, &psi0, StatePart::RealPart).unwrap();
        assert_eq!(init.velocity.norm(), 0.0);
    }

    #[test]
    fn initial_conditions_dimension_check() {
        let h = Hamiltonian::zero(3).unwrap();
        let psi0 = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            initial_conditions(&h, &psi0, StatePart::RealPart),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
