//! Time-domain solution of the classical dynamics: the decoupled
//! second-order system `q'' + A q' + B q = 0` and the first-order block
//! system `x' = M x`, sampled on a uniform grid.
//!
//! The default method diagonalizes the companion matrix, which is exact
//! for these small linear time-invariant systems; fixed-step RK4 and an
//! adaptive Dormand-Prince integrator are kept as the circuit-flavoured
//! cross-checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::realify::InitialData;

/// Conditioning bound for accepting the companion eigenbasis; beyond it
/// the solver falls back to per-sample matrix exponentials.
const EIGENBASIS_COND_LIMIT: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSpectral,
    Rk4,
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub t_end: f64,
    pub dt: f64,
    pub method: Method,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            t_end: 10.0,
            dt: 1e-3,
            method: Method::ExactSpectral,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.t_end.is_finite()
            && self.dt.is_finite()
            && self.t_end > 0.0
            && self.dt > 0.0
            && self.dt < self.t_end;
        if !ok {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "need 0 < dt < t_end, got dt = {}, t_end = {}",
                    self.dt, self.t_end
                ),
            });
        }
        if self.method == Method::Adaptive {
            for (name, v) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
                if !(v > 0.0 && v < 1.0) {
                    return Err(Error::InvalidConfig {
                        reason: format!("{name} must lie in (0, 1), got {v}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Sample instants `k * dt`; timestamps are index-multiplied so the
    /// grid carries no accumulated rounding drift.
    pub fn time_grid(&self) -> Vec<f64> {
        let steps = (self.t_end / self.dt + 1e-9).floor() as usize;
        (0..=steps).map(|k| k as f64 * self.dt).collect()
    }
}

/// Uniformly sampled real time series, one channel per generalized
/// coordinate (or per block-state component).
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    times: Vec<f64>,
    channels: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl TraceSet {
    pub fn new(times: Vec<f64>, channels: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if channels.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: channels.len(),
                found: labels.len(),
            });
        }
        for ch in &channels {
            if ch.len() != times.len() {
                return Err(Error::DimensionMismatch {
                    expected: times.len(),
                    found: ch.len(),
                });
            }
            if ch.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite { what: "trace samples" });
            }
        }
        Ok(Self {
            times,
            channels,
            labels,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn channel(&self, k: usize) -> &[f64] {
        &self.channels[k]
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn check_system(damping: &DMatrix<f64>, stiffness: &DMatrix<f64>, init: &InitialData) -> Result<usize> {
    let n = damping.nrows();
    if damping.ncols() != n || stiffness.nrows() != n || stiffness.ncols() != n {
        return Err(Error::BadShape);
    }
    if damping.iter().chain(stiffness.iter()).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            what: "coefficient matrices",
        });
    }
    if init.position.len() != n || init.velocity.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: init.position.len(),
        });
    }
    Ok(n)
}

/// Companion form of `q'' + A q' + B q = 0`: the block matrix
/// `[[0, I], [-B, -A]]` acting on `x = (q, q')`.
pub fn companion_matrix(damping: &DMatrix<f64>, stiffness: &DMatrix<f64>) -> DMatrix<f64> {
    let n = damping.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, n), (n, n)).copy_from(&DMatrix::identity(n, n));
    m.view_mut((n, 0), (n, n)).copy_from(&(-stiffness));
    m.view_mut((n, n), (n, n)).copy_from(&(-damping));
    m
}

/// Solves `x' = M x` at the requested instants through the eigenbasis of
/// `M` when it is diagonalizable and well conditioned, otherwise through
/// a scaled-and-squared matrix exponential per sample. Returns one row of
/// samples per state component.
fn linear_flow(m: &DMatrix<f64>, x0: &DVector<f64>, times: &[f64]) -> Vec<Vec<f64>> {
    let dim = m.nrows();
    let mut rows = vec![Vec::with_capacity(times.len()); dim];
    if let Some(eig) = linalg::general_eigen(m, EIGENBASIS_COND_LIMIT) {
        let x0c = x0.map(|x| Complex64::new(x, 0.0));
        let lu = eig.vectors.clone().lu();
        if let Some(weights) = lu.solve(&x0c) {
            for &t in times {
                let phased = DVector::from_iterator(
                    dim,
                    (0..dim).map(|j| weights[j] * (eig.values[j] * t).exp()),
                );
                let x = &eig.vectors * phased;
                for (r, row) in rows.iter_mut().enumerate() {
                    row.push(x[r].re);
                }
            }
            return rows;
        }
    }
    // Defective or ill-conditioned eigenbasis: exponential per sample.
    for &t in times {
        let x = linalg::expm(&(m * t)) * x0;
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(x[r]);
        }
    }
    rows
}

/// Machine-precision reference solution of the second-order system on an
/// arbitrary (validated) time grid. The exact-spectral simulation method
/// is this same code path on the uniform grid.
pub fn exact_linear_solution(
    damping: &DMatrix<f64>,
    stiffness: &DMatrix<f64>,
    init: &InitialData,
    times: &[f64],
) -> Result<TraceSet> {
    let n = check_system(damping, stiffness, init)?;
    crate::quantum::validate_time_grid(times)?;
    let m = companion_matrix(damping, stiffness);
    let x0 = stack(&init.position, &init.velocity);
    let rows = linear_flow(&m, &x0, times);
    TraceSet::new(
        times.to_vec(),
        rows.into_iter().take(n).collect(),
        voltage_labels(n),
    )
}

fn stack(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = a.len();
    DVector::from_fn(n + b.len(), |i, _| if i < n { a[i] } else { b[i - n] })
}

fn voltage_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("V{k}")).collect()
}

fn state_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|k| format!("x{k}")).collect()
}

/// Simulates `q'' + A q' + B q = 0` and returns the position samples,
/// one channel per coordinate.
pub fn simulate_second_order(
    damping: &DMatrix<f64>,
    stiffness: &DMatrix<f64>,
    init: &InitialData,
    cfg: &SimulationConfig,
) -> Result<TraceSet> {
    let n = check_system(damping, stiffness, init)?;
    cfg.validate()?;
    let times = cfg.time_grid();
    match cfg.method {
        Method::ExactSpectral => exact_linear_solution(damping, stiffness, init, &times),
        Method::Rk4 | Method::Adaptive => {
            let m = companion_matrix(damping, stiffness);
            let x0 = stack(&init.position, &init.velocity);
            let rows = integrate(&m, &x0, &times, cfg)?;
            TraceSet::new(
                times,
                rows.into_iter().take(n).collect(),
                voltage_labels(n),
            )
        }
    }
}

/// Simulates the first-order system `x' = M x`, returning every state
/// component. With the default method this is `exp(M t) x0` sampled on
/// the grid, the always-valid oracle with no invertibility requirement.
pub fn simulate_first_order(
    m: &DMatrix<f64>,
    x0: &DVector<f64>,
    cfg: &SimulationConfig,
) -> Result<TraceSet> {
    let dim = m.nrows();
    if m.ncols() != dim || x0.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x0.len(),
        });
    }
    if m.iter().chain(x0.iter()).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            what: "first-order system",
        });
    }
    cfg.validate()?;
    let times = cfg.time_grid();
    let rows = match cfg.method {
        Method::ExactSpectral => linear_flow(m, x0, &times),
        Method::Rk4 | Method::Adaptive => integrate(m, x0, &times, cfg)?,
    };
    TraceSet::new(times, rows, state_labels(dim))
}

fn integrate(
    m: &DMatrix<f64>,
    x0: &DVector<f64>,
    times: &[f64],
    cfg: &SimulationConfig,
) -> Result<Vec<Vec<f64>>> {
    let dim = m.nrows();
    let mut rows = vec![Vec::with_capacity(times.len()); dim];
    let mut x = x0.clone();
    let push = |rows: &mut Vec<Vec<f64>>, x: &DVector<f64>| {
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(x[r]);
        }
    };
    push(&mut rows, &x);
    match cfg.method {
        Method::Rk4 => {
            for w in times.windows(2) {
                let h = w[1] - w[0];
                x = rk4_step(m, &x, h);
                push(&mut rows, &x);
            }
        }
        Method::Adaptive => {
            let mut h = cfg.dt;
            for w in times.windows(2) {
                x = dopri5_span(m, x, w[0], w[1], &mut h, cfg)?;
                push(&mut rows, &x);
            }
        }
        Method::ExactSpectral => unreachable!("exact method does not use the integrator"),
    }
    if rows.iter().any(|row| row.iter().any(|v| !v.is_finite())) {
        return Err(Error::NonFinite {
            what: "integrator output",
        });
    }
    Ok(rows)
}

fn rk4_step(m: &DMatrix<f64>, x: &DVector<f64>, h: f64) -> DVector<f64> {
    let k1 = m * x;
    let k2 = m * (x + &k1 * (h / 2.0));
    let k3 = m * (x + &k2 * (h / 2.0));
    let k4 = m * (x + &k3 * h);
    x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

// Dormand-Prince 5(4) tableau.
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Advances the solution from `t0` to `t1` with embedded error control,
/// landing exactly on `t1`. `h` persists across spans as the step hint.
fn dopri5_span(
    m: &DMatrix<f64>,
    mut x: DVector<f64>,
    t0: f64,
    t1: f64,
    h: &mut f64,
    cfg: &SimulationConfig,
) -> Result<DVector<f64>> {
    let mut t = t0;
    let h_min = 1e-13 * t1.abs().max(1.0);
    let mut k = [(); 7].map(|_| DVector::<f64>::zeros(m.nrows()));
    while t < t1 {
        let step = h.min(t1 - t).max(h_min);
        k[0] = m * &x;
        for stage in 0..6 {
            let mut y = x.clone();
            for (j, coeff) in DP_A[stage].iter().enumerate().take(stage + 1) {
                if *coeff != 0.0 {
                    y += &k[j] * (coeff * step);
                }
            }
            k[stage + 1] = m * y;
        }
        let mut x5 = x.clone();
        let mut err = DVector::zeros(m.nrows());
        for j in 0..7 {
            if DP_B5[j] != 0.0 {
                x5 += &k[j] * (DP_B5[j] * step);
            }
            let diff = DP_B5[j] - DP_B4[j];
            if diff != 0.0 {
                err += &k[j] * (diff * step);
            }
        }
        let scale = cfg.abs_tol + cfg.rel_tol * x5.amax().max(x.amax());
        let err_norm = err.amax() / scale;
        if err_norm <= 1.0 {
            t += step;
            x = x5;
            *h = step * (0.9 * err_norm.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
        } else {
            *h = step * (0.9 * err_norm.powf(-0.2)).clamp(0.2, 1.0);
            if *h <= h_min {
                return Err(Error::AdaptiveStepFailed { t });
            }
        }
    }
    Ok(x)
}
