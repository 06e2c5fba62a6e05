//! Synthesis of the classical network: n LC port tanks coupled through an
//! n-port interaction network with admittance `Y(s) = alpha + beta / s`,
//! plus the explicit two-level (Pauli) circuit.
//!
//! The coefficient correspondence is `A = C^{-1} alpha` and
//! `B = C^{-1} beta + omega0^2`, with `omega0^2 = (L C)^{-1}` the tank
//! frequencies. Synthesis inverts it: pick the tank frequencies, then
//! `alpha = C A` and `beta = C (B - omega0^2)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::PauliCoefficients;
use crate::realify::SecondOrderSystem;

/// Tolerance for structural checks on synthesized matrices (symmetry,
/// positive semidefiniteness, flag consistency).
const STRUCT_TOL: f64 = 1e-12;

/// One LC tank: the dipole subnetwork carrying a single port voltage.
///
/// `inductance = None` encodes an open inductor branch (infinite
/// inductance, tank frequency zero); negative values are legal but mark
/// the design non-passive.
#[derive(Debug, Clone, PartialEq)]
pub struct PortTank {
    /// 1-based port index.
    pub index: usize,
    pub inductance: Option<f64>,
    pub capacitance: f64,
    pub initial_voltage: f64,
}

impl PortTank {
    pub fn new(index: usize, inductance: Option<f64>, capacitance: f64, initial_voltage: f64) -> Result<Self> {
        if !(capacitance > 0.0) || !capacitance.is_finite() {
            return Err(Error::InvalidCapacitance);
        }
        if let Some(l) = inductance {
            if l == 0.0 || !l.is_finite() {
                return Err(Error::NonFinite {
                    what: "tank inductance",
                });
            }
        }
        if !initial_voltage.is_finite() {
            return Err(Error::NonFinite {
                what: "initial voltage",
            });
        }
        Ok(Self {
            index,
            inductance,
            capacitance,
            initial_voltage,
        })
    }

    /// Squared tank frequency `1 / (L C)`; zero for an open inductor.
    pub fn omega0_sq(&self) -> f64 {
        match self.inductance {
            Some(l) => 1.0 / (l * self.capacitance),
            None => 0.0,
        }
    }
}

/// The n-port interaction admittance `Y(s) = alpha + beta / s`.
///
/// `alpha` is the constant (conductive, gyrator-like) part; `beta` is the
/// `1/s` (inductive) part in inverse-inductance units.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionNetwork {
    pub alpha: DMatrix<f64>,
    pub beta: DMatrix<f64>,
}

impl InteractionNetwork {
    pub fn ports(&self) -> usize {
        self.alpha.nrows()
    }

    /// Evaluates `Y(s) = alpha + beta / s`.
    pub fn admittance_at(&self, s: Complex64) -> DMatrix<Complex64> {
        let inv_s = Complex64::new(1.0, 0.0) / s;
        DMatrix::from_fn(self.ports(), self.ports(), |k, l| {
            Complex64::new(self.alpha[(k, l)], 0.0) + Complex64::new(self.beta[(k, l)], 0.0) * inv_s
        })
    }

    /// True when `beta` is symmetric positive semidefinite and `alpha` is
    /// antisymmetric: the network is a passive inductor mesh plus
    /// lossless gyrators.
    pub fn passive_reciprocal(&self) -> bool {
        beta_symmetric_psd(&self.beta) && alpha_antisymmetric(&self.alpha)
    }
}

fn mat_scale(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0)
}

fn alpha_antisymmetric(alpha: &DMatrix<f64>) -> bool {
    (alpha + alpha.transpose()).norm() <= STRUCT_TOL * mat_scale(alpha)
}

fn beta_symmetric_psd(beta: &DMatrix<f64>) -> bool {
    let scale = mat_scale(beta);
    if (beta - beta.transpose()).norm() > STRUCT_TOL * scale {
        return false;
    }
    let sym = (beta + beta.transpose()) * 0.5;
    let eigs = sym.symmetric_eigen().eigenvalues;
    eigs.iter().all(|&e| e >= -STRUCT_TOL * scale)
}

/// Structural flags of a synthesized design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DesignFlags {
    /// `beta` is not symmetric PSD, or a tank inductance is negative.
    pub non_passive: bool,
    /// `alpha` is nonzero, so the realization needs gyrators.
    pub gyrator_required: bool,
    /// `alpha = beta = 0`: the interaction network is disconnected.
    pub disconnected: bool,
}

/// How the tank frequencies `omega0^2` are chosen during synthesis. The
/// split between `omega0^2` and the diagonal of `beta` is underdetermined;
/// the choice is recorded on the design for reproducibility.
#[derive(Debug, Clone, PartialEq)]
pub enum Omega0Strategy {
    /// `omega0^2 = diag(B)` when every diagonal entry is positive (makes
    /// `beta` hollow), else fall back to [`Omega0Strategy::Unit`].
    DiagStiffnessPositive,
    /// `omega0^2 = 1` on every port.
    Unit,
    /// Caller-supplied positive values.
    Explicit(Vec<f64>),
}

/// The synthesized network: tanks, interaction admittance, tank
/// frequencies and structural flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDesign {
    pub tanks: Vec<PortTank>,
    pub interaction: InteractionNetwork,
    pub omega0_sq: Vec<f64>,
    pub flags: DesignFlags,
    /// Strategy actually applied ("diag_b_positive", "unit", "explicit",
    /// "pauli" or "netlist").
    pub strategy: String,
}

impl CircuitDesign {
    pub fn ports(&self) -> usize {
        self.tanks.len()
    }

    /// Replaces the tank initial voltages (one entry per port).
    pub fn with_initial_voltages(mut self, v0: &[f64]) -> Result<Self> {
        if v0.len() != self.tanks.len() {
            return Err(Error::DimensionMismatch {
                expected: self.tanks.len(),
                found: v0.len(),
            });
        }
        if v0.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "initial voltages",
            });
        }
        for (tank, &v) in self.tanks.iter_mut().zip(v0) {
            tank.initial_voltage = v;
        }
        Ok(self)
    }

    pub fn initial_voltages(&self) -> Vec<f64> {
        self.tanks.iter().map(|t| t.initial_voltage).collect()
    }

    pub(crate) fn capacitances(&self) -> Vec<f64> {
        self.tanks.iter().map(|t| t.capacitance).collect()
    }
}

pub(crate) fn flags_for(
    alpha: &DMatrix<f64>,
    beta: &DMatrix<f64>,
    tanks: &[PortTank],
) -> DesignFlags {
    let alpha_zero = alpha.iter().all(|&x| x == 0.0);
    let beta_zero = beta.iter().all(|&x| x == 0.0);
    let negative_l = tanks.iter().any(|t| matches!(t.inductance, Some(l) if l < 0.0));
    DesignFlags {
        non_passive: !beta_symmetric_psd(beta) || negative_l,
        gyrator_required: !alpha_zero,
        disconnected: alpha_zero && beta_zero,
    }
}

/// Builds the network realizing `q'' + A q' + B q = 0` for the port
/// voltages: tank capacitances from `cap`, tank frequencies from the
/// strategy, then `alpha = C A`, `beta = C (B - omega0^2)`.
///
/// Reconstructing the coefficients from the result reproduces the input
/// pair to rounding. Initial voltages start at zero; set them with
/// [`CircuitDesign::with_initial_voltages`].
pub fn synthesize_network(
    sys: &SecondOrderSystem,
    cap: &[f64],
    strategy: &Omega0Strategy,
) -> Result<CircuitDesign> {
    let n = sys.dim();
    if cap.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cap.len(),
        });
    }
    if cap.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
        return Err(Error::InvalidCapacitance);
    }

    let (omega0_sq, applied): (Vec<f64>, &str) = match strategy {
        Omega0Strategy::Unit => (vec![1.0; n], "unit"),
        Omega0Strategy::DiagStiffnessPositive => {
            let diag: Vec<f64> = (0..n).map(|k| sys.stiffness[(k, k)]).collect();
            if diag.iter().all(|&d| d > 0.0) {
                (diag, "diag_b_positive")
            } else {
                (vec![1.0; n], "unit")
            }
        }
        Omega0Strategy::Explicit(values) => {
            if values.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: values.len(),
                });
            }
            for (k, &v) in values.iter().enumerate() {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::StrategyFailed { port: k + 1, value: v });
                }
            }
            (values.clone(), "explicit")
        }
    };

    let alpha = DMatrix::from_fn(n, n, |k, l| cap[k] * sys.damping[(k, l)]);
    let beta = DMatrix::from_fn(n, n, |k, l| {
        let shift = if k == l { omega0_sq[k] } else { 0.0 };
        cap[k] * (sys.stiffness[(k, l)] - shift)
    });

    let tanks: Vec<PortTank> = (0..n)
        .map(|k| PortTank::new(k + 1, Some(1.0 / (cap[k] * omega0_sq[k])), cap[k], 0.0))
        .collect::<Result<_>>()?;

    let flags = flags_for(&alpha, &beta, &tanks);
    Ok(CircuitDesign {
        tanks,
        interaction: InteractionNetwork { alpha, beta },
        omega0_sq,
        flags,
        strategy: applied.to_string(),
    })
}

/// Recovers the coefficient pair from a design:
/// `A = C^{-1} alpha`, `B = C^{-1} beta + omega0^2`.
pub fn reconstruct_ab(design: &CircuitDesign) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = design.ports();
    let cap = design.capacitances();
    let damping = DMatrix::from_fn(n, n, |k, l| design.interaction.alpha[(k, l)] / cap[k]);
    let stiffness = DMatrix::from_fn(n, n, |k, l| {
        let shift = if k == l { design.omega0_sq[k] } else { 0.0 };
        design.interaction.beta[(k, l)] / cap[k] + shift
    });
    (damping, stiffness)
}

/// Report of [`check_realizability`]: which passivity and reciprocity
/// conditions the design satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizabilityReport {
    /// `alpha` is antisymmetric: lossless, gyrator-only coupling.
    pub alpha_antisymmetric: bool,
    /// Norm of the symmetric part of `alpha` (resistive content;
    /// unexpected for Hermitian-derived designs).
    pub alpha_symmetric_part: f64,
    /// `beta` is symmetric positive semidefinite: a passive inductor mesh.
    pub beta_symmetric_psd: bool,
    /// Every tank has positive (or open) inductance and positive
    /// capacitance.
    pub tanks_positive: bool,
    /// No gyrators needed (`alpha = 0`).
    pub reciprocal: bool,
    /// All passivity conditions hold.
    pub passive: bool,
}

pub fn check_realizability(design: &CircuitDesign) -> RealizabilityReport {
    let alpha = &design.interaction.alpha;
    let beta = &design.interaction.beta;
    let alpha_anti = alpha_antisymmetric(alpha);
    let sym_part = (alpha + alpha.transpose()) * 0.5;
    let beta_psd = beta_symmetric_psd(beta);
    let tanks_positive = design
        .tanks
        .iter()
        .all(|t| t.capacitance > 0.0 && t.inductance.map_or(true, |l| l > 0.0));
    RealizabilityReport {
        alpha_antisymmetric: alpha_anti,
        alpha_symmetric_part: sym_part.norm(),
        beta_symmetric_psd: beta_psd,
        tanks_positive,
        reciprocal: alpha.iter().all(|&x| x == 0.0),
        passive: alpha_anti && beta_psd && tanks_positive,
    }
}

/// The explicit two-level circuit: two equal-capacitance tanks coupled by
/// a gyrator in parallel with a three-inductor bridge network.
///
/// Absent inductors (`None`) are open branches. The component relations,
/// with `C` the common capacitance and `xi` the Pauli coefficients:
///
/// ```text
/// 1/(C L1) = (xi0 + xi3)^2        1/(C La) + 1/(C Lb) = xi1^2 - xi2^2
/// 1/(C L2) = (xi0 - xi3)^2       -1/(C Lc) = 2 xi0 xi1
/// g / C    = 2 xi2
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCircuit {
    /// Common tank capacitance.
    pub capacitance: f64,
    /// Tank inductors `L1`, `L2`.
    pub tank1: Option<f64>,
    pub tank2: Option<f64>,
    /// Bridge-network shunt inductors `La`, `Lb` (equal split).
    pub shunt_a: Option<f64>,
    pub shunt_b: Option<f64>,
    /// Bridge inductor `Lc` between the ports.
    pub bridge: Option<f64>,
    /// Gyrator conductance `g` (zero means no gyrator).
    pub gyrator: f64,
    /// Parallel merges `L1 || La`, `L2 || Lb` when defined.
    pub merged_tank1: Option<f64>,
    pub merged_tank2: Option<f64>,
}

fn parallel(a: Option<f64>, b: Option<f64>) -> Result<Option<f64>> {
    match (a, b) {
        (None, None) => Ok(None),
        (Some(x), None) | (None, Some(x)) => Ok(Some(x)),
        (Some(x), Some(y)) => {
            let inv = 1.0 / x + 1.0 / y;
            if inv == 0.0 {
                Err(Error::DegenerateMerge)
            } else {
                Ok(Some(1.0 / inv))
            }
        }
    }
}

/// Solves the two-level component relations for a given capacitance.
///
/// A zero tank frequency `(xi0 +- xi3 = 0)` yields an open tank inductor;
/// negative inductances are permitted (the equivalent design is flagged
/// non-passive). The equal split `La = Lb` is one documented choice; any
/// other split satisfying the sum relation is electrically equivalent.
pub fn synthesize_pauli(xi: &PauliCoefficients, cap: f64) -> Result<PauliCircuit> {
    if !(cap > 0.0) || !cap.is_finite() {
        return Err(Error::InvalidCapacitance);
    }
    if xi.as_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "Pauli coefficients",
        });
    }
    let w1 = (xi.identity + xi.z).powi(2);
    let w2 = (xi.identity - xi.z).powi(2);
    let tank1 = (w1 != 0.0).then(|| 1.0 / (cap * w1));
    let tank2 = (w2 != 0.0).then(|| 1.0 / (cap * w2));

    let shunt_sum = xi.x * xi.x - xi.y * xi.y;
    let (shunt_a, shunt_b) = if shunt_sum != 0.0 {
        let l = 2.0 / (cap * shunt_sum);
        (Some(l), Some(l))
    } else {
        (None, None)
    };

    let cross = 2.0 * xi.identity * xi.x;
    let bridge = (cross != 0.0).then(|| -1.0 / (cap * cross));

    let gyrator = 2.0 * cap * xi.y;

    let mut pc = PauliCircuit {
        capacitance: cap,
        tank1,
        tank2,
        shunt_a,
        shunt_b,
        bridge,
        gyrator,
        merged_tank1: None,
        merged_tank2: None,
    };
    // Record merged values when the merges are defined.
    if let Ok(m) = parallel(pc.tank1, pc.shunt_a) {
        pc.merged_tank1 = m;
    }
    if let Ok(m) = parallel(pc.tank2, pc.shunt_b) {
        pc.merged_tank2 = m;
    }
    Ok(pc)
}

impl PauliCircuit {
    /// Unifies the parallel inductor pairs `(L1, La)` and `(L2, Lb)` into
    /// `L1*`, `L2*`. The merged two-element tank has the same admittance
    /// as the pair it replaces. Fails when the inverse inductances cancel.
    pub fn merge_parallel(&self) -> Result<PauliCircuit> {
        let mut merged = self.clone();
        merged.merged_tank1 = parallel(self.tank1, self.shunt_a)?;
        merged.merged_tank2 = parallel(self.tank2, self.shunt_b)?;
        Ok(merged)
    }

    /// The equivalent n-port design: tanks `(L1, C)`, `(L2, C)`,
    /// `alpha = [[0, g], [-g, 0]]` and the bridge-network `beta` with
    /// equal diagonal `1/La + 1/Lb` and off-diagonal `-1/Lc`.
    pub fn to_design(&self, initial_voltages: &[f64; 2]) -> Result<CircuitDesign> {
        let inv = |l: Option<f64>| l.map_or(0.0, |v| 1.0 / v);
        let diag = inv(self.shunt_a) + inv(self.shunt_b);
        let off = -inv(self.bridge);
        let beta = DMatrix::from_row_slice(2, 2, &[diag, off, off, diag]);
        let alpha = DMatrix::from_row_slice(2, 2, &[0.0, self.gyrator, -self.gyrator, 0.0]);
        let tanks = vec![
            PortTank::new(1, self.tank1, self.capacitance, initial_voltages[0])?,
            PortTank::new(2, self.tank2, self.capacitance, initial_voltages[1])?,
        ];
        let omega0_sq = tanks.iter().map(|t| t.omega0_sq()).collect();
        let flags = flags_for(&alpha, &beta, &tanks);
        Ok(CircuitDesign {
            tanks,
            interaction: InteractionNetwork { alpha, beta },
            omega0_sq,
            flags,
            strategy: "pauli".to_string(),
        })
    }

    /// The design seen after merging: tanks carry `L1*`, `L2*` and the
    /// interaction keeps only the bridge and the gyrator. Together with
    /// the fixed capacitance, the four values `(L1*, L2*, Lc, g)` fully
    /// determine this design.
    pub fn merged_design(&self, initial_voltages: &[f64; 2]) -> Result<CircuitDesign> {
        let merged = self.merge_parallel()?;
        let inv = |l: Option<f64>| l.map_or(0.0, |v| 1.0 / v);
        let off = -inv(merged.bridge);
        let beta = DMatrix::from_row_slice(2, 2, &[0.0, off, off, 0.0]);
        let alpha = DMatrix::from_row_slice(2, 2, &[0.0, merged.gyrator, -merged.gyrator, 0.0]);
        let tanks = vec![
            PortTank::new(1, merged.merged_tank1, merged.capacitance, initial_voltages[0])?,
            PortTank::new(2, merged.merged_tank2, merged.capacitance, initial_voltages[1])?,
        ];
        let omega0_sq = tanks.iter().map(|t| t.omega0_sq()).collect();
        let flags = flags_for(&alpha, &beta, &tanks);
        Ok(CircuitDesign {
            tanks,
            interaction: InteractionNetwork { alpha, beta },
            omega0_sq,
            flags,
            strategy: "pauli_merged".to_string(),
        })
    }
}
