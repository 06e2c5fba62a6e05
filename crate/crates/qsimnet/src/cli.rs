//! Command-line front end: ingest job configurations, orchestrate
//! synth -> simulate -> verify -> netlist, and emit JSON/CSV artifacts.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 synthesis infeasible. Diagnostics go to standard error; with
//! `--json-errors` they are emitted as a one-line JSON object instead.
//! All file writes are atomic (write to a temporary file in the target
//! directory, then rename).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netlist::{export_netlist, parse_netlist};
use crate::quantum::{propagate, Hamiltonian, PauliCoefficients, StateVector};
use crate::realify::{initial_conditions, second_order_coeffs, CoeffMode, StatePart};
use crate::signal::{verify_against_quantum, VerificationReport, VerifyTolerances};
use crate::sim::{simulate_second_order, Method, SimulationConfig, TraceSet};
use crate::synthesis::{
    reconstruct_ab, synthesize_network, synthesize_pauli, CircuitDesign, DesignFlags,
    InteractionNetwork, Omega0Strategy, PauliCircuit, PortTank,
};

/// Schema version stamped into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;

const EXIT_OK: i32 = 0;
const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_INVALID_INPUT: i32 = 2;
const EXIT_INFEASIBLE: i32 = 3;

// ---------------------------------------------------------------------------
// Job configuration
// ---------------------------------------------------------------------------

fn default_version() -> u32 {
    SCHEMA_VERSION
}

/// On-disk job configuration. Exactly one Hamiltonian form (dense or
/// Pauli) must be present; missing sections take the documented defaults.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(rename = "qsimnet", default = "default_version")]
    pub version: u32,
    pub hamiltonian: HamiltonianSpec,
    pub psi0: StateSpec,
    #[serde(default)]
    pub sim: SimSpec,
    #[serde(default)]
    pub synth: SynthSpec,
    #[serde(default)]
    pub spectrum_shift: ShiftSpec,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    #[serde(rename = "H_re")]
    pub h_re: Option<Vec<Vec<f64>>>,
    #[serde(rename = "H_im")]
    pub h_im: Option<Vec<Vec<f64>>>,
    pub pauli: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub method: Option<Method>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
}

impl SimSpec {
    pub fn to_config(&self) -> SimulationConfig {
        let base = SimulationConfig::default();
        SimulationConfig {
            t_end: self.t_end.unwrap_or(base.t_end),
            dt: self.dt.unwrap_or(base.dt),
            method: self.method.unwrap_or(base.method),
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum StrategySpec {
    Named(String),
    Explicit { explicit: Vec<f64> },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    pub cap: Option<f64>,
    pub omega0_strategy: Option<StrategySpec>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSpec {
    pub enabled: Option<bool>,
    pub margin: Option<f64>,
}

impl JobConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cfg: JobConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let dense = self.hamiltonian.h_re.is_some() || self.hamiltonian.h_im.is_some();
        let pauli = self.hamiltonian.pauli.is_some();
        if dense == pauli {
            return Err(Error::InvalidConfig {
                reason: "exactly one Hamiltonian form (dense H_re/H_im or pauli) must be present"
                    .to_string(),
            });
        }
        if self.hamiltonian.h_im.is_some() && self.hamiltonian.h_re.is_none() {
            return Err(Error::InvalidConfig {
                reason: "H_im given without H_re".to_string(),
            });
        }
        Ok(())
    }

    /// The input Hamiltonian, before any spectrum shift.
    pub fn hamiltonian(&self) -> Result<Hamiltonian> {
        self.validate()?;
        if let Some(xi) = self.hamiltonian.pauli {
            let coeffs = PauliCoefficients::new(xi[0], xi[1], xi[2], xi[3])?;
            return Ok(Hamiltonian::from_pauli(&coeffs));
        }
        let re = self.hamiltonian.h_re.as_ref().expect("validated");
        let n = re.len();
        let zeros = vec![vec![0.0; n]; n];
        let im = self.hamiltonian.h_im.as_ref().unwrap_or(&zeros);
        if re.iter().any(|row| row.len() != n) || im.len() != n || im.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidConfig {
                reason: "H_re and H_im must be square matrices of equal size".to_string(),
            });
        }
        let m = DMatrix::from_fn(n, n, |k, l| Complex64::new(re[k][l], im[k][l]));
        Hamiltonian::new(m)
    }

    /// The Hamiltonian actually simulated: shifted when the spectrum
    /// shift is enabled (the default, margin 0.5), so the envelope Born
    /// estimate has a one-sided spectrum to work with. Returns the
    /// applied shift alongside.
    pub fn effective_hamiltonian(&self) -> Result<(Hamiltonian, f64)> {
        let h = self.hamiltonian()?;
        let enabled = self.spectrum_shift.enabled.unwrap_or(true);
        let margin = self.spectrum_shift.margin.unwrap_or(0.5);
        if enabled {
            h.shift_spectrum(margin)
        } else {
            Ok((h, 0.0))
        }
    }

    /// The normalized initial state.
    pub fn initial_state(&self) -> Result<StateVector> {
        let n = self.psi0.re.len();
        let im = if self.psi0.im.is_empty() {
            vec![0.0; n]
        } else {
            self.psi0.im.clone()
        };
        if im.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: im.len(),
            });
        }
        let v = DVector::from_fn(n, |k, _| Complex64::new(self.psi0.re[k], im[k]));
        StateVector::normalized(v)
    }

    pub fn sim_config(&self) -> SimulationConfig {
        self.sim.to_config()
    }

    pub fn capacitance(&self) -> f64 {
        self.synth.cap.unwrap_or(1.0)
    }

    pub fn strategy(&self) -> Result<Omega0Strategy> {
        match &self.synth.omega0_strategy {
            None => Ok(Omega0Strategy::DiagStiffnessPositive),
            Some(StrategySpec::Explicit { explicit }) => {
                Ok(Omega0Strategy::Explicit(explicit.clone()))
            }
            Some(StrategySpec::Named(name)) => match name.as_str() {
                "diag_b_positive" => Ok(Omega0Strategy::DiagStiffnessPositive),
                "unit" => Ok(Omega0Strategy::Unit),
                other => Err(Error::InvalidConfig {
                    reason: format!(
                        "unknown omega0_strategy '{other}' (expected diag_b_positive, unit or explicit)"
                    ),
                }),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Design and report files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TankFile {
    index: usize,
    inductance: Option<f64>,
    capacitance: f64,
    initial_voltage: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FlagsFile {
    non_passive: bool,
    gyrator_required: bool,
    disconnected: bool,
}

/// Two-level component values recorded by the `pauli` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PauliFile {
    c: f64,
    l1: Option<f64>,
    l2: Option<f64>,
    la: Option<f64>,
    lb: Option<f64>,
    lc: Option<f64>,
    g: f64,
    l1_star: Option<f64>,
    l2_star: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DesignFile {
    qsimnet: u32,
    n: usize,
    strategy: String,
    flags: FlagsFile,
    omega0_sq: Vec<f64>,
    tanks: Vec<TankFile>,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pauli: Option<PauliFile>,
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|k| (0..m.ncols()).map(|l| m[(k, l)]).collect())
        .collect()
}

fn rows_matrix(rows: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidConfig {
            reason: "matrix in design file has wrong shape".to_string(),
        });
    }
    Ok(DMatrix::from_fn(n, n, |k, l| rows[k][l]))
}

impl DesignFile {
    fn from_design(design: &CircuitDesign, pauli: Option<PauliFile>) -> Self {
        Self {
            qsimnet: SCHEMA_VERSION,
            n: design.ports(),
            strategy: design.strategy.clone(),
            flags: FlagsFile {
                non_passive: design.flags.non_passive,
                gyrator_required: design.flags.gyrator_required,
                disconnected: design.flags.disconnected,
            },
            omega0_sq: design.omega0_sq.clone(),
            tanks: design
                .tanks
                .iter()
                .map(|t| TankFile {
                    index: t.index,
                    inductance: t.inductance,
                    capacitance: t.capacitance,
                    initial_voltage: t.initial_voltage,
                })
                .collect(),
            alpha: matrix_rows(&design.interaction.alpha),
            beta: matrix_rows(&design.interaction.beta),
            pauli,
        }
    }

    fn into_design(self) -> Result<CircuitDesign> {
        let n = self.n;
        if self.tanks.len() != n || self.omega0_sq.len() != n {
            return Err(Error::InvalidConfig {
                reason: "design file tank count does not match n".to_string(),
            });
        }
        let tanks: Vec<PortTank> = self
            .tanks
            .iter()
            .map(|t| PortTank::new(t.index, t.inductance, t.capacitance, t.initial_voltage))
            .collect::<Result<_>>()?;
        Ok(CircuitDesign {
            tanks,
            interaction: InteractionNetwork {
                alpha: rows_matrix(&self.alpha, n)?,
                beta: rows_matrix(&self.beta, n)?,
            },
            omega0_sq: self.omega0_sq,
            flags: DesignFlags {
                non_passive: self.flags.non_passive,
                gyrator_required: self.flags.gyrator_required,
                disconnected: self.flags.disconnected,
            },
            strategy: self.strategy,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ReportFile {
    qsimnet: u32,
    #[serde(flatten)]
    report: VerificationReport,
}

/// Output locations of a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunArtifacts {
    pub design_path: PathBuf,
    pub traces_path: PathBuf,
    pub report_path: PathBuf,
    pub netlist_path: PathBuf,
}

// ---------------------------------------------------------------------------
// Atomic file and CSV helpers
// ---------------------------------------------------------------------------

/// Writes via a temporary file in the destination directory and renames,
/// so readers never observe a partial artifact.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp~");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, &text)
}

/// Renders traces as CSV with header `t,V1,...,Vn` and
/// 17-significant-digit values.
pub fn traces_to_csv(traces: &TraceSet) -> String {
    let mut out = String::from("t");
    for label in traces.labels() {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (i, &t) in traces.times().iter().enumerate() {
        out.push_str(&format!("{t:.16e}"));
        for k in 0..traces.channel_count() {
            out.push_str(&format!(",{:.16e}", traces.channel(k)[i]));
        }
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`traces_to_csv`].
pub fn traces_from_csv(text: &str) -> Result<TraceSet> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::InvalidConfig {
        reason: "empty traces file".to_string(),
    })?;
    let mut cols = header.split(',');
    if cols.next() != Some("t") {
        return Err(Error::InvalidConfig {
            reason: "traces header must start with 't'".to_string(),
        });
    }
    let labels: Vec<String> = cols.map(str::to_string).collect();
    if labels.is_empty() {
        return Err(Error::InvalidConfig {
            reason: "traces file has no channels".to_string(),
        });
    }
    let mut times = Vec::new();
    let mut channels: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
    for (row, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != labels.len() + 1 {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "row {} has {} fields, expected {}",
                    row + 2,
                    fields.len(),
                    labels.len() + 1
                ),
            });
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::InvalidConfig {
                reason: format!("bad number '{s}' in traces row {}", row + 2),
            })
        };
        times.push(parse(fields[0])?);
        for (k, f) in fields[1..].iter().enumerate() {
            channels[k].push(parse(f)?);
        }
    }
    TraceSet::new(times, channels, labels)
}

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

/// Builds the circuit design for a job configuration: shifted
/// Hamiltonian, auto-routed second-order coefficients, network synthesis,
/// tank initial voltages from `Re(psi0)`.
pub fn design_from_config(cfg: &JobConfig) -> Result<CircuitDesign> {
    let (h, _shift) = cfg.effective_hamiltonian()?;
    let psi0 = cfg.initial_state()?;
    if psi0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi0.dim(),
        });
    }
    let sys = second_order_coeffs(&h, CoeffMode::Auto)?;
    let cap = vec![cfg.capacitance(); h.dim()];
    let init = initial_conditions(&h, &psi0, StatePart::RealPart)?;
    let v0: Vec<f64> = init.position.iter().cloned().collect();
    synthesize_network(&sys, &cap, &cfg.strategy()?)?.with_initial_voltages(&v0)
}

/// Simulates the port voltages of a design under a job configuration.
pub fn traces_for_design(design: &CircuitDesign, cfg: &JobConfig) -> Result<TraceSet> {
    let (h, _) = cfg.effective_hamiltonian()?;
    let psi0 = cfg.initial_state()?;
    if design.ports() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: design.ports(),
        });
    }
    let (damping, stiffness) = reconstruct_ab(design);
    let init = initial_conditions(&h, &psi0, StatePart::RealPart)?;
    simulate_second_order(&damping, &stiffness, &init, &cfg.sim_config())
}

/// Verifies traces against the exact evolution of the configured system.
pub fn verify_traces(traces: &TraceSet, cfg: &JobConfig) -> Result<VerificationReport> {
    let (h, _) = cfg.effective_hamiltonian()?;
    let psi0 = cfg.initial_state()?;
    let truth = propagate(&h, &psi0, traces.times())?;
    verify_against_quantum(traces, &truth, &h, &VerifyTolerances::default())
}

fn pauli_file(pc: &PauliCircuit) -> PauliFile {
    PauliFile {
        c: pc.capacitance,
        l1: pc.tank1,
        l2: pc.tank2,
        la: pc.shunt_a,
        lb: pc.shunt_b,
        lc: pc.bridge,
        g: pc.gyrator,
        l1_star: pc.merged_tank1,
        l2_star: pc.merged_tank2,
    }
}

// ---------------------------------------------------------------------------
// Argument parsing and dispatch
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "qsimnet",
    version,
    about = "Map quantum Hamiltonians to classical electrical networks, simulate and verify"
)]
struct Cli {
    /// Emit machine-readable JSON error objects on standard error.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a circuit design from a job configuration.
    Synth {
        /// Job configuration (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Output design file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate port-voltage traces for a synthesized design.
    Simulate {
        /// Design file produced by `synth` or `pauli`.
        #[arg(long)]
        design: PathBuf,
        /// Job configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output traces file (CSV: t,V1,...,Vn).
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify traces against the exact quantum evolution.
    Verify {
        /// Traces file produced by `simulate`.
        #[arg(long)]
        traces: PathBuf,
        /// Job configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output verification report (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a deterministic netlist for a design.
    Netlist {
        /// Design file produced by `synth` or `pauli`.
        #[arg(long)]
        design: PathBuf,
        /// Output netlist file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Two-level fast path: synthesize the explicit Pauli circuit.
    Pauli {
        /// Pauli coefficients as xi0,xi1,xi2,xi3.
        #[arg(long)]
        xi: String,
        /// Common tank capacitance.
        #[arg(long, default_value_t = 1.0)]
        cap: f64,
        /// Output design file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run synth, simulate, netlist and verify; aggregate the exit code.
    Pipeline {
        /// Job configuration (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Output directory for design.json, traces.csv, circuit.cir and
        /// report.json.
        #[arg(long)]
        outdir: PathBuf,
    },
}

fn exit_code_for(err: &Error) -> (i32, &'static str) {
    match err {
        Error::StrategyFailed { .. }
        | Error::DegenerateMerge
        | Error::InvalidCapacitance
        | Error::SingularRealPart { .. } => (EXIT_INFEASIBLE, "synthesis_infeasible"),
        _ => (EXIT_INVALID_INPUT, "invalid_input"),
    }
}

#[derive(Serialize)]
struct JsonErrorBody<'a> {
    code: i32,
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct JsonError<'a> {
    qsimnet: u32,
    error: JsonErrorBody<'a>,
}

fn report_error(err: &Error, json_errors: bool) -> i32 {
    let (code, kind) = exit_code_for(err);
    if json_errors {
        let body = JsonError {
            qsimnet: SCHEMA_VERSION,
            error: JsonErrorBody {
                code,
                kind,
                message: err.to_string(),
            },
        };
        eprintln!("{}", serde_json::to_string(&body).unwrap_or_default());
    } else {
        eprintln!("error: {err}");
    }
    code
}

fn load_design(path: &Path) -> Result<CircuitDesign> {
    let text = fs::read_to_string(path)?;
    let file: DesignFile = serde_json::from_str(&text)?;
    file.into_design()
}

fn cmd_synth(input: &Path, out: &Path) -> Result<()> {
    let cfg = JobConfig::from_path(input)?;
    let design = design_from_config(&cfg)?;
    write_json(out, &DesignFile::from_design(&design, None))
}

fn cmd_simulate(design_path: &Path, config: &Path, out: &Path) -> Result<()> {
    let cfg = JobConfig::from_path(config)?;
    let design = load_design(design_path)?;
    let traces = traces_for_design(&design, &cfg)?;
    write_atomic(out, &traces_to_csv(&traces))
}

/// Returns the report so the caller can decide the exit code.
fn cmd_verify(traces_path: &Path, config: &Path, out: &Path) -> Result<VerificationReport> {
    let cfg = JobConfig::from_path(config)?;
    let traces = traces_from_csv(&fs::read_to_string(traces_path)?)?;
    let report = verify_traces(&traces, &cfg)?;
    write_json(
        out,
        &ReportFile {
            qsimnet: SCHEMA_VERSION,
            report: report.clone(),
        },
    )?;
    Ok(report)
}

fn cmd_netlist(design_path: &Path, out: &Path) -> Result<()> {
    let design = load_design(design_path)?;
    let netlist = export_netlist(&design, &design.initial_voltages())?;
    // Sanity: the emitted text must parse back.
    parse_netlist(&netlist.text)?;
    write_atomic(out, &netlist.text)
}

fn cmd_pauli(xi: &str, cap: f64, out: &Path) -> Result<()> {
    let parts: Vec<&str> = xi.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidConfig {
            reason: format!("--xi expects four comma-separated values, got '{xi}'"),
        });
    }
    let mut vals = [0.0; 4];
    for (slot, token) in vals.iter_mut().zip(&parts) {
        *slot = token.trim().parse().map_err(|_| Error::InvalidConfig {
            reason: format!("bad Pauli coefficient '{token}'"),
        })?;
    }
    let coeffs = PauliCoefficients::new(vals[0], vals[1], vals[2], vals[3])?;
    let pc = synthesize_pauli(&coeffs, cap)?;
    let design = pc.to_design(&[0.0, 0.0])?;
    write_json(out, &DesignFile::from_design(&design, Some(pauli_file(&pc))))
}

/// Runs all stages into `outdir`; the artifacts are byte-identical to
/// invoking the individual subcommands with the same inputs.
pub fn run_pipeline(input: &Path, outdir: &Path) -> Result<(RunArtifacts, VerificationReport)> {
    fs::create_dir_all(outdir)?;
    let artifacts = RunArtifacts {
        design_path: outdir.join("design.json"),
        traces_path: outdir.join("traces.csv"),
        report_path: outdir.join("report.json"),
        netlist_path: outdir.join("circuit.cir"),
    };
    cmd_synth(input, &artifacts.design_path)?;
    cmd_simulate(&artifacts.design_path, input, &artifacts.traces_path)?;
    cmd_netlist(&artifacts.design_path, &artifacts.netlist_path)?;
    let report = cmd_verify(&artifacts.traces_path, input, &artifacts.report_path)?;
    Ok((artifacts, report))
}

/// Parses the argument list, runs the requested subcommand and returns
/// the process exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };

    let json_errors = cli.json_errors;
    let outcome: Result<i32> = match &cli.command {
        Command::Synth { input, out } => cmd_synth(input, out).map(|_| EXIT_OK),
        Command::Simulate {
            design,
            config,
            out,
        } => cmd_simulate(design, config, out).map(|_| EXIT_OK),
        Command::Verify {
            traces,
            config,
            out,
        } => cmd_verify(traces, config, out).map(|report| {
            if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }),
        Command::Netlist { design, out } => cmd_netlist(design, out).map(|_| EXIT_OK),
        Command::Pauli { xi, cap, out } => cmd_pauli(xi, *cap, out).map(|_| EXIT_OK),
        Command::Pipeline { input, outdir } => run_pipeline(input, outdir).map(|(_, report)| {
            if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }),
    };

    match outcome {
        Ok(code) => code,
        Err(err) => report_error(&err, json_errors),
    }
}
