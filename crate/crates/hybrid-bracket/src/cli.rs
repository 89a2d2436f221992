//! Command-line front end: identity sweeps, evolutions, the two worked
//! scenarios, and the canonical-relation scan, with JSON or CSV reports.
//!
//! Exit codes: 0 on success, 2 when an identity sweep exceeds its tolerance,
//! 1 on input errors (bad flags, malformed files, dimension mismatches).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::HybridObservable;
use crate::dynamics::{canonical_scan, taylor_evolve, CanonicalReport, TaylorSolution};
use crate::error::{Error, Result};
use crate::identities::ResidualReport;
use crate::oracle::{compare_with_quasiclassical, ComparisonRecord, MomentumCouplingParams};
use crate::states::{bin_branches, branch_decompose, BranchSet, ClassicalEnsemble, HybridState, QuantumState};
use crate::sweep::{run_all_checks, SweepConfig};

pub const SEED_ENV_VAR: &str = "HYBRID_BRACKET_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "hybrid-bracket",
    version,
    about = "Mixed quasiclassical-quantum observables: bracket identity sweeps, Taylor evolution, and scenario reports"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomized bracket-identity sweeps and report max residuals
    CheckIdentities(CheckIdentitiesArgs),
    /// Taylor-evolve an observable file under a Hamiltonian file
    Evolve(EvolveArgs),
    /// Spin-coupling scenario: branch positions x0 ± c t read out from |+x>
    ScenarioSpin(ScenarioSpinArgs),
    /// Momentum-coupling scenario: full quantum vs quasiclassical vs mean field
    ScenarioMomentum(ScenarioMomentumArgs),
    /// Scan how a Hamiltonian preserves the fundamental canonical relations
    CanonicalScan(CanonicalScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report file; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct CheckIdentitiesArgs {
    /// Base seed for the randomized trials (HYBRID_BRACKET_SEED overrides)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trials per identity
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Residual tolerance; any identity above it makes the run exit 2
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    /// Hilbert-space dimensions to draw from
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    pub dims: Vec<usize>,
    /// Maximum classical polynomial degree of the random observables
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Observable to evolve (shared JSON observable format)
    #[arg(long)]
    pub observable: PathBuf,
    /// Hamiltonian (shared JSON observable format)
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Taylor order
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScenarioSpinArgs {
    /// Coupling constant of H = c k sigma_z
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Evolution time
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Initial classical position
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    /// Initial classical momentum
    #[arg(long, default_value_t = 0.0)]
    pub k0: f64,
    /// Experimental resolution used for binning
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScenarioMomentumArgs {
    /// Momentum-momentum coupling constant
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Evolution time
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Momentum magnitude of the two superposed components
    #[arg(long, default_value_t = 1.0)]
    pub pbar: f64,
    /// Initial wavepacket center
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    /// Wavepacket width
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Amplitude of the +pbar component as `re` or `re,im`; balanced when omitted
    #[arg(long)]
    pub amp_plus: Option<String>,
    /// Amplitude of the -pbar component as `re` or `re,im`; balanced when omitted
    #[arg(long)]
    pub amp_minus: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CanonicalScanArgs {
    /// Hamiltonian (shared JSON observable format)
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Taylor order of the scan
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Loads an observable from the shared JSON format, validating dimensions,
/// finiteness, and term uniqueness.
pub fn load_observable(path: &Path) -> Result<HybridObservable> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Schema(format!("cannot read {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct IdentityReport {
    seed: u64,
    trials: usize,
    tolerance: f64,
    dims: Vec<usize>,
    max_degree: u32,
    hbar: f64,
    all_within_tolerance: bool,
    identities: Vec<ResidualReport>,
}

#[derive(Debug, Serialize)]
struct SpinScenarioReport {
    c: f64,
    t: f64,
    x0: f64,
    k0: f64,
    epsilon: f64,
    /// True when binning at epsilon still distinguishes several outcomes.
    resolved: bool,
    raw: BranchSet,
    binned: BranchSet,
}

fn write_report(output: &OutputArgs, json: String, csv: String) -> Result<()> {
    let body = match output.format {
        ReportFormat::Json => json,
        ReportFormat::Csv => csv,
    };
    match &output.output {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn identities_csv(reports: &[ResidualReport], tolerance: f64) -> String {
    let mut out = String::from("identity,trials,max_residual,pass\n");
    for r in reports {
        writeln!(
            out,
            "{},{},{:e},{}",
            r.identity_name,
            r.trial_count,
            r.max_abs_residual,
            r.passes(tolerance)
        )
        .expect("writing to string");
    }
    out
}

fn branches_csv(set: &BranchSet) -> String {
    let mut out = String::from("branch,value,probability\n");
    for (i, b) in set.branches.iter().enumerate() {
        writeln!(out, "{i},{},{}", b.value, b.probability).expect("writing to string");
    }
    out
}

fn comparison_csv(record: &ComparisonRecord) -> String {
    let mut out = String::from("p_b,prob,x_quantum,x_quasiclassical,x_meanfield\n");
    for b in &record.branches {
        writeln!(
            out,
            "{},{},{},{},{}",
            b.p_b, b.prob, b.x_quantum, b.x_quasiclassical, b.x_meanfield
        )
        .expect("writing to string");
    }
    out
}

fn scan_csv(report: &CanonicalReport) -> String {
    let mut out = String::from("pair,order,residual\n");
    for pair in &report.residuals {
        for (order, residual) in pair.per_order.iter().enumerate() {
            writeln!(out, "{},{order},{residual:e}", pair.pair).expect("writing to string");
        }
    }
    out
}

fn solution_csv(solution: &TaylorSolution) -> String {
    let mut out = String::from("coefficient,a,b,row,col,re,im\n");
    for (n, obs) in solution.coefficients().iter().enumerate() {
        for (monomial, matrix) in obs.terms() {
            for row in 0..obs.dim() {
                for col in 0..obs.dim() {
                    let z = matrix[(row, col)];
                    writeln!(
                        out,
                        "{n},{},{},{row},{col},{},{}",
                        monomial.a, monomial.b, z.re, z.im
                    )
                    .expect("writing to string");
                }
            }
        }
    }
    out
}

fn parse_amplitude(field: &'static str, raw: &str) -> Result<Complex64> {
    let mut parts = raw.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter {
            field,
            message: format!("cannot parse `{raw}` as re[,im]"),
        })?;
    let im: f64 = match parts.next() {
        Some(s) => s.trim().parse().map_err(|_| Error::InvalidParameter {
            field,
            message: format!("cannot parse `{raw}` as re[,im]"),
        })?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

impl Cli {
    /// Executes the parsed command and returns the process exit code.
    pub fn run(&self) -> Result<i32> {
        match &self.command {
            Command::CheckIdentities(args) => run_check_identities(args),
            Command::Evolve(args) => run_evolve(args),
            Command::ScenarioSpin(args) => run_scenario_spin(args),
            Command::ScenarioMomentum(args) => run_scenario_momentum(args),
            Command::CanonicalScan(args) => run_canonical_scan(args),
        }
    }
}

fn effective_seed(flag_seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| Error::InvalidParameter {
            field: "HYBRID_BRACKET_SEED",
            message: format!("cannot parse `{raw}` as an unsigned integer"),
        }),
        Err(_) => Ok(flag_seed),
    }
}

fn run_check_identities(args: &CheckIdentitiesArgs) -> Result<i32> {
    if args.tolerance <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "tolerance",
            message: "must be positive".into(),
        });
    }
    if args.dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidParameter {
            field: "dims",
            message: "identity sweeps need dimension >= 2".into(),
        });
    }
    let config = SweepConfig {
        seed: effective_seed(args.seed)?,
        trials: args.trials,
        dims: args.dims.clone(),
        max_degree: args.max_degree,
        hbar: args.hbar,
        tolerance: args.tolerance,
    };
    let identities = run_all_checks(&config);
    let all_within_tolerance = identities.iter().all(|r| r.passes(config.tolerance));
    let report = IdentityReport {
        seed: config.seed,
        trials: config.trials,
        tolerance: config.tolerance,
        dims: config.dims.clone(),
        max_degree: config.max_degree,
        hbar: config.hbar,
        all_within_tolerance,
        identities,
    };
    let csv = identities_csv(&report.identities, report.tolerance);
    write_report(&args.output, to_json(&report)?, csv)?;
    Ok(if all_within_tolerance { 0 } else { 2 })
}

fn run_evolve(args: &EvolveArgs) -> Result<i32> {
    let observable = load_observable(&args.observable)?;
    let hamiltonian = load_observable(&args.hamiltonian)?;
    let solution = taylor_evolve(&observable, &hamiltonian, args.order)?;
    let csv = solution_csv(&solution);
    write_report(&args.output, to_json(&solution)?, csv)?;
    Ok(0)
}

fn run_scenario_spin(args: &ScenarioSpinArgs) -> Result<i32> {
    if args.epsilon < 0.0 {
        return Err(Error::InvalidParameter {
            field: "epsilon",
            message: "must be non-negative".into(),
        });
    }
    let algebra = crate::algebra::Algebra::with_hbar(2, args.hbar);
    let hamiltonian = algebra
        .pauli_z()?
        .checked_mul(&algebra.k())?
        .scale(Complex64::new(args.c, 0.0));
    let solution = taylor_evolve(&algebra.x(), &hamiltonian, 2)?;
    let position_t = solution.at(args.t).value;
    let state = HybridState::new(
        QuantumState::plus_x(),
        ClassicalEnsemble::point_mass(args.x0, args.k0),
    );
    let raw = branch_decompose(&position_t, &state, (args.x0, args.k0))?;
    let binned = bin_branches(&raw, args.epsilon);
    let report = SpinScenarioReport {
        c: args.c,
        t: args.t,
        x0: args.x0,
        k0: args.k0,
        epsilon: args.epsilon,
        resolved: binned.branches.len() > 1,
        raw,
        binned,
    };
    let csv = branches_csv(&report.binned);
    write_report(&args.output, to_json(&report)?, csv)?;
    Ok(0)
}

fn run_scenario_momentum(args: &ScenarioMomentumArgs) -> Result<i32> {
    let mut params = MomentumCouplingParams::balanced(args.c, args.pbar, args.x0);
    params.width = args.width;
    params.hbar = args.hbar;
    if let Some(raw) = &args.amp_plus {
        params.amp_plus = parse_amplitude("amp_plus", raw)?;
    }
    if let Some(raw) = &args.amp_minus {
        params.amp_minus = parse_amplitude("amp_minus", raw)?;
    }
    let record = compare_with_quasiclassical(&params, args.t)?;
    let csv = comparison_csv(&record);
    write_report(&args.output, to_json(&record)?, csv)?;
    Ok(0)
}

fn run_canonical_scan(args: &CanonicalScanArgs) -> Result<i32> {
    if args.order < 1 {
        return Err(Error::InvalidParameter {
            field: "order",
            message: "must be at least 1".into(),
        });
    }
    let hamiltonian = load_observable(&args.hamiltonian)?;
    let report = canonical_scan(&hamiltonian, args.order)?;
    let csv = scan_csv(&report);
    write_report(&args.output, to_json(&report)?, csv)?;
    Ok(0)
}

/// Parses arguments and runs; the binary calls this and exits with the code.
pub fn run_from_args() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version are not input errors
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match cli.run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}
