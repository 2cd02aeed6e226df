//! `confgas`: tables and verification reports for ideal quantum gases in
//! confined geometry.
//!
//! Exit codes: 0 success, 2 valid but warned, 3 invalid input or model
//! failure, 4 internal accuracy failure or failed verification.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use confgas::eos::solve_fugacity;
use confgas::spectral::{spectrum_for, theta_cutoff, theta_sum, ThetaQuery};
use confgas::thermo::thermo;
use confgas::verify::{heatkernel_suite, thermo_suite, Check, DEFAULT_T_LIST};
use confgas::{eval_h, Aux, Container, Error, Order, SolverOptions, StatKind, ThermoReport, ValidityThresholds};
use rayon::prelude::*;

use input::Grid;
use output::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "confgas", version, about = "Ideal Bose and Fermi gases in confined 2-D domains and 3-D tubes")]
struct Cli {
    /// Worker threads for grids; affects wall time only.
    #[arg(long, global = true, env = "CONFGAS_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate h_σ(z) (g_σ for bose, f_σ for fermi).
    ///
    /// Columns: stat, order, z, value, error_bound, method, error.
    Specfun(SpecfunArgs),
    /// Solve the particle-number equation for the fugacity.
    ///
    /// Columns: stat, N, T, z, lambda, ratio_wavelength, ratio_boundary,
    /// ratio_topology, fermi_extension_used, warnings, error.
    Solve(SolveArgs),
    /// Thermodynamics over an (N, T) grid, one row per point, N outer.
    ///
    /// Columns: N, T, z, lambda, U, F, S, C_V, P, then sigma2, eta2 for planar
    /// containers or sigma3, eta3, xi1..xi5 for tubes, then ratio_wavelength,
    /// ratio_boundary, ratio_topology, fermi_extension_used, warnings, error.
    Table(TableArgs),
    /// Run the oracle comparisons.
    ///
    /// Columns: suite, name, measured, tolerance, passed, informational, note.
    Verify(VerifyArgs),
    /// Exact Dirichlet spectrum of a rect, disk or annulus.
    ///
    /// Columns: mu, multiplicity. With --theta: t, theta, truncation_bound.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write rows here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpecfunArgs {
    #[arg(long)]
    stat: StatKind,
    /// One of -1, -1/2, 0, 1/2, 1, 3/2, 2, 5/2.
    #[arg(long)]
    order: Order,
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// lo:hi:n, both ends included; append :log for geometric spacing.
    #[arg(long, value_parser = Grid::parse)]
    z_grid: Option<Grid>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    stat: StatKind,
    /// rect:a,b | disk:R | annulus:Ri,Ro | polygon:@file | free:Ω | domain:Ω,L,r
    #[arg(long)]
    shape: String,
    /// Tube length; without it the container is planar.
    #[arg(long = "Lz")]
    lz: Option<f64>,
    /// Relative tolerance on N.
    #[arg(long, default_value_t = SolverOptions::default().tol)]
    tol: f64,
    /// Bose states need z ≤ 1 − gap.
    #[arg(long, default_value_t = SolverOptions::default().condensation_gap)]
    condensation_gap: f64,
    #[arg(long, default_value_t = SolverOptions::default().z_max)]
    z_max: f64,
    #[arg(long, default_value_t = SolverOptions::default().max_iter)]
    max_iter: usize,
    /// Warn above this λ/√Ω.
    #[arg(long, default_value_t = ValidityThresholds::default().wavelength)]
    warn_wavelength: f64,
    /// Warn above this boundary-to-bulk ratio.
    #[arg(long, default_value_t = ValidityThresholds::default().boundary)]
    warn_boundary: f64,
}

impl ModelArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.tol,
            condensation_gap: self.condensation_gap,
            z_max: self.z_max,
            max_iter: self.max_iter,
            thresholds: ValidityThresholds { wavelength: self.warn_wavelength, boundary: self.warn_boundary },
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long = "N")]
    n: f64,
    #[arg(long = "T")]
    t: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long = "N")]
    n: Option<f64>,
    #[arg(long = "N-grid", value_parser = Grid::parse)]
    n_grid: Option<Grid>,
    #[arg(long = "T")]
    t: Option<f64>,
    #[arg(long = "T-grid", value_parser = Grid::parse)]
    t_grid: Option<Grid>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Suite {
    Heatkernel,
    Thermo,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Heat-kernel times for the disk rows.
    #[arg(long, value_delimiter = ',')]
    t_list: Option<Vec<f64>>,
    /// Also write the rows to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// rect:a,b | disk:R | annulus:Ri,Ro
    #[arg(long)]
    shape: String,
    /// Largest eigenvalue μ listed.
    #[arg(long)]
    cutoff: Option<f64>,
    /// Emit Θ(t) = Σ e^{−μt} instead of the levels.
    #[arg(long)]
    theta: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Clean = 0,
    Warned = 2,
    Invalid = 3,
    Internal = 4,
}

fn status_of(e: &Error) -> Status {
    if e.is_internal() {
        Status::Internal
    } else {
        Status::Invalid
    }
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    match e.downcast_ref::<Error>() {
        Some(Error::Domain(_)) => "domain",
        Some(Error::Accuracy { .. }) => "accuracy",
        Some(Error::Geometry(_)) => "geometry",
        Some(Error::Model(_)) => "model",
        Some(Error::Singularity { .. }) => "singularity",
        Some(Error::NoBracket(_)) => "no-bracket",
        Some(Error::NonMonotone(_)) => "non-monotone",
        Some(Error::Resource(_)) => "resource",
        Some(Error::Convergence(_)) => "convergence",
        Some(Error::Truncation(_)) => "truncation",
        None => "input",
    }
}

fn error_cell(e: &Error) -> Cell {
    Cell::Text(e.to_string())
}

fn specfun(args: &SpecfunArgs) -> Result<Status> {
    let zs = input::values(args.z, args.z_grid.as_ref(), "z")?;
    let mut table = Table::new(vec!["stat", "order", "z", "value", "error_bound", "method", "error"]);
    let mut status = Status::Clean;
    let results: Vec<_> = zs.par_iter().map(|&z| (z, eval_h(args.stat, args.order, z))).collect();
    for (z, r) in results {
        let head = vec![args.stat.name().into(), args.order.to_string().into(), z.into()];
        let tail = match r {
            Ok(v) => vec![v.value.into(), v.abs_error_bound.into(), v.method.name().into(), Cell::Empty],
            Err(e) => {
                status = status.max(status_of(&e));
                vec![Cell::Empty, Cell::Empty, Cell::Empty, error_cell(&e)]
            }
        };
        table.push(head.into_iter().chain(tail).collect());
    }
    table.emit(args.output.out.as_deref(), args.output.format)?;
    Ok(status)
}

fn warnings_text(w: &[confgas::Warning]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn solve(args: &SolveArgs) -> Result<Status> {
    let container = input::container(&args.model.shape, args.model.lz)?;
    let (state, validity) = solve_fugacity(args.model.stat, &container, args.n, args.t, &args.model.options())?;
    let mut table = Table::new(vec![
        "stat",
        "N",
        "T",
        "z",
        "lambda",
        "ratio_wavelength",
        "ratio_boundary",
        "ratio_topology",
        "fermi_extension_used",
        "warnings",
    ]);
    table.push(vec![
        args.model.stat.name().into(),
        args.n.into(),
        args.t.into(),
        state.z.into(),
        state.lambda.into(),
        validity.ratio_wavelength.into(),
        validity.ratio_boundary.into(),
        validity.ratio_topology.into(),
        validity.fermi_extension_used.into(),
        warnings_text(&validity.warnings).into(),
    ]);
    table.emit(args.output.out.as_deref(), args.output.format)?;
    for w in &validity.warnings {
        eprintln!("{}", serde_json::json!({ "warning": w.tag, "message": w.message }));
    }
    Ok(if validity.is_clean() { Status::Clean } else { Status::Warned })
}

fn aux_columns(container: &Container) -> Vec<&'static str> {
    match container {
        Container::Planar(_) => vec!["sigma2", "eta2"],
        Container::Tube(_) => vec!["sigma3", "eta3", "xi1", "xi2", "xi3", "xi4", "xi5"],
    }
}

fn aux_cells(aux: &Aux) -> Vec<Cell> {
    match aux {
        Aux::Planar(a) => vec![a.sigma2.into(), a.eta2.into()],
        Aux::Tube(a) => [a.sigma3, a.eta3, a.xi1, a.xi2, a.xi3, a.xi4, a.xi5].into_iter().map(Cell::from).collect(),
    }
}

fn table(args: &TableArgs) -> Result<Status> {
    let container = input::container(&args.model.shape, args.model.lz)?;
    let ns = input::values(args.n, args.n_grid.as_ref(), "N")?;
    let ts = input::values(args.t, args.t_grid.as_ref(), "T")?;
    let opts = args.model.options();
    let points: Vec<(f64, f64)> = ns.iter().flat_map(|&n| ts.iter().map(move |&t| (n, t))).collect();
    let results: Vec<Result<ThermoReport, Error>> =
        points.par_iter().map(|&(n, t)| thermo(args.model.stat, &container, n, t, &opts)).collect();

    let aux = aux_columns(&container);
    let mut columns = vec!["N", "T", "z", "lambda", "U", "F", "S", "C_V", "P"];
    columns.extend(&aux);
    columns.extend(["ratio_wavelength", "ratio_boundary", "ratio_topology", "fermi_extension_used", "warnings", "error"]);
    let width = columns.len();
    let mut out = Table::new(columns);
    let mut status = Status::Clean;
    for (&(n, t), r) in points.iter().zip(results) {
        let mut row: Vec<Cell> = vec![n.into(), t.into()];
        match r {
            Ok(r) => {
                if !r.validity.is_clean() {
                    status = status.max(Status::Warned);
                }
                let s = r.state;
                row.extend([s.z, s.lambda, r.energy, r.free_energy, r.entropy, r.heat_capacity, r.pressure].map(Cell::from));
                row.extend(aux_cells(&r.aux));
                let v = &r.validity;
                row.extend([v.ratio_wavelength, v.ratio_boundary, v.ratio_topology].map(Cell::from));
                row.push(v.fermi_extension_used.into());
                row.push(warnings_text(&v.warnings).into());
                row.push(Cell::Empty);
            }
            Err(e) => {
                status = status.max(status_of(&e));
                row.resize(width - 1, Cell::Empty);
                row.push(error_cell(&e));
            }
        }
        out.push(row);
    }
    out.emit(args.output.out.as_deref(), args.output.format)?;
    Ok(status)
}

fn verify(args: &VerifyArgs) -> Result<Status> {
    let t_list = args.t_list.clone().unwrap_or_else(|| DEFAULT_T_LIST.to_vec());
    let mut checks: Vec<Check> = Vec::new();
    if matches!(args.suite, Suite::Heatkernel | Suite::All) {
        checks.extend(heatkernel_suite(&t_list)?);
    }
    if matches!(args.suite, Suite::Thermo | Suite::All) {
        checks.extend(thermo_suite()?);
    }
    let mut table =
        Table::new(vec!["suite", "name", "measured", "tolerance", "passed", "informational", "note"]);
    let mut failed = false;
    for c in &checks {
        failed |= !c.passed && !c.informational;
        table.push(vec![
            c.suite.into(),
            c.name.clone().into(),
            c.measured.into(),
            c.tolerance.into(),
            c.passed.into(),
            c.informational.into(),
            c.note.clone().into(),
        ]);
    }
    table.emit(None, args.format)?;
    if let Some(path) = &args.report {
        table.emit(Some(path), args.format)?;
    }
    Ok(if failed { Status::Internal } else { Status::Clean })
}

fn oracle(args: &OracleArgs) -> Result<Status> {
    let shape = input::spectral_shape(&args.shape)?;
    if let Some(t) = args.theta {
        let spec = spectrum_for(&shape, args.cutoff.unwrap_or_else(|| theta_cutoff(t)))?;
        let v = theta_sum(&spec, ThetaQuery::new(t)?)?;
        let mut table = Table::new(vec!["t", "theta", "truncation_bound"]);
        table.push(vec![t.into(), v.value.into(), v.truncation_bound.into()]);
        table.emit(args.output.out.as_deref(), args.output.format)?;
        return Ok(Status::Clean);
    }
    let cutoff = args.cutoff.context("--cutoff is required unless --theta is given")?;
    let spec = spectrum_for(&shape, cutoff)?;
    let mut table = Table::new(vec!["mu", "multiplicity"]);
    for l in &spec.levels {
        table.push(vec![l.mu.into(), Cell::Int(u64::from(l.multiplicity))]);
    }
    table.emit(args.output.out.as_deref(), args.output.format)?;
    Ok(Status::Clean)
}

fn run(cli: &Cli) -> Result<Status> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("cannot start thread pool")?;
    }
    match &cli.command {
        Command::Specfun(a) => specfun(a),
        Command::Solve(a) => solve(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::Invalid as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            let status = e.downcast_ref::<Error>().map_or(Status::Invalid, status_of);
            eprintln!("{}", serde_json::json!({ "error": error_kind(&e), "message": format!("{e:#}") }));
            ExitCode::from(status as u8)
        }
    }
}
