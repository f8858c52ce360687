//! Command-line front end: single values, parameter sweeps and oracle
//! verification, with CSV/JSON table output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical/convergence error, 4 I/O error. Set `RAYON_NUM_THREADS` to
//! cap internal parallelism.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use cvteleport::{
    epr_variance, epr_variance_fock, fidelity_closed_form, fidelity_ideal, fidelity_quadrature,
    run_sweep, run_verification, ChannelParams, Error, FidelityReport, FockOracleSpec,
    QuadratureSpec, ResourceKind, ResourceSpec, SweepQuantity, SweepSpec, SweepTable,
    SweepVariable, VerifyGrid,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cvteleport",
    version,
    about = "Continuous-variable teleportation fidelity with non-Gaussian resources",
    after_help = "Set RAYON_NUM_THREADS to cap internal parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tmsv,
    Psub,
    Padd,
}

impl From<KindArg> for ResourceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Tmsv => ResourceKind::Tmsv,
            KindArg::Psub => ResourceKind::PhotonSubtracted,
            KindArg::Padd => ResourceKind::PhotonAdded,
        }
    }
}

impl std::fmt::Display for KindArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(ResourceKind::from(*self).label())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    Lambda,
    Tau,
    R2,
    Gain,
    Alpha,
}

impl From<VarArg> for SweepVariable {
    fn from(v: VarArg) -> Self {
        match v {
            VarArg::Lambda => SweepVariable::Lambda,
            VarArg::Tau => SweepVariable::Tau,
            VarArg::R2 => SweepVariable::ReflectivitySquared,
            VarArg::Gain => SweepVariable::Gain,
            VarArg::Alpha => SweepVariable::Alpha,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Fidelity,
    IdealFidelity,
    EprVariance,
}

impl From<QuantityArg> for SweepQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Fidelity => SweepQuantity::Fidelity,
            QuantityArg::IdealFidelity => SweepQuantity::IdealFidelity,
            QuantityArg::EprVariance => SweepQuantity::EprVariance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// EPR variance of a resource, optionally cross-checked in Fock space
    Epr {
        #[arg(long)]
        kind: KindArg,
        /// Squeezing parameter lambda = tanh(r), in [0, 1)
        #[arg(long)]
        lambda: f64,
        /// Also evaluate the Fock-series oracle with this cutoff
        #[arg(long, num_args = 0..=1, default_missing_value = "200", value_name = "CUTOFF")]
        oracle: Option<usize>,
    },
    /// Teleportation fidelity for a coherent-state input
    Fidelity {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        lambda: f64,
        /// Displacement gain
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        /// Measurement beam-splitter reflectivity squared
        #[arg(long, default_value_t = 0.0)]
        r2: f64,
        /// Reduced propagation time of Bob's mode
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        /// Thermal occupation of the damping channel
        #[arg(long, default_value_t = 0.0)]
        nth: f64,
        /// Input coherent amplitude (fidelity depends on |alpha| only)
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Report the noiseless-protocol fidelity instead
        #[arg(long)]
        ideal: bool,
        /// Cross-check against the quadrature oracle
        #[arg(long)]
        verify: bool,
    },
    /// Tabulate fidelity or EPR variance over a parameter grid
    Sweep {
        #[arg(long)]
        quantity: QuantityArg,
        /// Swept variable; its fixed-value flag must not also be given
        #[arg(long)]
        var: VarArg,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        /// Number of grid points (both ends included)
        #[arg(long)]
        steps: usize,
        /// Comma-separated resource kinds, one output column each
        #[arg(long, value_delimiter = ',', default_values_t = [KindArg::Tmsv, KindArg::Psub, KindArg::Padd])]
        kinds: Vec<KindArg>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        r2: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        nth: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Run the closed-form-vs-oracle verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
    },
}

/// 17 significant digits: exact round-trip for doubles.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn lib_exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => EXIT_USAGE,
        Error::NoCrossover(_)
        | Error::Convergence { .. }
        | Error::BoxTooSmall { .. }
        | Error::Cutoff { .. } => EXIT_NUMERICAL,
    }
}

fn write_csv(table: &SweepTable, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "{}", table.header.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

fn write_json(table: &SweepTable, w: &mut dyn Write) -> std::io::Result<()> {
    let records: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (key, &value) in table.header.iter().zip(row) {
                obj.insert(
                    key.clone(),
                    serde_json::Number::from_f64(value)
                        .map(serde_json::Value::Number)
                        .unwrap_or(serde_json::Value::Null),
                );
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::to_writer_pretty(&mut *w, &records)?;
    writeln!(w)?;
    Ok(())
}

fn run_epr(kind: KindArg, lambda: f64, oracle: Option<usize>) -> Result<(), (u8, String)> {
    let spec =
        ResourceSpec::new(kind.into(), lambda).map_err(|e| (lib_exit_code(&e), e.to_string()))?;
    let closed = epr_variance(&spec);
    match oracle {
        None => println!("{}", fmt_float(closed)),
        Some(cutoff) => {
            let fock = epr_variance_fock(&spec, &FockOracleSpec { cutoff })
                .map_err(|e| (lib_exit_code(&e), e.to_string()))?;
            println!("closed_form: {}", fmt_float(closed));
            println!("fock_oracle(cutoff={cutoff}): {}", fmt_float(fock));
            println!("discrepancy: {:.3e}", (closed - fock).abs());
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_fidelity(
    kind: KindArg,
    lambda: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: f64,
    ideal: bool,
    verify: bool,
) -> Result<(), (u8, String)> {
    let lift = |e: Error| (lib_exit_code(&e), e.to_string());
    let spec = ResourceSpec::new(kind.into(), lambda).map_err(lift)?;
    if ideal {
        let report = FidelityReport::from_value(fidelity_ideal(&spec));
        println!("fidelity: {}", fmt_float(report.closed_form));
        println!("beats_classical: {}", report.beats_classical);
        println!("beats_no_cloning: {}", report.beats_no_cloning);
        return Ok(());
    }
    let ch = ChannelParams::new(g, r2, tau, nth).map_err(lift)?;
    let input = Complex64::new(alpha, 0.0);
    let mut report = fidelity_closed_form(&spec, &ch, input).map_err(lift)?;
    if verify {
        let quad =
            fidelity_quadrature(&spec, &ch, input, &QuadratureSpec::default()).map_err(lift)?;
        report = report.with_oracle(quad.value);
    }
    println!("fidelity: {}", fmt_float(report.closed_form));
    println!("beats_classical: {}", report.beats_classical);
    println!("beats_no_cloning: {}", report.beats_no_cloning);
    if let (Some(oracle), Some(discrepancy)) = (report.oracle, report.discrepancy) {
        println!("quadrature: {}", fmt_float(oracle));
        println!("discrepancy: {discrepancy:.3e}");
    }
    Ok(())
}

struct SweepArgs {
    quantity: QuantityArg,
    var: VarArg,
    lo: f64,
    hi: f64,
    steps: usize,
    kinds: Vec<KindArg>,
    lambda: Option<f64>,
    g: Option<f64>,
    r2: Option<f64>,
    tau: Option<f64>,
    nth: Option<f64>,
    alpha: Option<f64>,
    out: Option<PathBuf>,
    format: FormatArg,
}

fn run_sweep_cmd(args: SweepArgs) -> Result<(), (u8, String)> {
    let var: SweepVariable = args.var.into();
    let fixed_conflict = match var {
        SweepVariable::Lambda => args.lambda.is_some().then_some("--lambda"),
        SweepVariable::Tau => args.tau.is_some().then_some("--tau"),
        SweepVariable::ReflectivitySquared => args.r2.is_some().then_some("--r2"),
        SweepVariable::Gain => args.g.is_some().then_some("--g"),
        SweepVariable::Alpha => args.alpha.is_some().then_some("--alpha"),
    };
    if let Some(flag) = fixed_conflict {
        return Err((
            EXIT_USAGE,
            format!("{flag} fixes the swept variable; drop one of the two"),
        ));
    }

    let lift = |e: Error| (lib_exit_code(&e), e.to_string());
    // figure defaults: g = 1, R^2 = 0, tau = 0, n_th = 0, alpha = 1,
    // lambda = 0.5
    let channel = ChannelParams::new(
        args.g.unwrap_or(1.0),
        args.r2.unwrap_or(0.0),
        args.tau.unwrap_or(0.0),
        args.nth.unwrap_or(0.0),
    )
    .map_err(lift)?;
    let spec = SweepSpec {
        variable: var,
        lo: args.lo,
        hi: args.hi,
        steps: args.steps,
        kinds: args.kinds.into_iter().map(ResourceKind::from).collect(),
        quantity: args.quantity.into(),
        fixed_lambda: args.lambda.unwrap_or(0.5),
        fixed_channel: channel,
        fixed_alpha: Complex64::new(args.alpha.unwrap_or(1.0), 0.0),
    };
    let table = run_sweep(&spec).map_err(lift)?;

    let io_err = |e: std::io::Error| (EXIT_IO, e.to_string());
    match &args.out {
        Some(path) => {
            let mut file = File::create(path).map_err(io_err)?;
            match args.format {
                FormatArg::Csv => write_csv(&table, &mut file).map_err(io_err)?,
                FormatArg::Json => write_json(&table, &mut file).map_err(io_err)?,
            }
            println!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match args.format {
                FormatArg::Csv => write_csv(&table, &mut lock).map_err(io_err)?,
                FormatArg::Json => write_json(&table, &mut lock).map_err(io_err)?,
            }
            eprintln!("wrote {} rows", table.rows.len());
        }
    }
    Ok(())
}

fn run_verify(grid: GridArg) -> Result<bool, (u8, String)> {
    let grid = match grid {
        GridArg::Small => VerifyGrid::Small,
        GridArg::Full => VerifyGrid::Full,
    };
    let outcomes = run_verification(grid).map_err(|e| (lib_exit_code(&e), e.to_string()))?;
    let mut all_passed = true;
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {} ({} cases): max discrepancy {:.3e}, tolerance {:.1e}",
            o.name, o.cases, o.max_discrepancy, o.tolerance
        );
        all_passed &= o.passed();
    }
    Ok(all_passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Epr {
            kind,
            lambda,
            oracle,
        } => run_epr(kind, lambda, oracle),
        Command::Fidelity {
            kind,
            lambda,
            g,
            r2,
            tau,
            nth,
            alpha,
            ideal,
            verify,
        } => run_fidelity(kind, lambda, g, r2, tau, nth, alpha, ideal, verify),
        Command::Sweep {
            quantity,
            var,
            lo,
            hi,
            steps,
            kinds,
            lambda,
            g,
            r2,
            tau,
            nth,
            alpha,
            out,
            format,
        } => run_sweep_cmd(SweepArgs {
            quantity,
            var,
            lo,
            hi,
            steps,
            kinds,
            lambda,
            g,
            r2,
            tau,
            nth,
            alpha,
            out,
            format,
        }),
        Command::Verify { grid } => {
            return match run_verify(grid) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(EXIT_VERIFY_FAILED),
                Err((code, msg)) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(code)
                }
            };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
