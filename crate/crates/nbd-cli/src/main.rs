//! Command-line surface for the `nbd` library: design generation, metric
//! evaluation, benchmark studies with CSV/SVG output, and recovery of the
//! two reference 6x6 designs.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 reference-design
//! search failure.

mod io;
mod plot;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nbd::benchmark::{
    convergence_study, per_dimension_digit_errors, study_spec, summarize, DigitErrorRow,
};
use nbd::benford::{nbd_flat, nbd_joint, JointMode};
use nbd::discrepancy::{
    centered_l2_squared, find_reference_designs, CD2_TARGET_BAD, CD2_TARGET_GOOD,
    CD2_TARGET_TOLERANCE,
};
use nbd::samplers::{sample, SamplerKind, SamplerSpec};
use nbd::Design;

/// Failures after argument parsing; clap handles usage errors itself.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Search(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Search(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) | CliError::Search(msg) => {
                f.write_str(msg)
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "nbd",
    version,
    about = "Newcomb-Benford discrepancy metrics, samplers, and benchmarks for designs of experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a design and write it as headerless CSV
    Sample(SampleArgs),
    /// Evaluate a discrepancy metric on a design read from a file or stdin
    Metric(MetricArgs),
    /// Run benchmark studies and write CSV (and optional SVG) files
    Bench(BenchArgs),
    /// Recover the two reference 6x6 designs and report their metrics
    Repro,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mc,
    Sobol,
    Lhs,
}

impl From<KindArg> for SamplerKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Mc => SamplerKind::Mc,
            KindArg::Sobol => SamplerKind::Sobol,
            KindArg::Lhs => SamplerKind::Lhs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    NbdFlat,
    NbdJoint,
    Cd2,
}

#[derive(Clone, Copy, ValueEnum)]
enum JointModeArg {
    Product,
    Concatenated,
}

impl From<JointModeArg> for JointMode {
    fn from(mode: JointModeArg) -> Self {
        match mode {
            JointModeArg::Product => JointMode::Product,
            JointModeArg::Concatenated => JointMode::Concatenated,
        }
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    let value: usize = s
        .parse()
        .map_err(|_| format!("'{s}' is not a positive integer"))?;
    if value == 0 {
        return Err("must be ≥ 1".into());
    }
    Ok(value)
}

#[derive(Args)]
struct SampleArgs {
    /// Sampler kind
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Number of points
    #[arg(long, value_parser = positive_usize)]
    n: usize,
    /// Number of dimensions
    #[arg(long, value_parser = positive_usize)]
    d: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Apply a random digital shift (Sobol' only)
    #[arg(long)]
    scramble: bool,
    /// Place each point at its stratum center (LHS only)
    #[arg(long)]
    centered: bool,
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MetricArgs {
    /// Metric to evaluate
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// Pairwise reference for nbd-joint
    #[arg(long, value_enum, default_value = "concatenated")]
    joint_mode: JointModeArg,
    /// Design CSV path; omit or pass '-' to read standard input
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(subcommand)]
    command: BenchCommand,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Replicate metrics over a grid of design sizes
    Convergence(ConvergenceArgs),
    /// Per-dimension digit-frequency deviations at one design size
    Digits(DigitsArgs),
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Comma-separated, strictly ascending design sizes
    #[arg(long, value_delimiter = ',', value_parser = positive_usize, required = true)]
    ns: Vec<usize>,
    /// Number of dimensions
    #[arg(long, value_parser = positive_usize)]
    d: usize,
    /// Replicates per (sampler, size) cell
    #[arg(long, value_parser = positive_usize)]
    reps: usize,
    /// Comma-separated sampler kinds
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mc,sobol")]
    samplers: Vec<KindArg>,
    /// Base seed; replicate r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for records.csv and summaries.csv
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write convergence.svg
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct DigitsArgs {
    /// Design size
    #[arg(long, value_parser = positive_usize)]
    n: usize,
    /// Number of dimensions
    #[arg(long, value_parser = positive_usize)]
    d: usize,
    /// Replicates per sampler
    #[arg(long, value_parser = positive_usize)]
    reps: usize,
    /// Comma-separated sampler kinds
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mc,sobol")]
    samplers: Vec<KindArg>,
    /// Base seed; replicate r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for records.csv, summaries.csv, digit_errors.csv
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write digit_errors.svg
    #[arg(long)]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample(args) => run_sample(args),
        Command::Metric(args) => run_metric(args),
        Command::Bench(args) => match args.command {
            BenchCommand::Convergence(args) => run_convergence(args),
            BenchCommand::Digits(args) => run_digits(args),
        },
        Command::Repro => run_repro(),
    }
}

fn data_err(err: nbd::Error) -> CliError {
    CliError::Data(err.to_string())
}

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    let spec = match args.kind.into() {
        SamplerKind::Mc => SamplerSpec::mc(args.n, args.d, args.seed),
        SamplerKind::Sobol => SamplerSpec::sobol(args.n, args.d, args.seed, args.scramble),
        SamplerKind::Lhs => SamplerSpec::lhs(args.n, args.d, args.seed, args.centered),
    };
    let design = sample(&spec).map_err(data_err)?;
    let csv = io::design_csv(&design);
    match &args.out {
        Some(path) => io::write_atomic(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run_metric(args: MetricArgs) -> Result<(), CliError> {
    let design = io::read_design(args.input.as_deref())?;
    let value = match args.metric {
        MetricArg::NbdFlat => nbd_flat(&design).value,
        MetricArg::NbdJoint => {
            nbd_joint(&design, args.joint_mode.into())
                .map_err(data_err)?
                .value
        }
        MetricArg::Cd2 => centered_l2_squared(&design).value,
    };
    println!("{}", io::format_sig(value, 6));
    Ok(())
}

fn to_kinds(samplers: &[KindArg]) -> Vec<SamplerKind> {
    samplers.iter().map(|&k| k.into()).collect()
}

fn run_convergence(args: ConvergenceArgs) -> Result<(), CliError> {
    if !args.ns.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Usage(
            "--ns must be strictly ascending".into(),
        ));
    }
    let kinds = to_kinds(&args.samplers);
    let records =
        convergence_study(&kinds, &args.ns, args.d, args.reps, args.seed).map_err(data_err)?;
    let summaries = summarize(&records).map_err(data_err)?;
    io::write_atomic(&args.out.join("records.csv"), &io::records_csv(&records))?;
    io::write_atomic(
        &args.out.join("summaries.csv"),
        &io::summaries_csv(&summaries),
    )?;
    if args.svg {
        io::write_atomic(
            &args.out.join("convergence.svg"),
            &plot::convergence_svg(&summaries),
        )?;
    }
    Ok(())
}

fn run_digits(args: DigitsArgs) -> Result<(), CliError> {
    let kinds = to_kinds(&args.samplers);
    let ns = [args.n];
    let records =
        convergence_study(&kinds, &ns, args.d, args.reps, args.seed).map_err(data_err)?;
    let summaries = summarize(&records).map_err(data_err)?;

    let mut rows: Vec<(SamplerKind, usize, DigitErrorRow)> = Vec::new();
    for &kind in &kinds {
        for replicate in 0..args.reps {
            let seed = args.seed.wrapping_add(replicate as u64);
            let design = sample(&study_spec(kind, args.n, args.d, seed)).map_err(data_err)?;
            for row in per_dimension_digit_errors(&design).rows {
                rows.push((kind, replicate, row));
            }
        }
    }

    io::write_atomic(&args.out.join("records.csv"), &io::records_csv(&records))?;
    io::write_atomic(
        &args.out.join("summaries.csv"),
        &io::summaries_csv(&summaries),
    )?;
    io::write_atomic(
        &args.out.join("digit_errors.csv"),
        &io::digit_errors_csv(&rows),
    )?;
    if args.svg {
        io::write_atomic(
            &args.out.join("digit_errors.svg"),
            &plot::digit_errors_svg(&rows),
        )?;
    }
    Ok(())
}

const FLAT_TARGET: f64 = 0.0693;
const FLAT_TOLERANCE: f64 = 5e-4;
const JOINT_TARGET_LOW: f64 = 0.0321;
const JOINT_TARGET_HIGH: f64 = 0.0406;
const JOINT_TOLERANCE: f64 = 1e-3;

struct ReportRow {
    metric: &'static str,
    design: &'static str,
    value: f64,
    target: f64,
    tolerance: f64,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Second-column level indices of a centered 6-level design.
fn level_order(design: &Design) -> Vec<usize> {
    design
        .rows()
        .map(|row| (row[1] * 6.0 - 0.5).round() as usize)
        .collect()
}

fn print_design(name: &str, design: &Design) {
    let order: Vec<String> = level_order(design).iter().map(usize::to_string).collect();
    println!("{name}  second column order [{}]", order.join(", "));
    for row in design.rows() {
        println!("{:.4},{:.4}", row[0], row[1]);
    }
    println!();
}

fn run_repro() -> Result<(), CliError> {
    let (low, high) = find_reference_designs().map_err(|e| CliError::Search(e.to_string()))?;

    let cd2 = |d: &Design| centered_l2_squared(d).value;
    let flat = |d: &Design| nbd_flat(d).value;
    let joint = |d: &Design, m: JointMode| nbd_joint(d, m).expect("designs are 2-d").value;

    println!("reference 6x6 designs (centered 6-level LHS, second column reordered)\n");
    print_design("low-cd2", &low);
    print_design("high-cd2", &high);

    let rows = [
        ReportRow {
            metric: "cd2",
            design: "low-cd2",
            value: cd2(&low),
            target: CD2_TARGET_GOOD,
            tolerance: CD2_TARGET_TOLERANCE,
        },
        ReportRow {
            metric: "cd2",
            design: "high-cd2",
            value: cd2(&high),
            target: CD2_TARGET_BAD,
            tolerance: CD2_TARGET_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-flat",
            design: "low-cd2",
            value: flat(&low),
            target: FLAT_TARGET,
            tolerance: FLAT_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-flat",
            design: "high-cd2",
            value: flat(&high),
            target: FLAT_TARGET,
            tolerance: FLAT_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-joint/product",
            design: "low-cd2",
            value: joint(&low, JointMode::Product),
            target: JOINT_TARGET_LOW,
            tolerance: JOINT_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-joint/product",
            design: "high-cd2",
            value: joint(&high, JointMode::Product),
            target: JOINT_TARGET_HIGH,
            tolerance: JOINT_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-joint/concatenated",
            design: "low-cd2",
            value: joint(&low, JointMode::Concatenated),
            target: JOINT_TARGET_LOW,
            tolerance: JOINT_TOLERANCE,
        },
        ReportRow {
            metric: "nbd-joint/concatenated",
            design: "high-cd2",
            value: joint(&high, JointMode::Concatenated),
            target: JOINT_TARGET_HIGH,
            tolerance: JOINT_TOLERANCE,
        },
    ];

    println!(
        "{:<24}{:<10}{:<14}{:<9}{:<8}status",
        "metric", "design", "value", "target", "tol"
    );
    for row in &rows {
        println!(
            "{:<24}{:<10}{:<14}{:<9}{:<8}{}",
            row.metric,
            row.design,
            io::format_sig(row.value, 6),
            row.target,
            row.tolerance,
            status((row.value - row.target).abs() <= row.tolerance),
        );
    }

    let order = |a: f64, b: f64| {
        if a < b {
            ("low-cd2 < high-cd2", true)
        } else {
            ("low-cd2 >= high-cd2", false)
        }
    };
    let cd2_order = order(cd2(&low), cd2(&high));
    let flat_same = flat(&low) == flat(&high);
    let product_order = order(
        joint(&low, JointMode::Product),
        joint(&high, JointMode::Product),
    );
    let concat_order = order(
        joint(&low, JointMode::Concatenated),
        joint(&high, JointMode::Concatenated),
    );

    println!("\norderings");
    println!("{:<24}{:<22}{}", "cd2", cd2_order.0, status(cd2_order.1));
    println!(
        "{:<24}{:<22}{}",
        "nbd-flat",
        if flat_same { "identical" } else { "differ" },
        status(flat_same)
    );
    println!(
        "{:<24}{:<22}{}",
        "nbd-joint/product", product_order.0, status(product_order.1)
    );
    println!(
        "{:<24}{:<22}{}",
        "nbd-joint/concatenated", concat_order.0, status(concat_order.1)
    );

    println!(
        "\nnote: neither pairwise reference mode reaches the joint targets; at six\n\
         points the 81-bin pair histograms sit near each mode's saturation floor.\n\
         The concatenated mode still ranks the designs exactly as cd2 does."
    );
    Ok(())
}
