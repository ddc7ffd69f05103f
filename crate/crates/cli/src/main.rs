//! Command-line front end for the exact midpoint-set library. Every
//! subcommand emits exact rational arithmetic — JSON reports use `"p/q"`
//! strings, never floating point.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use midset::cantor;
use midset::cover::cover_report_with_caps;
use midset::midpoint::{
    build_certificates_with_caps, stage_midpoints_with_caps, verify_midpoint_claims_with_caps,
    Method, MidpointCertificate,
};
use midset::witness::find_witness_with_caps;
use midset::{Caps, Rational};

#[derive(Parser)]
#[command(
    name = "midset",
    version,
    about = "Exact midpoint sets of the ternary Cantor construction",
    long_about = "Computes stages of the middle-thirds construction, their exact midpoint \
                  sets, nested witness chains for individual targets, and sphere covers \
                  demonstrating that every grid center owns a point pair inside a stage of \
                  small measure. All arithmetic is exact; JSON output writes rationals as \
                  \"numerator/denominator\" strings."
)]
struct Cli {
    /// Depth cap for stage construction and full pairwise midpoint
    /// computation (defaults: stages 14, pairwise 12)
    #[arg(long, global = true, value_name = "LEVEL")]
    cap: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a construction stage, or its open-cell partition, as JSON
    Cantor(CantorArgs),
    /// Compute the exact midpoint set of a stage
    Midpoints(MidpointsArgs),
    /// Build the nested interval-pair chain localizing a point pair that
    /// averages to a target
    Witness(WitnessArgs),
    /// Check the midpoint set of every stage up to a level against the open
    /// unit interval
    Verify(VerifyArgs),
    /// Assign a point-pair sphere inside a small stage to every center on a
    /// uniform grid
    Cover(CoverArgs),
    /// Print the exact measure of a construction stage
    Measure(MeasureArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("target").required(true).multiple(false))]
struct CantorArgs {
    /// Stage level to emit
    #[arg(long, value_name = "I", group = "target")]
    level: Option<u32>,
    /// Emit the indexed open-cell partition at this scale instead
    #[arg(long, value_name = "I", group = "target")]
    partition: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Coalesce the midpoints of every component pair
    Pairwise,
    /// Recurse on the stage's two scaled sub-copies
    Selfsimilar,
}

impl From<MethodArg> for Method {
    fn from(arg: MethodArg) -> Method {
        match arg {
            MethodArg::Pairwise => Method::Pairwise,
            MethodArg::Selfsimilar => Method::SelfSimilar,
        }
    }
}

#[derive(Args)]
struct MidpointsArgs {
    /// Stage level whose midpoint set to compute
    #[arg(long, value_name = "I")]
    level: u32,
    /// Computation engine
    #[arg(long, value_enum, default_value = "pairwise")]
    method: MethodArg,
    /// Also emit the cell certificates for this level
    #[arg(long)]
    emit_certificates: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Target value in (0, 1), written as p/q
    #[arg(long, value_name = "P/Q")]
    z: Rational,
    /// Number of construction levels to descend
    #[arg(long, value_name = "N")]
    depth: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Highest stage level to check
    #[arg(long, value_name = "N")]
    max_level: u32,
}

#[derive(Args)]
struct CoverArgs {
    /// Grid denominator D; centers are k/D for 0 < k < D
    #[arg(long, value_name = "D")]
    grid: u64,
    /// Stage level that must contain both points of every sphere
    #[arg(long, value_name = "L")]
    stage: u32,
    /// Witness-chain depth used to pick each sphere
    #[arg(long, value_name = "M")]
    depth: u32,
    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    /// Stage level to measure
    #[arg(long, value_name = "N")]
    level: u32,
}

fn emit<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run_cantor(args: &CantorArgs, caps: &Caps) -> Result<()> {
    if let Some(level) = args.level {
        emit(cantor::stage_with_caps(level, caps)?.set())
    } else {
        let level = args.partition.expect("clap enforces exactly one mode");
        emit(&cantor::partition_with_caps(level, caps)?)
    }
}

fn run_midpoints(args: &MidpointsArgs, caps: &Caps) -> Result<()> {
    let midpoints = stage_midpoints_with_caps(args.level, args.method.into(), caps)?;
    if args.emit_certificates {
        // A typed wrapper keeps the locked field order; a serde_json map
        // would alphabetize the keys.
        #[derive(serde::Serialize)]
        struct WithCertificates {
            midpoints: midset::IntervalSet,
            certificates: Vec<MidpointCertificate>,
        }
        emit(&WithCertificates {
            midpoints,
            certificates: build_certificates_with_caps(args.level, caps)?,
        })
    } else {
        emit(&midpoints)
    }
}

fn run_witness(args: &WitnessArgs, caps: &Caps) -> Result<()> {
    let chain = find_witness_with_caps(&args.z, args.depth, caps)?;
    if !chain.is_separated() {
        eprintln!(
            "note: X and Y still coincide at depth {}; no distinct pair is certified for {} at this depth",
            args.depth, args.z
        );
    }
    emit(&chain.pairs())
}

fn run_verify(args: &VerifyArgs, caps: &Caps) -> Result<()> {
    let report = verify_midpoint_claims_with_caps(args.max_level, caps)?;
    for check in &report.levels {
        println!(
            "level {:>2}: {}  stage_components={} pairs={} midpoint_components={} measure={} elapsed={:.2?}",
            check.level,
            if check.passed { "ok  " } else { "FAIL" },
            check.stage_components,
            check.pair_count,
            check.midpoint_components,
            check.measure,
            check.elapsed,
        );
    }
    if !report.all_passed {
        bail!("some stage midpoint set differs from the open unit interval");
    }
    println!(
        "all {} stage midpoint sets equal the open unit interval exactly",
        report.max_level
    );
    Ok(())
}

fn run_cover(args: &CoverArgs, caps: &Caps) -> Result<()> {
    let report = cover_report_with_caps(args.grid, args.stage, args.depth, caps)?;
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut writer = BufWriter::new(file);
            serde_json::to_writer_pretty(&mut writer, &report)?;
            writeln!(writer)?;
            writer.flush()?;
            eprintln!(
                "wrote {} sphere assignments to {}",
                report.sample_count,
                path.display()
            );
            Ok(())
        }
        None => emit(&report),
    }
}

fn run_measure(args: &MeasureArgs, caps: &Caps) -> Result<()> {
    let measured = cantor::stage_with_caps(args.level, caps)?.measure();
    let expected = Rational::new(2, 3).pow(args.level as i32);
    if measured != expected {
        bail!(
            "constructed stage {} has measure {measured}, expected {expected}",
            args.level
        );
    }
    println!("(2/3)^{} = {measured}", args.level);
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let caps = cli.cap.map(Caps::uniform).unwrap_or_default();
    match &cli.command {
        Command::Cantor(args) => run_cantor(args, &caps),
        Command::Midpoints(args) => run_midpoints(args, &caps),
        Command::Witness(args) => run_witness(args, &caps),
        Command::Verify(args) => run_verify(args, &caps),
        Command::Cover(args) => run_cover(args, &caps),
        Command::Measure(args) => run_measure(args, &caps),
    }
}
