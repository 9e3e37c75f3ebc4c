//! Command implementations for the `pchc` binary.
//!
//! Every command is deterministic given its inputs and flags. Exit codes:
//! 0 success, 1 property failure (well-formed input, negative verdict),
//! 2 structural or parse failure.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use pchc::config::validate_configuration;
use pchc::diagram::{build_simple_diagram, emit_diagram, DiagramError, DiagramFormat};
use pchc::dynamics::{enumerate_sparkling, DynamicsError, SaddleNodeMapFamily};
use pchc::equiv::{characteristic_equivalent, combinatorially_equivalent};
use pchc::generate::{generate, GenError, GenSpec};
use pchc::io::{
    data_to_document, input_to_json, parse_input, parse_skeleton, skeleton_to_json, IoError,
};
use pchc::marked::{non_synchronized, validate_marked};
use pchc::rational::format_rational;
use pchc::realization::{check_realizable, realize, RealizeError};
use pchc::skeleton::{
    extract_characteristic_data, extract_configuration, skeleton_to_dot, validate_skeleton,
};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_STRUCTURAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pchc",
    about = "Classification toolkit for sphere vector-field families with a parabolic cycle \
             and a saddle-node homoclinic loop",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a characteristic-data document condition by condition.
    Validate(ValidateArgs),
    /// Build the combinatorial phase portrait realizing a document.
    Realize(RealizeArgs),
    /// Read the characteristic data back out of a skeleton.
    Extract(ExtractArgs),
    /// Decide equivalence of two characteristic-data documents.
    Equiv(EquivArgs),
    /// Enumerate sparkling saddle-connection parameter values.
    Sparkle(SparkleArgs),
    /// Assemble and emit the simple bifurcation diagram.
    Diagram(DiagramArgs),
    /// Generate a random realizable document, deterministically per seed.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    pub input: PathBuf,
    /// Write the skeleton JSON here (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a DOT rendering.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    pub skeleton: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Args)]
pub struct SparkleArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long = "m-from", default_value_t = 30)]
    pub m_from: i64,
    #[arg(long = "m-to", default_value_t = 40)]
    pub m_to: i64,
    /// Write CSV here (stdout when omitted).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub periods: usize,
    /// dot, json, or svg.
    #[arg(long, default_value = "dot")]
    pub format: String,
    /// Decorate vertices with numeric roots of the model family.
    #[arg(long)]
    pub numeric: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub config: String,
    /// Point counts: plus circle, minus circle, far interval, annulus
    /// interval.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    #[arg(long = "m-count", default_value_t = 2)]
    pub m_count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Requested two-element class counts (random when omitted).
    #[arg(long)]
    pub pairs_l1: Option<usize>,
    #[arg(long)]
    pub pairs_l2: Option<usize>,
    #[arg(long)]
    pub pairs_aplus: Option<usize>,
    #[arg(long)]
    pub pairs_aminus: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Run a parsed command, writing human output to `out`. Returns the exit
/// code.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> i32 {
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Realize(a) => cmd_realize(&a, out),
        Command::Extract(a) => cmd_extract(&a, out),
        Command::Equiv(a) => cmd_equiv(&a, out),
        Command::Sparkle(a) => cmd_sparkle(&a, out),
        Command::Diagram(a) => cmd_diagram(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e:#}");
            EXIT_STRUCTURAL
        }
    }
}

fn read_file(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output<W: Write>(
    target: &Option<PathBuf>,
    content: &str,
    out: &mut W,
) -> anyhow::Result<()> {
    match target {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(content.as_bytes())?,
    }
    Ok(())
}

fn io_exit(e: &IoError) -> i32 {
    let _ = e;
    EXIT_STRUCTURAL
}

fn cmd_validate<W: Write>(args: &ValidateArgs, out: &mut W) -> anyhow::Result<i32> {
    let json = read_file(&args.input)?;
    // Lenient pass: report the configuration verdict and marking verdicts
    // individually instead of failing at the first construction error.
    let doc: pchc::io::InputDocument = match serde_json::from_str(&json) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "parse error at line {}, column {}: {e}", e.line(), e.column())?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let mut failed = false;

    match validate_configuration(&doc.config) {
        Ok(_) => writeln!(out, "configuration {:12} ok", doc.config)?,
        Err(e) => {
            writeln!(out, "configuration {:12} FAIL: inadmissible configuration ({e})", doc.config)?;
            failed = true;
        }
    }

    let data = match parse_input(&json) {
        Ok(d) => d,
        Err(e @ IoError::Syntax { .. }) | Err(e @ IoError::SchemaVersion { .. }) => {
            writeln!(out, "{e}")?;
            return Ok(io_exit(&e));
        }
        Err(e) => {
            // Interleavings and sign violations are negative verdicts on a
            // well-formed document.
            writeln!(out, "structure                  FAIL: {e}")?;
            return Ok(EXIT_PROPERTY);
        }
    };

    for (name, ok) in [
        ("L1 marking", validate_marked(&data.l1).0),
        ("L2 marking", validate_marked(&data.l2).0),
        ("A+ marking", validate_marked(&data.a_plus).0),
        ("A- marking", validate_marked(&data.a_minus).0),
    ] {
        writeln!(out, "{name:26} {}", if ok { "ok" } else { "FAIL: classes interleave" })?;
        failed |= !ok;
    }

    let sync_ok = non_synchronized(&data.a_plus, &data.a_minus);
    writeln!(
        out,
        "Malta-Palis condition      {}",
        if sync_ok { "ok" } else { "FAIL: Malta-Palis condition fails (synchronized circle sets)" }
    )?;
    failed |= !sync_ok;

    Ok(if failed { EXIT_PROPERTY } else { EXIT_OK })
}

fn cmd_realize<W: Write>(args: &RealizeArgs, out: &mut W) -> anyhow::Result<i32> {
    let json = read_file(&args.input)?;
    let data = match parse_input(&json) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(io_exit(&e));
        }
    };
    let report = check_realizable(&data);
    for warning in &report.warnings {
        writeln!(out, "warning: {warning}")?;
    }
    let graph = match realize(&data) {
        Ok(g) => g,
        Err(RealizeError::NotRealizable(report)) => {
            writeln!(out, "not realizable:")?;
            for c in &report.failed {
                writeln!(out, "  {c}")?;
            }
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let (ok, violations) = validate_skeleton(&graph);
    if !ok {
        writeln!(out, "internal error: realized skeleton failed validation: {violations:?}")?;
        return Ok(EXIT_STRUCTURAL);
    }
    write_output(&args.out, &skeleton_to_json(&graph), out)?;
    if let Some(dot) = &args.dot {
        std::fs::write(dot, skeleton_to_dot(&graph))
            .with_context(|| format!("writing {}", dot.display()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_extract<W: Write>(args: &ExtractArgs, out: &mut W) -> anyhow::Result<i32> {
    let json = read_file(&args.skeleton)?;
    let graph = match parse_skeleton(&json) {
        Ok(g) => g,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(io_exit(&e));
        }
    };
    let (ok, violations) = validate_skeleton(&graph);
    if !ok {
        writeln!(out, "invalid skeleton:")?;
        for v in violations {
            writeln!(out, "  {v}")?;
        }
        return Ok(EXIT_STRUCTURAL);
    }
    let config = match extract_configuration(&graph) {
        Ok(c) => c,
        Err(e) => {
            writeln!(out, "extraction failed: {e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let data = match extract_characteristic_data(&graph) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "extraction failed: {e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    writeln!(out, "configuration: {config}")?;
    write_output(&args.out, &input_to_json(&data_to_document(&data)), out)?;
    Ok(EXIT_OK)
}

fn cmd_equiv<W: Write>(args: &EquivArgs, out: &mut W) -> anyhow::Result<i32> {
    let first = match parse_input(&read_file(&args.first)?) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "{}: {e}", args.first.display())?;
            return Ok(io_exit(&e));
        }
    };
    let second = match parse_input(&read_file(&args.second)?) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "{}: {e}", args.second.display())?;
            return Ok(io_exit(&e));
        }
    };
    match characteristic_equivalent(&first, &second) {
        Some(witness) => {
            writeln!(out, "equivalent")?;
            writeln!(out, "  alpha: {}", format_rational(&witness.circle.alpha))?;
            writeln!(
                out,
                "  circle index rotations: plus {} minus {}",
                witness.circle.rot_plus, witness.circle.rot_minus
            )?;
            writeln!(
                out,
                "  interval class maps: L1 {:?} L2 {:?}",
                witness.l1.class_map, witness.l2.class_map
            )?;
            Ok(EXIT_OK)
        }
        None => {
            let comb = combinatorially_equivalent(&first, &second);
            writeln!(out, "inequivalent")?;
            writeln!(
                out,
                "  combinatorial layer (cyclic orders, markings, liaison): {}",
                if comb { "equivalent" } else { "inequivalent" }
            )?;
            Ok(EXIT_PROPERTY)
        }
    }
}

fn cmd_sparkle<W: Write>(args: &SparkleArgs, out: &mut W) -> anyhow::Result<i32> {
    let data = match parse_input(&read_file(&args.input)?) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(io_exit(&e));
        }
    };
    let family = SaddleNodeMapFamily::model();
    let events = match enumerate_sparkling(&family, &data, args.lambda, args.m_from, args.m_to) {
        Ok(ev) => ev,
        Err(e @ DynamicsError::Synchronized) => {
            writeln!(out, "Malta-Palis condition fails: {e}")?;
            return Ok(EXIT_PROPERTY);
        }
        Err(e @ DynamicsError::MTooSmall { .. }) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_PROPERTY);
        }
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let mut csv = String::from("epsilon,i,j,m,lambda\n");
    for e in &events {
        csv.push_str(&format!("{:.12e},{},{},{},{}\n", e.epsilon, e.i, e.j, e.m, args.lambda));
    }
    write_output(&args.csv, &csv, out)?;
    Ok(EXIT_OK)
}

fn cmd_diagram<W: Write>(args: &DiagramArgs, out: &mut W) -> anyhow::Result<i32> {
    let data = match parse_input(&read_file(&args.input)?) {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(io_exit(&e));
        }
    };
    let format: DiagramFormat = match args.format.parse() {
        Ok(f) => f,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let family = SaddleNodeMapFamily::model();
    let fam_ref = if args.numeric { Some(&family) } else { None };
    let diagram = match build_simple_diagram(&data, args.periods, fam_ref) {
        Ok(d) => d,
        Err(e @ DiagramError::Synchronized) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_PROPERTY);
        }
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let bytes = emit_diagram(&diagram, format).expect("emission of a built diagram");
    write_output(&args.out, &String::from_utf8(bytes).expect("textual formats"), out)?;
    Ok(EXIT_OK)
}

fn cmd_gen<W: Write>(args: &GenArgs, out: &mut W) -> anyhow::Result<i32> {
    let config = match validate_configuration(&args.config) {
        Ok(c) => c,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    let mut spec = GenSpec::new(config, args.k, args.n, args.l, args.m_count, args.seed);
    spec.pairs_l1 = args.pairs_l1;
    spec.pairs_l2 = args.pairs_l2;
    spec.pairs_aplus = args.pairs_aplus;
    spec.pairs_aminus = args.pairs_aminus;
    let data = match generate(&spec) {
        Ok(d) => d,
        Err(e @ GenError::Infeasible(_)) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_STRUCTURAL);
        }
    };
    debug_assert!(check_realizable(&data).realizable);
    write_output(&args.out, &input_to_json(&data_to_document(&data)), out)?;
    Ok(EXIT_OK)
}
