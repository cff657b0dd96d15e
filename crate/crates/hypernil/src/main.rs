//! Command-line front end: loads problem files, dispatches computations,
//! prints human summaries to stdout and writes machine reports via --out.
//!
//! Exit codes: 0 success, 2 parse/validation failure, 3 computation error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hypernil::albanese::{albanese, h_albanese, toric_tower, toric_tower_h, AlbaneseMode};
use hypernil::error::Error;
use hypernil::problem::{ProblemFile, UncheckedProblem};
use hypernil::structures::{
    check_abelian, check_abelian_hypercomplex, check_almost_complex, check_integrable,
    check_quaternionic, SpherePoint,
};
use hypernil::twistor::{exceptional_witness, grid, scan, ScanReport};
use hypernil::Rational;

#[derive(Parser)]
#[command(
    name = "hypernil",
    version,
    about = "Exact computations for nilpotent Lie algebras with (hyper)complex structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a problem file and report witnesses
    Validate(CommonArgs),
    /// Lower and upper central series
    Series(CommonArgs),
    /// Integrability, abelianness and quaternionic checks
    ComplexCheck(CommonArgs),
    /// Albanese torus data for a complex structure
    Albanese(CommonArgs),
    /// H-Albanese torus data for the hypercomplex triple
    #[command(name = "h-albanese")]
    HAlbanese(CommonArgs),
    /// Iterated principal toric tower by successive centers
    Tower(CommonArgs),
    /// Twistor-sphere genericity scan over a rational grid
    Scan(ScanArgs),
    /// Exceptionality certificate for one sphere point
    Witness(WitnessArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Problem file (JSON)
    path: PathBuf,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit dimensions only, omitting bases and matrices
    #[arg(long)]
    summary: bool,
    /// Select a structure by label (e.g. I, J, K)
    #[arg(long)]
    structure: Option<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid density n: samples (i/n, j/n) for -n <= i, j <= n plus the axes
    #[arg(long, default_value_t = 3)]
    grid: i64,
    /// Also write (u, v, a, b, c, kernel_dim, equal) rows next to --out
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sphere point: "u,v" (rational parametrization) or "a,b,c" (direct)
    #[arg(long)]
    point: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Validation(_)
        | Error::MissingStructure(_)
        | Error::BadMinimalPolynomial
        | Error::ReducibleMinimalPolynomial(_)
        | Error::NotOnSphere { .. } => 2,
        _ => 3,
    }
}

struct LoadedInput {
    path: PathBuf,
    sha256: String,
    text: String,
}

fn read_input(path: &Path) -> Result<LoadedInput, Error> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok(LoadedInput {
        path: path.to_path_buf(),
        sha256,
        text,
    })
}

fn envelope(input: &LoadedInput, command: &str, problem_name: &str, report: Value) -> Value {
    json!({
        "command": command,
        "input": {
            "path": input.path.display().to_string(),
            "sha256": input.sha256,
        },
        "problem": problem_name,
        "report": report,
    })
}

fn write_report(out: Option<&Path>, value: &Value) -> Result<(), Error> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(value).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Series(args) => cmd_series(args),
        Command::ComplexCheck(args) => cmd_complex_check(args),
        Command::Albanese(args) => cmd_albanese(args),
        Command::HAlbanese(args) => cmd_h_albanese(args),
        Command::Tower(args) => cmd_tower(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Witness(args) => cmd_witness(args),
    }
}

fn cmd_validate(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let unchecked = UncheckedProblem::from_json_str(&input.text)?;
    let name = unchecked.name.clone();
    let report = unchecked.validation_report();
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        let gate = if check.gating { "" } else { " (informational)" };
        match &check.witness {
            Some(w) if !check.passed => {
                println!("{status}  {}{gate}: {w}", check.axiom)
            }
            _ => println!("{status}  {}{gate}", check.axiom),
        }
    }
    println!("validation: {}", if report.ok { "ok" } else { "failed" });
    write_report(
        args.out.as_deref(),
        &envelope(&input, "validate", &name, to_value(&report)),
    )?;
    if report.ok {
        Ok(())
    } else {
        Err(Error::Validation(
            "one or more axioms failed; see report".to_string(),
        ))
    }
}

fn cmd_series(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let lower = problem.algebra.lower_central_series();
    let upper = problem.algebra.upper_central_series();
    println!(
        "lower central series dims: {:?} ({} steps)",
        lower.term_dims(),
        lower.steps
    );
    println!(
        "upper central series dims: {:?} ({} steps)",
        upper.term_dims(),
        upper.steps
    );
    let series_value = |s: &hypernil::SeriesReport| {
        if args.summary {
            json!({"kind": s.kind, "steps": s.steps, "term_dims": s.term_dims()})
        } else {
            to_value(s)
        }
    };
    let report = json!({
        "lower": series_value(&lower),
        "upper": series_value(&upper),
        "steps": lower.steps,
    });
    write_report(
        args.out.as_deref(),
        &envelope(&input, "series", &problem.name, report),
    )
}

fn cmd_complex_check(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let g = &problem.algebra;
    let mut report = serde_json::Map::new();
    let mut structures = Vec::new();
    if let Some(s) = &problem.complex {
        structures.push(s);
    }
    if let Some(h) = &problem.hypercomplex {
        structures.extend(h.structures());
    }
    if structures.is_empty() {
        return Err(Error::MissingStructure(
            "complex-check needs a structure".into(),
        ));
    }
    let mut per_structure = Vec::new();
    for s in structures {
        let almost = check_almost_complex(s);
        let integrable = almost && check_integrable(g, s)?;
        let abelian = almost && check_abelian(g, s)?;
        println!(
            "{}: almost_complex={almost} integrable={integrable} abelian={abelian}",
            s.label()
        );
        per_structure.push(json!({
            "label": s.label(),
            "almost_complex": almost,
            "integrable": integrable,
            "abelian": abelian,
        }));
    }
    report.insert("structures".into(), Value::Array(per_structure));
    if let Some(h) = &problem.hypercomplex {
        let quaternionic = check_quaternionic(h);
        let abelian_h = quaternionic && check_abelian_hypercomplex(g, h)?;
        println!("triple: quaternionic={quaternionic} abelian_hypercomplex={abelian_h}");
        report.insert("quaternionic".into(), Value::Bool(quaternionic));
        report.insert("abelian_hypercomplex".into(), Value::Bool(abelian_h));
    }
    write_report(
        args.out.as_deref(),
        &envelope(
            &input,
            "complex-check",
            &problem.name,
            Value::Object(report),
        ),
    )
}

fn albanese_value(report: &hypernil::albanese::AlbaneseReport, summary: bool) -> Value {
    let dim_key = match report.mode {
        AlbaneseMode::L => "torus_complex_dim",
        AlbaneseMode::H => "torus_quaternionic_dim",
    };
    let mut v = json!({
        "mode": report.mode,
        "kernel_dim": report.kernel.dim(),
        "torus_real_dim": report.torus_real_dim,
        dim_key: report.torus_dim,
        "complement": report.complement,
        "closure_iterations": report.closure_iterations,
    });
    if !summary {
        v["kernel"] = to_value(&report.kernel);
        v["induced"] = to_value(&report.induced);
    }
    v
}

fn cmd_albanese(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let l = problem.complex_for(args.structure.as_deref())?;
    let report = albanese(&problem.algebra, l)?;
    println!(
        "albanese: kernel dim {}, torus complex dim {}",
        report.kernel.dim(),
        report.torus_dim
    );
    write_report(
        args.out.as_deref(),
        &envelope(
            &input,
            "albanese",
            &problem.name,
            albanese_value(&report, args.summary),
        ),
    )
}

fn cmd_h_albanese(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let h = problem.triple()?;
    let report = h_albanese(&problem.algebra, h)?;
    println!(
        "h-albanese: kernel dim {}, torus quaternionic dim {}",
        report.kernel.dim(),
        report.torus_dim
    );
    write_report(
        args.out.as_deref(),
        &envelope(
            &input,
            "h-albanese",
            &problem.name,
            albanese_value(&report, args.summary),
        ),
    )
}

fn cmd_tower(args: CommonArgs) -> Result<(), Error> {
    let input = read_input(&args.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let report = match (&problem.hypercomplex, args.structure.as_deref()) {
        (Some(h), None) => toric_tower_h(&problem.algebra, h)?,
        _ => {
            let l = problem.complex_for(args.structure.as_deref())?;
            toric_tower(&problem.algebra, l)?
        }
    };
    println!(
        "tower: {} levels {:?}, structures preserved: {}",
        report.levels.len(),
        report.level_dims(),
        report.all_levels_preserved()
    );
    write_report(
        args.out.as_deref(),
        &envelope(&input, "tower", &problem.name, to_value(&report)),
    )
}

fn scan_value(report: &ScanReport, summary: bool) -> Value {
    if summary {
        json!({
            "h_closure_dim": report.h_closure_dim,
            "samples": report.samples.len(),
            "exceptional": report.exceptional.len(),
        })
    } else {
        to_value(report)
    }
}

fn scan_csv(report: &ScanReport) -> String {
    let mut out = String::from("u,v,a,b,c,kernel_dim,equal\n");
    for s in &report.samples {
        let (u, v) = match &s.grid_point.param {
            Some((u, v)) => (u.to_string(), v.to_string()),
            None => (String::new(), String::new()),
        };
        let p = &s.grid_point.point;
        out.push_str(&format!(
            "{u},{v},{},{},{},{},{}\n",
            p.a, p.b, p.c, s.kernel_dim, s.kernel_equals_h_closure
        ));
    }
    out
}

fn cmd_scan(args: ScanArgs) -> Result<(), Error> {
    let input = read_input(&args.common.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let h = problem.triple()?;
    if args.grid < 1 {
        return Err(Error::Parse("--grid must be at least 1".into()));
    }
    if args.csv && args.common.out.is_none() {
        return Err(Error::Parse("--csv requires --out".into()));
    }
    let points = grid(args.grid);
    let report = scan(&problem.algebra, h, None, &points)?;
    println!(
        "scan: {} samples, H-closure dim {}, {} exceptional",
        report.samples.len(),
        report.h_closure_dim,
        report.exceptional.len()
    );
    write_report(
        args.common.out.as_deref(),
        &envelope(
            &input,
            "scan",
            &problem.name,
            scan_value(&report, args.common.summary),
        ),
    )?;
    if args.csv {
        let out = args.common.out.as_ref().expect("checked above");
        let csv_path = out.with_extension("csv");
        std::fs::write(&csv_path, scan_csv(&report))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", csv_path.display())))?;
    }
    Ok(())
}

fn parse_point(arg: &str) -> Result<SpherePoint, Error> {
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [u, v] => {
            let u: Rational = u.parse()?;
            let v: Rational = v.parse()?;
            Ok(hypernil::twistor::sphere_point(&u, &v))
        }
        [a, b, c] => SpherePoint::new(a.parse()?, b.parse()?, c.parse()?),
        _ => Err(Error::Parse(format!(
            "--point expects 'u,v' or 'a,b,c', got '{arg}'"
        ))),
    }
}

fn cmd_witness(args: WitnessArgs) -> Result<(), Error> {
    let input = read_input(&args.common.path)?;
    let problem = ProblemFile::from_json_str(&input.text)?;
    let h = problem.triple()?;
    let point = parse_point(&args.point)?;
    let cert = exceptional_witness(&problem.algebra, h, None, &point)?;
    let verified = cert.verify(h)?;
    println!(
        "witness at {}: closure dim {} < H-closure dim {}, operator {} escapes; verified: {}",
        cert.point,
        cert.l_closure.dim(),
        cert.h_closure_dim,
        cert.operator_label,
        verified
    );
    let mut value = to_value(&cert);
    value["verified"] = Value::Bool(verified);
    write_report(
        args.common.out.as_deref(),
        &envelope(&input, "witness", &problem.name, value),
    )
}
