//! quiverkit command line: enumerate orbits and diagrams, compute and
//! verify orbit classes, extract expansion coefficients, list k-move
//! closures, and run the acceptance selftest.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quiverkit::lace::{all_orbits, enumerate_kms, enumerate_minimal, LaceDiagram, RankConditions};
use quiverkit::quiver::{component_polynomial, k_class, quiver_coefficients, verify_thom};
use quiverkit::report;
use quiverkit::{Error, Poly};

#[derive(Parser)]
#[command(
    name = "quiverkit",
    about = "Equivariant classes of type-A quiver orbits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read the JSON payload from a file.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Take the JSON payload directly from the command line.
    #[arg(long, global = true, value_name = "JSON")]
    inline: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Refuse symbolic expansion beyond this codimension.
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,
    /// Keep the deformation parameter or set it to zero.
    #[arg(long, global = true, value_enum, default_value_t = BetaMode::Keep)]
    beta: BetaMode,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// List every realizable orbit of the given dimension vector.
    Orbits,
    /// List the minimal diagrams of an orbit.
    Diagrams,
    /// List the k-move closure of an orbit.
    Kms,
    /// Compute the cohomology class of an orbit closure.
    Tp,
    /// Expand the class into non-negative coefficients.
    Coeffs,
    /// Verify the class against the restriction equations.
    Verify,
    /// Compute the K-theoretic class of an orbit closure.
    Kclass,
    /// Run the acceptance suite and report a summary.
    Selftest,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BetaMode {
    Keep,
    Zero,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) => 2,
        Error::Unrealizable(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn configure_threads() {
    if let Ok(raw) = std::env::var("QUIVERKIT_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn load_payload(cli: &Cli) -> Result<serde_json::Value, Error> {
    let text = match (&cli.inline, &cli.input) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either --inline or --input, not both".to_string(),
            ))
        }
        (Some(s), None) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => {
            return Err(Error::Parse(
                "this command needs --inline JSON or --input PATH".to_string(),
            ))
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn validate_dims(dims: &[usize]) -> Result<(), Error> {
    if dims.len() < 2 || dims.iter().any(|&e| e == 0) {
        return Err(Error::Parse(
            "dims must list at least two positive column sizes".to_string(),
        ));
    }
    Ok(())
}

fn parse_dims(value: &serde_json::Value) -> Result<Vec<usize>, Error> {
    let array = match value {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(map) => match map.get("dims") {
            Some(serde_json::Value::Array(items)) => items,
            _ => return Err(Error::Parse("expected a dims array".to_string())),
        },
        _ => return Err(Error::Parse("expected a dims array".to_string())),
    };
    let dims: Vec<usize> = array
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| Error::Parse("dims entries must be non-negative integers".to_string()))
        })
        .collect::<Result<_, _>>()?;
    validate_dims(&dims)?;
    Ok(dims)
}

/// Orbit input: a triangular rank array, or a lace diagram converted
/// through its rank conditions.
fn parse_orbit(value: &serde_json::Value) -> Result<RankConditions, Error> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object with ranks or connections".to_string()))?;
    let r = if map.contains_key("connections") {
        LaceDiagram::from_json(value)?.rank_conditions()
    } else if map.contains_key("ranks") {
        RankConditions::from_json(value)?
    } else {
        return Err(Error::Parse(
            "expected an object with ranks or connections".to_string(),
        ));
    };
    validate_dims(r.dims())?;
    Ok(r)
}

fn check_degree_cap(cli: &Cli, r: &RankConditions) -> Result<(), Error> {
    if let Some(cap) = cli.max_degree {
        let d = r.codim()?;
        if d > cap {
            return Err(Error::Parse(format!(
                "codimension {d} exceeds --max-degree {cap}"
            )));
        }
    }
    Ok(())
}

fn orbit_text(r: &RankConditions) -> String {
    let n = r.dims().len() - 1;
    let mut parts = vec![format!("dims {:?}", r.dims())];
    for i in 0..n {
        for j in (i + 1)..=n {
            parts.push(format!("r({i},{j})={}", r.rank(i as i64, j as i64)));
        }
    }
    if let Ok(d) = r.codim() {
        parts.push(format!("codim {d}"));
    }
    parts.join(" ")
}

fn diagram_text(d: &LaceDiagram) -> String {
    format!(
        "dims {:?} connections {:?} length {}",
        d.dims(),
        d.connections(),
        d.diagram_length()
    )
}

fn render_poly(cli: &Cli, p: &Poly) -> String {
    let p = match cli.beta {
        BetaMode::Keep => p.clone(),
        BetaMode::Zero => p.beta_zero(),
    };
    match cli.format {
        OutputFormat::Json => p.to_json().to_string(),
        OutputFormat::Text => p.to_string(),
    }
}

fn render_diagrams(cli: &Cli, diagrams: &[LaceDiagram]) -> String {
    match cli.format {
        OutputFormat::Json => {
            serde_json::Value::Array(diagrams.iter().map(LaceDiagram::to_json).collect())
                .to_string()
        }
        OutputFormat::Text => diagrams
            .iter()
            .map(diagram_text)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    Ok(match &cli.command {
        Command::Orbits => {
            let dims = parse_dims(&load_payload(cli)?)?;
            let orbits = all_orbits(&dims);
            match cli.format {
                OutputFormat::Json => {
                    serde_json::Value::Array(orbits.iter().map(RankConditions::to_json).collect())
                        .to_string()
                }
                OutputFormat::Text => {
                    orbits.iter().map(orbit_text).collect::<Vec<_>>().join("\n")
                }
            }
        }
        Command::Diagrams => {
            let r = parse_orbit(&load_payload(cli)?)?;
            render_diagrams(cli, &enumerate_minimal(&r)?)
        }
        Command::Kms => {
            let r = parse_orbit(&load_payload(cli)?)?;
            render_diagrams(cli, &enumerate_kms(&r)?)
        }
        Command::Tp => {
            let r = parse_orbit(&load_payload(cli)?)?;
            check_degree_cap(cli, &r)?;
            render_poly(cli, &component_polynomial(&r)?)
        }
        Command::Coeffs => {
            let r = parse_orbit(&load_payload(cli)?)?;
            check_degree_cap(cli, &r)?;
            let expansion = quiver_coefficients(&r)?;
            match cli.format {
                OutputFormat::Json => expansion.to_json().to_string(),
                OutputFormat::Text => {
                    let mut lines = vec![format!(
                        "dims {:?} codim {}",
                        expansion.dims, expansion.codim
                    )];
                    for (lambda, c) in &expansion.coeffs {
                        let seq: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
                        lines.push(format!("c={} lambda={}", c, seq.join(",")));
                    }
                    lines.join("\n")
                }
            }
        }
        Command::Verify => {
            let r = parse_orbit(&load_payload(cli)?)?;
            check_degree_cap(cli, &r)?;
            let report = verify_thom(&component_polynomial(&r)?, &r)?;
            match cli.format {
                OutputFormat::Json => report.to_json().to_string(),
                OutputFormat::Text => {
                    let mut lines =
                        vec![format!("status {}", if report.pass { "pass" } else { "fail" })];
                    for check in &report.checks {
                        lines.push(format!(
                            "condition {} orbit {} {}",
                            check.condition,
                            orbit_text(&check.orbit),
                            if check.pass { "pass" } else { "fail" }
                        ));
                    }
                    lines.join("\n")
                }
            }
        }
        Command::Kclass => {
            let r = parse_orbit(&load_payload(cli)?)?;
            check_degree_cap(cli, &r)?;
            render_poly(cli, &k_class(&r)?)
        }
        Command::Selftest => unreachable!("handled before run"),
    })
}

/// Timings go to stderr; stdout carries only the stable verdict lines.
fn run_selftest(cli: &Cli) -> Result<(String, bool), Error> {
    let results = report::run_all();
    for r in &results {
        eprintln!("{}", r.summary_line());
    }
    let all_pass = results.iter().all(|r| r.pass);
    let stdout = match cli.format {
        OutputFormat::Json => {
            let criteria: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "index": r.index,
                        "name": r.name,
                        "status": if r.pass { "pass" } else { "fail" },
                    })
                })
                .collect();
            serde_json::json!({
                "status": if all_pass { "pass" } else { "fail" },
                "criteria": criteria,
            })
            .to_string()
        }
        OutputFormat::Text => {
            let mut lines: Vec<String> = results
                .iter()
                .map(|r| {
                    format!("criterion {}: {}", r.index, if r.pass { "PASS" } else { "FAIL" })
                })
                .collect();
            lines.push(format!(
                "selftest: {}/{} criteria passed",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            ));
            lines.join("\n")
        }
    };
    Ok((stdout, all_pass))
}

fn emit(cli: &Cli, body: String) -> Result<(), Error> {
    let mut text = body;
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    if matches!(cli.command, Command::Selftest) {
        return match run_selftest(&cli) {
            Ok((stdout, all_pass)) => match emit(&cli, stdout) {
                Ok(()) => {
                    if all_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            },
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        };
    }
    match run(&cli).and_then(|body| emit(&cli, body)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
