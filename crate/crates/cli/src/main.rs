//! `kleinbary`: hyperbolic barycenters of ideal polygons from the command
//! line — computation, concurrence constructions with SVG output, moduli
//! verifications, coincidence checks, the pentagon scan, and the full
//! verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

mod doc;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doc::PolygonDocument;
use kleinbary::conic::{verify_quad_moduli, verify_triangle_moduli};
use kleinbary::constructions::{
    hexagon_constructions, pentagon_constructions, power_of_two_construction, quad_constructions,
    triangle_symmedian_construction, ConstructionReport,
};
use kleinbary::euclidean::{coincidence_check, harmonicity_residual, pentagon_conjecture_scan};
use kleinbary::polygon::{barycenter, hamiltonians, hessian_det_at_barycenter, IdealPolygon};
use kleinbary::suite;
use kleinbary::PlanePoint;
use serde::Serialize;
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "kleinbary",
    about = "Hyperbolic barycenters of ideal polygons in the Klein disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Polygon document path, or - for stdin.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Barycenter, Hamiltonians and Hessian determinant of a polygon.
    Barycenter(InputArg),
    /// Hamiltonian sums of a polygon (optionally over a subset of sides).
    Hamiltonians {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated side indices (default: all sides).
        #[arg(long)]
        sides: Option<String>,
    },
    /// Run a concurrence construction and write an SVG figure.
    Construct {
        #[command(flatten)]
        input: InputArg,
        /// Which construction family to run.
        #[arg(long)]
        style: Style,
        /// Output SVG path.
        #[arg(long)]
        out: Option<String>,
        /// Draw line labels in the SVG.
        #[arg(long)]
        labels: bool,
    },
    /// Verify the moduli-space descriptions by tracing circumscribed orbits.
    Moduli {
        #[command(subcommand)]
        kind: ModuliKind,
    },
    /// Check a polygon property.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Scan pentagons and classify barycenter/least-squares coincidence.
    Scan {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Run the verification suite; exits nonzero on any failure.
    Verify {
        /// "all", or a comma-separated list of criterion ids (1-11).
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Triangle,
    Quad,
    Pentagon,
    Hexagon,
    Pow2,
}

#[derive(Subcommand)]
enum ModuliKind {
    /// All triangles sharing a barycenter: Poncelet orbits on the moduli conic.
    Triangle {
        #[arg(long)]
        sx: f64,
        #[arg(long)]
        sy: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// All quadrilaterals sharing a barycenter: orbits on the polar pencil.
    Quad {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// Altitude-concurrence harmonicity test.
    Harmonic {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare the hyperbolic barycenter with the least-squares point.
    Coincidence {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load_polygon(input: &InputArg) -> Result<IdealPolygon, String> {
    PolygonDocument::parse(&read_input(&input.input)?)?.to_polygon()
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization")
    );
}

#[derive(Serialize)]
struct BarycenterOutput {
    #[serde(rename = "S")]
    s: [f64; 2],
    hamiltonians: kleinbary::polygon::Hamiltonians,
    #[serde(rename = "hessianDet")]
    hessian_det: Option<f64>,
    interior: bool,
}

fn cmd_barycenter(input: &InputArg) -> Result<(), String> {
    let poly = load_polygon(input)?;
    let s = barycenter(&poly).map_err(|e| e.to_string())?;
    let out = BarycenterOutput {
        s: [s.x, s.y],
        hamiltonians: hamiltonians(&poly, None),
        hessian_det: hessian_det_at_barycenter(&poly).ok(),
        interior: s.is_hyperbolic(),
    };
    print_json(&out);
    Ok(())
}

fn cmd_hamiltonians(input: &InputArg, sides: &Option<String>) -> Result<(), String> {
    let poly = load_polygon(input)?;
    let subset = match sides {
        None => None,
        Some(text) => {
            let indices: Vec<usize> = text
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, String>>()?;
            Some(kleinbary::SideSet::new(indices, poly.len()).map_err(|e| e.to_string())?)
        }
    };
    print_json(&hamiltonians(&poly, subset.as_ref()));
    Ok(())
}

fn run_style(poly: &IdealPolygon, style: Style) -> Result<Vec<ConstructionReport>, String> {
    let reports = match style {
        Style::Triangle => vec![triangle_symmedian_construction(poly).map_err(|e| e.to_string())?],
        Style::Quad => quad_constructions(poly).map_err(|e| e.to_string())?,
        Style::Pentagon => pentagon_constructions(poly).map_err(|e| e.to_string())?,
        Style::Hexagon => hexagon_constructions(poly).map_err(|e| e.to_string())?,
        Style::Pow2 => vec![power_of_two_construction(poly).map_err(|e| e.to_string())?],
    };
    Ok(reports)
}

fn cmd_construct(
    input: &InputArg,
    style: Style,
    out: &Option<String>,
    labels: bool,
) -> Result<(), String> {
    let poly = load_polygon(input)?;
    let reports = run_style(&poly, style)?;
    if let Some(path) = out {
        let figure = svg::render(&poly, &reports, labels);
        std::fs::write(path, figure).map_err(|e| format!("writing {path}: {e}"))?;
    }
    print_json(&reports);
    Ok(())
}

fn cmd_moduli(kind: &ModuliKind) -> Result<(), String> {
    match kind {
        ModuliKind::Triangle {
            sx,
            sy,
            samples,
            seed,
        } => {
            let report = verify_triangle_moduli(&PlanePoint::new(*sx, *sy), *samples, *seed)
                .map_err(|e| e.to_string())?;
            print_json(&report);
        }
        ModuliKind::Quad {
            input,
            samples,
            seed,
        } => {
            let poly = load_polygon(input)?;
            let report = verify_quad_moduli(&poly, *samples, *seed).map_err(|e| e.to_string())?;
            print_json(&report);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct HarmonicOutput {
    harmonic: bool,
    residual: f64,
    tol: f64,
}

fn cmd_check(kind: &CheckKind) -> Result<(), String> {
    match kind {
        CheckKind::Harmonic { input, tol } => {
            let poly = load_polygon(input)?;
            let residual = harmonicity_residual(&poly).map_err(|e| e.to_string())?;
            print_json(&HarmonicOutput {
                harmonic: residual < *tol,
                residual,
                tol: *tol,
            });
        }
        CheckKind::Coincidence { input, tol } => {
            let poly = load_polygon(input)?;
            let report = coincidence_check(&poly, *tol).map_err(|e| e.to_string())?;
            print_json(&report);
        }
    }
    Ok(())
}

fn cmd_scan(samples: usize, seed: u64, tol: f64) -> Result<(), String> {
    let report = pentagon_conjecture_scan(samples, seed, tol);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for record in &report.records {
        let line = serde_json::to_string(record).expect("record serialization");
        writeln!(lock, "{line}").map_err(|e| e.to_string())?;
    }
    eprintln!(
        "{}",
        serde_json::to_string(&report.tally).expect("tally serialization")
    );
    Ok(())
}

fn cmd_verify(suite_arg: &str, seed: u64) -> Result<bool, String> {
    let outcomes = if suite_arg == "all" {
        suite::all_criteria(seed)
    } else {
        let ids: Vec<usize> = suite_arg
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
            .collect::<Result<_, String>>()?;
        let mut out = Vec::new();
        for id in ids {
            out.push(
                suite::run_criterion(id, seed)
                    .ok_or_else(|| format!("unknown criterion id {id} (valid: 1-11)"))?,
            );
        }
        out
    };
    for outcome in &outcomes {
        eprintln!(
            "criterion {:2} {}: {} — {}",
            outcome.id,
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    print_json(&outcomes);
    Ok(outcomes.iter().all(|o| o.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool, String> = match &cli.command {
        Command::Barycenter(input) => cmd_barycenter(input).map(|()| true),
        Command::Hamiltonians { input, sides } => cmd_hamiltonians(input, sides).map(|()| true),
        Command::Construct {
            input,
            style,
            out,
            labels,
        } => cmd_construct(input, *style, out, *labels).map(|()| true),
        Command::Moduli { kind } => cmd_moduli(kind).map(|()| true),
        Command::Check { kind } => cmd_check(kind).map(|()| true),
        Command::Scan { samples, seed, tol } => cmd_scan(*samples, *seed, *tol).map(|()| true),
        Command::Verify { suite, seed } => cmd_verify(suite, *seed),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
