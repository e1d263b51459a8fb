//! `wulff`: build Wulff shapes, dualize them, check self-duality, render SVG.
//!
//! Exit codes: 0 success (or self-dual), 1 negative verdict, 2 input error.

mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use wulff_core::catalog::{reuleaux_support, CatalogSpec, FAMILIES};
use wulff_core::record::check;
use wulff_core::wulff::{build_wulff, dual_wulff, hausdorff_planar, SupportPreset, DEFAULT_GRID};
use wulff_core::{GeometryError, PlanePoint, RecordError, ShapeRecord, SupportFunction};

use svg::Style;

const DEFAULT_TOL: f64 = 5e-3;

#[derive(Debug, Parser)]
#[command(
    name = "wulff",
    version,
    about = "Wulff shapes, their duals, and self-duality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a Wulff shape from a support function.
    Build {
        /// Support record file, or a preset: disc, reuleaux[:WIDTH], gauge:M[:A].
        #[arg(long)]
        gamma: String,
        /// Number of sampled directions for presets.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Compute the dual Wulff shape and print its Hausdorff distance to the input.
    Dual {
        /// Shape record, "-" for stdin, or catalog:NAME[:KEY=VALUE...].
        input: String,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Decide self-duality; writes a JSON report.
    Check {
        input: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Draw one or two shapes as SVG.
    Render {
        input: String,
        /// Optional second shape, drawn over the first.
        second: Option<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum, default_value_t = Style::Overlay)]
        style: Style,
    },
    /// Emit a catalog shape; `catalog list` prints the names and parameters.
    Catalog {
        name: String,
        /// KEY=VALUE parameters.
        params: Vec<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Record { path: String, source: RecordError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn read_text(path: &str) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_text(path: &str, text: &str) -> Result<()> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(io_err)?;
        out.flush().map_err(io_err)
    } else {
        fs::write(PathBuf::from(path), text).map_err(io_err)
    }
}

fn split_params(raw: &[String]) -> Result<Vec<(String, String)>> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| CliError::Usage(format!("parameter {p:?} is not KEY=VALUE")))
        })
        .collect()
}

/// Reads a shape record from a path, stdin, or `catalog:NAME[:KEY=VALUE...]`.
fn load(input: &str) -> Result<ShapeRecord> {
    let rec_err = |source| CliError::Record {
        path: input.to_string(),
        source,
    };
    if let Some(rest) = input.strip_prefix("catalog:") {
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<String> = parts.map(str::to_string).collect();
        let spec = CatalogSpec::from_params(name, &split_params(&params)?)?;
        return ShapeRecord::from_catalog(&spec).map_err(rec_err);
    }
    ShapeRecord::from_json(&read_text(input)?).map_err(rec_err)
}

fn load_shape(input: &str) -> Result<wulff_core::Shape> {
    load(input)?.to_shape().map_err(|source| CliError::Record {
        path: input.to_string(),
        source,
    })
}

fn preset_support(gamma: &str, grid: usize) -> Option<Result<SupportFunction>> {
    let mut parts = gamma.split(':');
    let name = parts.next()?;
    let args: Vec<&str> = parts.collect();
    let number = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("preset argument {s:?} is not a number")))
    };
    let built = match (name, args.as_slice()) {
        ("disc", []) => SupportFunction::constant(grid, 1.0).map_err(CliError::from),
        ("reuleaux", rest) if rest.len() <= 1 => {
            let width = match rest.first() {
                Some(s) => number(s),
                None => Ok(1.6),
            };
            width.and_then(|w| {
                SupportFunction::from_fn(grid, SupportPreset::Reuleaux, |t| reuleaux_support(w, t))
                    .map_err(CliError::from)
            })
        }
        ("gauge", rest) if !rest.is_empty() && rest.len() <= 2 => {
            let m =
                rest[0].parse::<usize>().ok().filter(|&m| m >= 2).ok_or_else(|| {
                    CliError::Usage(format!("gauge needs an integer m >= 2, got {:?}", rest[0]))
                });
            let a = match rest.get(1) {
                Some(s) => number(s),
                None => m
                    .as_ref()
                    .map_err(|e| CliError::Usage(e.to_string()))
                    .and_then(|&m| wulff_core::catalog::solve_star_equation(m).map_err(CliError::from)),
            };
            m.and_then(|m| a.map(|a| (m, a))).and_then(|(m, a)| {
                let n = 2 * m;
                SupportFunction::from_fn(grid, SupportPreset::PolygonGauge, |t| {
                    (0..n)
                        .map(|k| {
                            a * PlanePoint::polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
                                .dot(PlanePoint::polar(1.0, t))
                        })
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .map_err(CliError::from)
            })
        }
        ("disc" | "reuleaux" | "gauge", _) => {
            Err(CliError::Usage(format!("bad preset arguments in {gamma:?}")))
        }
        _ => return None,
    };
    Some(built)
}

fn cmd_build(gamma: &str, grid: usize, output: &str) -> Result<()> {
    let g = match preset_support(gamma, grid) {
        Some(g) => g?,
        None => match load_shape(gamma)? {
            wulff_core::Shape::Support(g) => g,
            _ => {
                return Err(CliError::Usage(format!(
                    "{gamma}: expected a support record or one of the presets disc, reuleaux, gauge"
                )))
            }
        },
    };
    let w = build_wulff(&g)?;
    write_text(output, &ShapeRecord::polygon2(&w).to_json())
}

fn cmd_dual(input: &str, grid: usize, output: &str) -> Result<()> {
    let w = load_shape(input)?.wulff()?;
    let d = dual_wulff(&w, grid)?;
    let gap = hausdorff_planar(&w, &d);
    write_text(output, &ShapeRecord::polygon2(&d).to_json())?;
    if output == "-" {
        eprintln!("{gap}");
    } else {
        println!("{gap}");
    }
    Ok(())
}

fn cmd_check(input: &str, tol: f64, output: &str) -> Result<bool> {
    let rec = load(input)?;
    let shape = rec.to_shape().map_err(|source| CliError::Record {
        path: input.to_string(),
        source,
    })?;
    let report = check(&shape, tol, rec.provenance().cloned())?;
    write_text(output, &report.to_json())?;
    Ok(report.self_dual)
}

fn cmd_render(input: &str, second: Option<&str>, output: &str, style: Style) -> Result<()> {
    let mut shapes = vec![load_shape(input)?.wulff()?];
    if let Some(s) = second {
        shapes.push(load_shape(s)?.wulff()?);
    }
    write_text(output, &svg::render(&shapes, style))
}

fn cmd_catalog(name: &str, params: &[String], output: &str) -> Result<()> {
    if name == "list" {
        if !params.is_empty() {
            return Err(CliError::Usage("catalog list takes no parameters".into()));
        }
        let mut text = String::new();
        for (name, ranges) in FAMILIES {
            text.push_str(&format!("{name:<16} {ranges}\n"));
        }
        return write_text(output, &text);
    }
    let spec = CatalogSpec::from_params(name, &split_params(params)?)?;
    let rec = ShapeRecord::from_catalog(&spec).map_err(|source| CliError::Record {
        path: format!("catalog:{name}"),
        source,
    })?;
    write_text(output, &rec.to_json())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { gamma, grid, output } => cmd_build(&gamma, grid, &output)?,
        Command::Dual { input, grid, output } => cmd_dual(&input, grid, &output)?,
        Command::Check { input, tol, output } => {
            return Ok(if cmd_check(&input, tol, &output)? {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Render {
            input,
            second,
            output,
            style,
        } => cmd_render(&input, second.as_deref(), &output, style)?,
        Command::Catalog { name, params, output } => cmd_catalog(&name, &params, &output)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wulff: error: {e}");
            ExitCode::from(2)
        }
    }
}
