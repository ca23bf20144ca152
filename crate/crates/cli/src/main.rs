//! `infsurf`: command-line front end for the `infsurf` kernel.
//!
//! Results go to stdout as JSON (or SVG for `render` without `--svg`).
//! Exit codes: 0 on success, 1 when a verification finds a violation,
//! 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use infsurf::checks::{CheckContext, CheckRegistry};
use infsurf::flow::{separatrix_capped, trace_capped};
use infsurf::group::{classify_direction, primitive, reduce_direction, GroupWord};
use infsurf::render::{FigureOptions, FigureRegistry, GeodesicSpec};
use infsurf::surface::{
    build_surface, cylinders, summarize, Component, CylinderDirection, SurfacePoint, VertexRef, DEFAULT_WINDOW_CAP,
};
use infsurf::unfolding::compare_word;
use infsurf::{RatVec2, Rational};

#[derive(Parser)]
#[command(name = "infsurf", version, about = "Exact computations on the infinite translation surfaces S_c")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, labeled triangulation and singular points in a window.
    Surface(SurfaceArgs),
    /// Horizontal or slope-one cylinders with exact moduli.
    Cylinders(CylinderArgs),
    /// Straight-line flow from a regular point.
    Trace(TraceArgs),
    /// Straight-line flow out of a vertex.
    Separatrix(SeparatrixArgs),
    /// Parity class of an integer direction.
    Classify(IntDirection),
    /// Word taking a base direction to an integer direction.
    Reduce(IntDirection),
    /// Compare directional codes on S_c and S_1 along a group word.
    Compare(CompareArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Write an SVG figure.
    Render(RenderArgs),
}

fn parse_c(s: &str) -> Result<Rational, String> {
    let c: Rational = s.parse().map_err(|e: infsurf::Error| e.to_string())?;
    if c < Rational::one() {
        return Err(format!("c must be at least 1, got {c}"));
    }
    Ok(c)
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: infsurf::Error| e.to_string())
}

fn parse_window(s: &str) -> Result<usize, String> {
    let w: usize = s.parse().map_err(|e| format!("{e}"))?;
    if w > DEFAULT_WINDOW_CAP {
        return Err(format!("window is capped at {DEFAULT_WINDOW_CAP}"));
    }
    Ok(w)
}

fn parse_budget(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n > 100_000 {
        return Err("crossing budget is capped at 100000".to_string());
    }
    Ok(n)
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Horizontal,
    SlopeOne,
}

impl From<Base> for CylinderDirection {
    fn from(b: Base) -> Self {
        match b {
            Base::Horizontal => CylinderDirection::Horizontal,
            Base::SlopeOne => CylinderDirection::SlopeOne,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

impl From<Side> for Component {
    fn from(s: Side) -> Self {
        match s {
            Side::Plus => Component::Plus,
            Side::Minus => Component::Minus,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Surface parameter, a rational at least 1.
    #[arg(long, default_value = "1", value_parser = parse_c)]
    c: Rational,
    /// JSON output (the default; accepted for explicitness).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "4", value_parser = parse_window)]
    window: usize,
}

#[derive(Args)]
struct CylinderArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "horizontal")]
    direction: Base,
    #[arg(long, default_value = "5", value_parser = parse_window)]
    count: usize,
}

#[derive(Args)]
struct IntDirection {
    /// Integer direction `p q`.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true, required = true)]
    direction: Vec<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FlowDirection {
    /// Integer direction `p q`.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    direction: Option<Vec<i64>>,
    /// Rational direction `px/qx py/qy`.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, value_parser = parse_rational)]
    direction_rational: Option<Vec<Rational>>,
}

impl FlowDirection {
    fn vector(&self) -> RatVec2 {
        match (&self.direction, &self.direction_rational) {
            (Some(d), _) => RatVec2::from_ints(d[0], d[1]),
            (_, Some(r)) => RatVec2::new(r[0].clone(), r[1].clone()),
            _ => unreachable!("clap enforces one direction"),
        }
    }
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    common: Common,
    /// Start point `x y` in the chart of `--component`.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, required = true, value_parser = parse_rational)]
    start: Vec<Rational>,
    #[arg(long, value_enum, default_value = "+")]
    component: Side,
    #[command(flatten)]
    direction: FlowDirection,
    #[arg(long, default_value = "100", value_parser = parse_budget)]
    max_crossings: usize,
    #[arg(long, default_value = "1024", value_parser = parse_window)]
    window: usize,
    /// Also write the trajectory as an SVG figure.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct SeparatrixArgs {
    #[command(flatten)]
    common: Common,
    /// Vertex index `k` of the origin `P_k`.
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    vertex: i64,
    #[arg(long, value_enum, default_value = "+")]
    component: Side,
    #[command(flatten)]
    direction: FlowDirection,
    #[arg(long, default_value = "100", value_parser = parse_budget)]
    max_crossings: usize,
    #[arg(long, default_value = "1024", value_parser = parse_window)]
    window: usize,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
    /// Word over A, B, C, D, E and `-` (for -I).
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long, value_enum, default_value = "horizontal")]
    base: Base,
    #[arg(long, default_value = "100", value_parser = parse_budget)]
    max_crossings: usize,
    /// Separatrices start at `P_k` with `|k|` up to this radius.
    #[arg(long, default_value = "2", value_parser = parse_window)]
    radius: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// `all` or one check name.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value = "20", value_parser = parse_window)]
    window: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureKind {
    Surface,
    Cylinders,
    Geodesic,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(value_enum)]
    figure: FigureKind,
    #[arg(long, default_value = "1", value_parser = parse_c)]
    c: Rational,
    #[arg(long, default_value = "4", value_parser = parse_window)]
    window: usize,
    /// Cylinder family shaded by the `cylinders` figure.
    #[arg(long, value_enum, default_value = "slope-one")]
    base: Base,
    /// Start point of the `geodesic` figure.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, value_parser = parse_rational)]
    start: Option<Vec<Rational>>,
    #[arg(long, value_enum, default_value = "+")]
    component: Side,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    direction: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, value_parser = parse_rational)]
    direction_rational: Option<Vec<Rational>>,
    #[arg(long, default_value = "20", value_parser = parse_budget)]
    max_crossings: usize,
    /// Output path; stdout when absent.
    #[arg(long)]
    svg: Option<PathBuf>,
}

enum Outcome {
    Ok(Value),
    Violation(Value),
    Svg(String),
}

type Run = Result<Outcome, String>;

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, String> {
    serde_json::to_value(v).map_err(|e| e.to_string())
}

fn kernel<T>(r: infsurf::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Surface(a) => {
            let h = kernel(build_surface(a.common.c, a.window + 1))?;
            Ok(Outcome::Ok(to_value(&summarize(&h, a.window))?))
        }
        Command::Cylinders(a) => {
            let h = kernel(build_surface(a.common.c.clone(), 0))?;
            let dir: CylinderDirection = a.direction.into();
            let cyls = kernel(cylinders(&h, dir, a.count))?;
            Ok(Outcome::Ok(json!({ "c": a.common.c, "direction": dir.name(), "cylinders": to_value(&cyls)? })))
        }
        Command::Trace(a) => {
            let h = kernel(build_surface(a.common.c, 4))?;
            let start = SurfacePoint::new(a.component.into(), RatVec2::new(a.start[0].clone(), a.start[1].clone()));
            let u = a.direction.vector();
            let t = kernel(trace_capped(&h, &start, &u, a.max_crossings, a.window))?;
            if let Some(path) = a.svg {
                let opts = FigureOptions {
                    geodesic: Some(GeodesicSpec { start, direction: u, max_crossings: a.max_crossings }),
                    ..FigureOptions::default()
                };
                let svg = kernel(FigureRegistry::default().render("geodesic", &h, &opts))?;
                fs::write(&path, svg).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(Outcome::Ok(to_value(&t)?))
        }
        Command::Separatrix(a) => {
            let h = kernel(build_surface(a.common.c, 4))?;
            let origin = VertexRef::new(a.component.into(), a.vertex);
            let t = kernel(separatrix_capped(&h, origin, &a.direction.vector(), None, a.max_crossings, a.window))?;
            Ok(Outcome::Ok(to_value(&t)?))
        }
        Command::Classify(a) => {
            let class = kernel(classify_direction(a.direction[0], a.direction[1]))?;
            Ok(Outcome::Ok(json!({ "class": class.name(), "saddle_connections": class.has_saddle_connections() })))
        }
        Command::Reduce(a) => {
            let (p, q) = kernel(primitive(a.direction[0], a.direction[1]))?;
            if (p, q) != (a.direction[0], a.direction[1]) && (-p, -q) != (a.direction[0], a.direction[1]) {
                return Err(format!("direction ({}, {}) is not primitive", a.direction[0], a.direction[1]));
            }
            let red = kernel(reduce_direction(a.direction[0], a.direction[1]))?;
            let class = kernel(classify_direction(p, q))?;
            Ok(Outcome::Ok(json!({
                "direction": [a.direction[0], a.direction[1]],
                "word": red.word.to_string(),
                "base": [red.base.0, red.base.1],
                "class": class.name(),
            })))
        }
        Command::Compare(a) => {
            let word: GroupWord = kernel(a.word.parse())?;
            let hc = kernel(build_surface(a.common.c, 4))?;
            let h1 = kernel(build_surface(Rational::one(), 4))?;
            let cmp = kernel(compare_word(&hc, &h1, &word, a.base.into(), a.max_crossings, a.radius))?;
            let out = json!({
                "word": word.to_string(),
                "base": CylinderDirection::from(a.base).name(),
                "c": cmp.c,
                "agree": cmp.agree(),
                "starts": cmp.comparisons.len(),
                "sector_mismatches": to_value(&cmp.sector_mismatches)?,
                "infeasible_transports": to_value(&cmp.infeasible_transports)?,
                "witness": to_value(&cmp.witness())?,
            });
            Ok(if cmp.agree() { Outcome::Ok(out) } else { Outcome::Violation(out) })
        }
        Command::Verify(a) => {
            let ctx = CheckContext { c: a.common.c.clone(), window: a.window };
            let reports = kernel(CheckRegistry::default().run(&a.suite, &ctx))?;
            let pass = reports.iter().all(|r| r.pass);
            let out = json!({ "c": a.common.c, "window": a.window, "pass": pass, "checks": to_value(&reports)? });
            Ok(if pass { Outcome::Ok(out) } else { Outcome::Violation(out) })
        }
        Command::Render(a) => {
            let h = kernel(build_surface(a.c, a.window + 2))?;
            let direction = match (a.direction, a.direction_rational) {
                (Some(d), None) => Some(RatVec2::from_ints(d[0], d[1])),
                (None, Some(r)) => Some(RatVec2::new(r[0].clone(), r[1].clone())),
                (None, None) => None,
                _ => return Err("give only one of --direction and --direction-rational".to_string()),
            };
            let (name, geodesic) = match a.figure {
                FigureKind::Surface => ("surface", None),
                FigureKind::Cylinders => ("cylinders", None),
                FigureKind::Geodesic => {
                    let (Some(s), Some(u)) = (a.start, direction) else {
                        return Err("the geodesic figure needs --start and a direction".to_string());
                    };
                    let start = SurfacePoint::new(a.component.into(), RatVec2::new(s[0].clone(), s[1].clone()));
                    ("geodesic", Some(GeodesicSpec { start, direction: u, max_crossings: a.max_crossings }))
                }
            };
            let opts = FigureOptions { window: a.window, cylinders: a.base.into(), geodesic };
            let svg = kernel(FigureRegistry::default().render(name, &h, &opts))?;
            match a.svg {
                Some(path) => {
                    fs::write(&path, svg).map_err(|e| format!("{}: {e}", path.display()))?;
                    Ok(Outcome::Ok(json!({ "figure": name, "path": path.display().to_string() })))
                }
                None => Ok(Outcome::Svg(svg)),
            }
        }
    }
}

// A closed pipe (e.g. `| head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violation(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
        Ok(Outcome::Svg(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
