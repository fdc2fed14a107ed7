//! Argument parsing and the subcommands. Every command prints one JSON
//! document (keys sorted) on stdout and maps its result to an exit code.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use tilekit::bigtile::{self, BigTileError, BigTileProblem, Mode, RadiusParams};
use tilekit::group::{ball, GroupError, GroupSpec};
use tilekit::tiling::{self, Fixture, PartialTiling, Tile, TileVerdict, TilingError};
use tilekit::ztile::{self, ZtileError};
use tilekit::Limits;

use crate::dot;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "tile", version, about = "Decide, refute, verify and construct tilings of groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget: backtracking nodes, or candidates for `bigtile build`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest ball any command may enumerate.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
}

impl Global {
    fn limits(&self) -> Limits {
        let mut limits = Limits::from_env();
        if let Some(b) = self.budget {
            limits.node_budget = b;
        }
        if let Some(c) = self.cap {
            limits.element_cap = c;
        }
        limits
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a finite set of integers tiles Z.
    DecideZ {
        /// JSON array of integers, e.g. "[0,1,5]".
        set: String,
    },
    /// Search for a proof that a set is not a tile, up to a ball radius.
    Refute {
        #[command(flatten)]
        tile: TileSource,
        #[arg(long)]
        radius: u32,
    },
    /// Check a stored partial tiling on a core ball.
    Verify {
        #[arg(long)]
        tiling: PathBuf,
        #[arg(long)]
        core: u32,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Greedy shifts covering a ball.
    Greedy {
        #[command(flatten)]
        tile: TileSource,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Polynomial criteria for tiles of Z.
    Ztile {
        #[command(subcommand)]
        command: ZtileCommand,
    },
    /// Extend a finite K in a free group to a tile K ∪ {ξ}.
    Bigtile {
        #[command(subcommand)]
        command: BigtileCommand,
    },
    /// Print a named fixture, e.g. ball:free:2:1 or sphere:free:2:2.
    Fixture { name: String },
    /// Group utilities.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZtileCommand {
    Analyze { set: String },
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// List the ball of a radius in ball order.
    Ball {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum BigtileCommand {
    Build(BuildArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ModeArg {
    Paper,
    Relaxed,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    /// JSON array of words, e.g. '["","a","b"]'.
    #[arg(long)]
    k: String,
    #[arg(long, value_enum, default_value = "relaxed")]
    mode: ModeArg,
    /// Relaxed mode only: override the default r = max|g| + 1.
    #[arg(long)]
    r: Option<u32>,
    /// Radius of the core ball the emitted shifts must tile; the region
    /// radius is derived from it.
    #[arg(long)]
    radius: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct TileSource {
    /// A named fixture.
    #[arg(long)]
    fixture: Option<String>,
    /// A tile JSON file.
    #[arg(long)]
    tile: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TilingError> for CliError {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::Group(g) => g.into(),
            TilingError::UndecidedAtCap { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ZtileError> for CliError {
    fn from(e: ZtileError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<BigTileError> for CliError {
    fn from(e: BigTileError) -> Self {
        match e {
            BigTileError::Group(g) => g.into(),
            BigTileError::Tiling(t) => t.into(),
            BigTileError::BudgetExhausted { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// The JSON payload and the exit code of a finished command.
pub struct Outcome {
    pub code: u8,
    pub payload: Value,
}

impl Outcome {
    fn new(code: u8, payload: impl Serialize) -> Result<Self, CliError> {
        let payload = serde_json::to_value(payload).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Outcome { code, payload })
    }
}

/// Parses `args`, runs the command and prints its payload.
pub fn entry(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", to_json(&out.payload));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let limits = cli.global.limits();
    match &cli.command {
        Command::DecideZ { set } => decide_z(&parse_set(set)?, &limits),
        Command::Refute { tile, radius } => refute(&load_tile(tile)?, *radius, &limits),
        Command::Verify { tiling, core, dot } => verify(tiling, *core, dot.as_deref(), &limits),
        Command::Greedy { tile, radius, out, dot } => {
            let pt = tiling::greedy_cover(&load_tile(tile)?, *radius, &limits)?;
            if let Some(path) = dot {
                write_dot(path, &pt)?;
            }
            emit_artifact(&pt, out.as_deref(), |_| json!({ "centers": pt.centers.len(), "region_radius": pt.region_radius }))
        }
        Command::Ztile { command: ZtileCommand::Analyze { set } } => {
            let report = ztile::analyze(&parse_set(set)?, &limits)?;
            let code = if report.agreement.all_hold() { EXIT_OK } else { EXIT_NEGATIVE };
            Outcome::new(code, report)
        }
        Command::Bigtile { command: BigtileCommand::Build(args) } => build(args, &cli.global, &limits),
        Command::Fixture { name } => {
            let fixture: Fixture = name.parse()?;
            Outcome::new(EXIT_OK, tiling::named_fixture(&fixture)?)
        }
        Command::Group { command: GroupCommand::Ball { group, radius } } => {
            let spec: GroupSpec = group.parse()?;
            let elements = ball(&spec, *radius, limits.element_cap)?;
            Outcome::new(EXIT_OK, json!({ "group": spec, "radius": radius, "size": elements.len(), "elements": elements }))
        }
    }
}

fn parse_set(text: &str) -> Result<Vec<i64>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("expected a JSON array of integers: {e}")))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_tile(src: &TileSource) -> Result<Tile, CliError> {
    match (&src.fixture, &src.tile) {
        (Some(name), _) => Ok(tiling::named_fixture(&name.parse()?)?),
        (None, Some(path)) => Ok(Tile::from_json(&read_json(path)?)?),
        (None, None) => Err(CliError::Input("give --fixture or --tile".into())),
    }
}

fn decide_z(set: &[i64], limits: &Limits) -> Result<Outcome, CliError> {
    let verdict = tiling::decide_z_tile(set, limits)?;
    let code = if verdict.is_tile() { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::new(code, verdict)
}

fn refute(tile: &Tile, radius: u32, limits: &Limits) -> Result<Outcome, CliError> {
    let verdict = tiling::bounded_refute(tile, radius, limits)?;
    let code = match verdict {
        TileVerdict::NotTile { .. } => EXIT_NEGATIVE,
        TileVerdict::Unknown { budget_exhausted: true, .. } => EXIT_RESOURCE,
        _ => EXIT_OK,
    };
    Outcome::new(code, verdict)
}

fn verify(path: &Path, core: u32, dot_path: Option<&Path>, limits: &Limits) -> Result<Outcome, CliError> {
    let pt = PartialTiling::from_json(&read_json(path)?)?;
    if let Some(p) = dot_path {
        write_dot(p, &pt)?;
    }
    let report = tiling::verify_partial_tiling(&pt, core, limits)?;
    let code = if report.disjoint && report.covered { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::new(code, report)
}

fn build(args: &BuildArgs, global: &Global, limits: &Limits) -> Result<Outcome, CliError> {
    let spec: GroupSpec = args.group.parse()?;
    let k: Vec<String> =
        serde_json::from_str(&args.k).map_err(|e| CliError::Input(format!("--k expects a JSON array of words: {e}")))?;
    let problem = BigTileProblem::parse(spec, &k.iter().map(String::as_str).collect::<Vec<_>>())?;
    if problem.k().len() == 1 {
        let tile = bigtile::singleton_tile(&problem)?;
        return Outcome::new(EXIT_OK, json!({ "singleton": true, "tile": tile }));
    }
    let mode = match (args.mode, args.r) {
        (ModeArg::Paper, None) => Mode::Paper,
        (ModeArg::Paper, Some(_)) => return Err(CliError::Input("--r applies to relaxed mode only".into())),
        (ModeArg::Relaxed, r) => Mode::Relaxed { r_override: r },
    };
    let params = RadiusParams::for_mode(&problem, mode)?;
    let budget = global.budget.unwrap_or(1_000_000);
    let cert = bigtile::find_xi(&problem, &params, budget, global.seed, limits)?;
    let region = args.radius + cert.xi.len() as u32 + problem.max_len() + 1;
    let t = bigtile::build_big_tiling(&problem, &cert, region, limits)?;
    if let Some(path) = &args.dot {
        write_dot(path, &t.to_partial_tiling()?)?;
    }
    emit_artifact(&t, args.out.as_deref(), |_| {
        json!({
            "centers": t.centers.len(),
            "core_radius": t.core_radius,
            "region_radius": t.region_radius,
            "tile": t.tile,
            "xi": cert.xi,
            "r": cert.r,
        })
    })
}

/// With `out`, writes the full artifact there and prints a summary;
/// otherwise prints the artifact itself.
fn emit_artifact<T: Serialize>(artifact: &T, out: Option<&Path>, summary: impl FnOnce(&T) -> Value) -> Result<Outcome, CliError> {
    let Some(path) = out else {
        return Outcome::new(EXIT_OK, artifact);
    };
    let value = serde_json::to_value(artifact).map_err(|e| CliError::Input(e.to_string()))?;
    fs::write(path, to_json(&value)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut s = summary(artifact);
    s["out"] = json!(path.display().to_string());
    Ok(Outcome { code: EXIT_OK, payload: s })
}

fn write_dot(path: &Path, pt: &PartialTiling) -> Result<(), CliError> {
    let text = dot::render(pt).map_err(CliError::Input)?;
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON; `serde_json::Value` maps are ordered, so keys come out sorted.
pub fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("a Value always serializes");
    s.push('\n');
    s
}
