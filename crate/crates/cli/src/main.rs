mod commands;
mod render;
mod schema;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use schema::{CliError, ErrorBody, ErrorEnvelope, Exit};

#[derive(Parser)]
#[command(name = "hexstretch", version, about = "Right-angled hexagons, their extremal deformations and hexagon-decomposed surfaces")]
struct Cli {
    #[command(flatten)]
    io: Io,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Io {
    /// Input JSON file (stdin when omitted).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hexagon solvers and chart conversion.
    Hexagon {
        #[command(subcommand)]
        cmd: HexagonCmd,
    },
    /// Deform a hexagon by multiplying every cosh ℓ_i by K.
    Deform {
        #[arg(long = "K")]
        k: f64,
    },
    /// Image of a point or chart coordinate under the extremal map.
    MapPoint(MapPointArgs),
    /// Numerical verification of the extremal map.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Hexagon-decomposed surfaces.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Render an embedded hexagon as SVG.
    Render(RenderArgs),
}

#[derive(Subcommand)]
pub enum HexagonCmd {
    /// Solve a hexagon from half-lengths or from (alphas, d).
    Solve,
    /// Classify by short-edge lengths ("lambda") or by a solvable hexagon.
    Classify,
    /// Convert between a disc point and foliation coordinates.
    Coords(PointOrCoord),
}

#[derive(Args, Clone)]
pub struct PointOrCoord {
    /// Chart coordinate `sector,u,v`.
    #[arg(long, conflicts_with = "point")]
    pub coord: Option<String>,
    /// Disc point `x,y`.
    #[arg(long)]
    pub point: Option<String>,
}

#[derive(Args)]
pub struct MapPointArgs {
    #[arg(long = "K")]
    pub k: f64,
    #[command(flatten)]
    pub at: PointOrCoord,
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Finite-difference check that the map is k-Lipschitz.
    Lipschitz {
        #[arg(long = "K")]
        k: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long = "tol-fd", default_value_t = hexstretch::deform::TOL_FD)]
        tol_fd: f64,
    },
}

#[derive(Subcommand)]
pub enum SurfaceCmd {
    /// List invariant violations; exit 3 if any.
    Validate {
        #[arg(long = "tol-glue", default_value_t = hexstretch::surface::GLUE_TOL)]
        tol_glue: f64,
    },
    /// Trace the boundary components.
    Boundaries,
    /// Deform every hexagon by K.
    Deform {
        #[arg(long = "K")]
        k: f64,
    },
    /// Largest long-edge stretch factor at K.
    K {
        #[arg(long = "K")]
        k: f64,
    },
    /// Arc/Lipschitz metric certificate between K1 and K2; exit 3 unless
    /// the gap is within tolerance.
    Certificate {
        #[arg(long = "K1")]
        k1: f64,
        #[arg(long = "K2")]
        k2: f64,
        #[arg(long = "tol-cert", default_value_t = hexstretch::surface::CERT_TOL)]
        tol_cert: f64,
    },
    /// Luo radius coordinates and cycle sums.
    Luo {
        /// Glued edge `hex,index`; every glued edge when omitted.
        #[arg(long)]
        edge: Option<String>,
        /// Sum over a cycle of edges `hex,index;hex,index;...`.
        #[arg(long)]
        cycle: Option<String>,
    },
}

#[derive(Args)]
pub struct RenderArgs {
    /// Render settings as JSON; flags below override it.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub width: Option<u32>,
    /// Comma-separated subset of `foliation_F,foliation_G,tripod,central_region,labels`.
    #[arg(long)]
    pub show: Option<String>,
    #[arg(long = "leaves-f")]
    pub leaves_f: Option<usize>,
    #[arg(long = "leaves-g")]
    pub leaves_g: Option<usize>,
    #[arg(long = "overlay-K")]
    pub overlay_k: Option<f64>,
}

fn read_input(io: &Io) -> Result<String, CliError> {
    let mut text = String::new();
    match &io.input {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::schema(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::schema(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn write_output(io: &Io, text: &str) -> Result<(), CliError> {
    match &io.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::domain(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<Exit, CliError> {
    let io = &cli.io;
    let input = read_input(io)?;
    let (text, exit) = match cli.command {
        Command::Hexagon { cmd } => commands::hexagon(&cmd, &input)?,
        Command::Deform { k } => commands::deform(&input, k)?,
        Command::MapPoint(a) => commands::map_point(&input, &a)?,
        Command::Verify { cmd } => commands::verify(&input, &cmd)?,
        Command::Surface { cmd } => commands::surface(&input, &cmd)?,
        Command::Render(a) => commands::render(&input, &a)?,
    };
    write_output(io, &text)?;
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Schema as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            let env = ErrorEnvelope {
                error: ErrorBody { kind: e.kind, message: &e.message, exit_code: e.exit as i32 },
            };
            println!("{}", serde_json::to_string(&env).expect("error envelope serializes"));
            ExitCode::from(e.exit as u8)
        }
    }
}
