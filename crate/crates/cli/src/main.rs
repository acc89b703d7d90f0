use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use tetfield_cli::eval::PointSource;
use tetfield_cli::scan::{GridSpec, LineSpec};
use tetfield_cli::{bench, eval, exit, verify, CliError};

/// Magnetic field of uniformly magnetized tetrahedral meshes.
///
/// Exit status: 0 success, 1 I/O failure, 2 usage error, 3 unparsable
/// input file, 4 invalid mesh or arguments, 5 verification failure.
#[derive(Parser)]
#[command(name = "tetfield", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate H and B of a mesh at a set of points and write CSV.
    #[command(group(ArgGroup::new("points_source").required(true).args(["points", "line", "grid"])))]
    Eval {
        /// Mesh file (JSON).
        #[arg(long)]
        mesh: PathBuf,
        /// CSV file with an `x,y,z` header, coordinates in meters.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Line scan, e.g. `axis=x,through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200` (meters).
        #[arg(long)]
        line: Option<LineSpec>,
        /// Regular grid, e.g. `min=0:0:0,max=1e-3:1e-3:1e-3,n=10:10:10` (meters).
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the analytic field with adaptive quadrature.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Maximum accepted relative error.
        #[arg(long, default_value_t = verify::DEFAULT_TOL)]
        tol: f64,
    },
    /// Time tensor and field evaluation for one tetrahedron.
    Bench {
        #[arg(long, default_value_t = bench::DEFAULT_EVALUATIONS)]
        n: usize,
        /// Also time evaluation with the face geometry prepared once.
        #[arg(long)]
        cache_pose: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval {
            mesh,
            points,
            line,
            grid,
            out,
        } => {
            let source = match (points, line, grid) {
                (Some(p), _, _) => PointSource::File(p),
                (_, Some(l), _) => PointSource::Line(l),
                (_, _, Some(g)) => PointSource::Grid(g),
                _ => unreachable!("clap enforces one point source"),
            };
            let n = eval::run(&mesh, &source, &out)?;
            eprintln!("wrote {n} records to {}", out.display());
        }
        Command::Verify { seed, tol } => {
            let report = verify::run(seed, tol)?;
            print!("{}", report.render());
            if !report.passed() {
                return Err(CliError::Verification {
                    max_error: report.max_rel_error(),
                    tol,
                });
            }
        }
        Command::Bench { n, cache_pose } => {
            print!("{}", bench::run(n, cache_pose)?.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
