//! Command-line front end for the hexpivot planner.
//!
//! Exit codes: 0 ok, 1 verified plan ends at a different shape, 2 parse
//! error or bad arguments, 3 size mismatch, 4 internal planner error (state
//! dumped next to the output), 5 restricted model requested for planning,
//! 6 illegal plan step, 7 explorer size cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hexpivot::cli_io::{self, IoError};
use hexpivot::explorer::{cached_graph, components, rigidity_scan};
use hexpivot::move_model::verify_moves;
use hexpivot::planner::{reconfigure_with_stats, PlannerError};
use hexpivot::{Cell, ExplorerError, ModelId, MoveError};

#[derive(Parser)]
#[command(name = "hexpivot", version, about = "Reconfiguration planner for pivoting hexagonal modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Monkey,
    Restricted,
}

impl From<Model> for ModelId {
    fn from(m: Model) -> ModelId {
        match m {
            Model::Monkey => ModelId::HexMonkey,
            Model::Restricted => ModelId::HexRestricted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Plan a move sequence from one configuration to (a translate of) another.
    Plan {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value = "monkey")]
        model: Model,
        #[arg(long)]
        out: PathBuf,
        /// Print per-phase move counts and the n^3 ratio as TSV.
        #[arg(long)]
        stats: bool,
    },
    /// Replay a plan and check every step.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, value_enum, default_value = "monkey")]
        model: Model,
        /// Require the final configuration to match this one up to translation.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Count shapes, moves and components of the reconfiguration graph.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "monkey")]
        model: Model,
        #[arg(long)]
        components: bool,
        #[arg(long)]
        rigid: bool,
        /// Worker threads for enumeration (output does not depend on it).
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write a seeded random connected configuration.
    Random {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write one SVG per frame: the start and the state after each move.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        Failure(2, e.to_string())
    }
}

impl From<ExplorerError> for Failure {
    fn from(e: ExplorerError) -> Failure {
        let code = if matches!(e, ExplorerError::CapExceeded { .. }) { 7 } else { 2 };
        Failure(code, e.to_string())
    }
}

fn dump_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".state.cfg");
    out.with_file_name(name)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Plan { input, target, model, out, stats } => {
            if matches!(model, Model::Restricted) {
                return Err(Failure(5, "planning is only supported for the monkey model".into()));
            }
            let a = cli_io::read_config(&input)?;
            let b = cli_io::read_config(&target)?;
            match reconfigure_with_stats(&a, &b) {
                Ok((plan, st)) => {
                    cli_io::write_file(&out, &cli_io::write_plan(&plan))?;
                    if stats {
                        print!("{st}");
                    }
                    Ok(())
                }
                Err(PlannerError::SizeMismatch(x, y)) => {
                    Err(Failure(3, format!("size mismatch: {} has {x} modules, {} has {y}", input.display(), target.display())))
                }
                Err(e @ PlannerError::Internal { .. }) => {
                    let PlannerError::Internal { cells, .. } = &e else { unreachable!() };
                    let dump = dump_path(&out);
                    let text: String = cells.iter().map(|c: &Cell| format!("{} {}\n", c.q, c.r)).collect();
                    cli_io::write_file(&dump, &text)?;
                    Err(Failure(4, format!("internal planner error: {e}; state dumped to {}", dump.display())))
                }
            }
        }
        Command::Verify { input, plan, model, expect } => {
            let a = cli_io::read_config(&input)?;
            let p = cli_io::read_plan(&plan)?;
            let expected = expect.as_deref().map(cli_io::read_config).transpose()?;
            if let Some(b) = &expected {
                if a.len() != b.len() {
                    return Err(Failure(3, format!("size mismatch: {} vs {}", a.len(), b.len())));
                }
            }
            let end = verify_moves(&a, p.moves(), model.into()).map_err(|e| match e {
                MoveError::StepIllegal { index, reason } => {
                    Failure(6, format!("step {index} is illegal: {reason}"))
                }
                other => Failure(6, other.to_string()),
            })?;
            if let Some(b) = expected {
                if !end.same_shape(&b) {
                    return Err(Failure(1, "plan is legal but ends at a different shape".into()));
                }
            }
            println!("ok steps={}", p.len());
            Ok(())
        }
        Command::Explore { n, model, components: comps, rigid, threads } => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global()
                .map_err(|e| Failure(2, e.to_string()))?;
            let model: ModelId = model.into();
            let g = cached_graph(n, model)?;
            println!("nodes={} edges={}", g.nodes.len(), g.edges().len());
            if comps {
                println!("nodes={} components={}", g.nodes.len(), components(&g).len());
            }
            if rigid {
                println!("nodes={} rigid={}", g.nodes.len(), rigidity_scan(n, model)?.len());
            }
            Ok(())
        }
        Command::Random { n, seed, out } => {
            let c = cli_io::random_configuration(n as usize, seed);
            cli_io::write_file(&out, &cli_io::write_config(&c))?;
            Ok(())
        }
        Command::Render { input, plan, out } => {
            let a = cli_io::read_config(&input)?;
            let p = plan.as_deref().map(cli_io::read_plan).transpose()?;
            if let Some(p) = &p {
                verify_moves(&a, p.moves(), ModelId::HexMonkey).map_err(|e| Failure(6, e.to_string()))?;
            }
            let frames = cli_io::render_frames(&a, p.as_ref(), &out)?;
            println!("frames={}", frames.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("hexpivot: {msg}");
            ExitCode::from(code)
        }
    }
}
