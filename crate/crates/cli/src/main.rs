use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use eliminax::{parse_game, FiniteGame, Ordinal};

mod commands;
mod tokens;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input: exit 2.
    Input(String),
}

#[derive(Parser)]
#[command(name = "eliminax", version, about = "Iterated elimination of strategies in finite and infinite games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Game file, or `-` for standard input.
    #[arg(long)]
    game: PathBuf,
    /// point, correlated or independent (rationalizability operators only;
    /// defaults to point).
    #[arg(long)]
    beliefs: Option<String>,
    /// Largest stage to compute: `12`, `w`, `w+3`, `w*2`.
    #[arg(long, env = "ELIMINAX_CAP", default_value = "w*2")]
    cap: String,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate one operator and print every stage and the verdict.
    Eliminate {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        common: Common,
    },
    /// Iterate several operators and report the first stage where they differ.
    Compare {
        /// Comma-separated operator tokens.
        #[arg(long)]
        ops: String,
        #[command(flatten)]
        common: Common,
        /// Exit 1 unless all traces coincide.
        #[arg(long)]
        expect_coincide: bool,
    },
    /// Run sampled relaxations of a contracting operator and tally outcomes.
    OrderIndependence {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Replay a built-in infinite example, or list them.
    Example {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        /// Print stages below this ordinal.
        #[arg(long)]
        upto: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Evaluate properties B, C, D, E along an operator's trace.
    Check {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        common: Common,
        /// Comma-separated subset of B,C,D,E.
        #[arg(long, default_value = "B,C,D,E")]
        properties: String,
    },
}

fn load_game(path: &PathBuf) -> Result<Arc<FiniteGame>, CliError> {
    let shown = path.display();
    let text = if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        text
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{shown}: {e}")))?
    };
    parse_game(&text).map(Arc::new).map_err(|e| CliError::Input(format!("{shown}: {e}")))
}

struct Setup {
    game: Arc<FiniteGame>,
    beliefs: Option<eliminax::BeliefStructure>,
    cap: Ordinal,
    format: tokens::Format,
}

fn setup(common: &Common) -> Result<Setup, CliError> {
    Ok(Setup {
        beliefs: common.beliefs.as_deref().map(tokens::beliefs).transpose()?,
        cap: tokens::ordinal(&common.cap)?,
        format: tokens::format(&common.format)?,
        game: load_game(&common.game)?,
    })
}

fn run(cli: Cli) -> Result<commands::Rendered, CliError> {
    match cli.command {
        Command::Eliminate { op, common } => {
            let op = tokens::operator(&op)?;
            let s = setup(&common)?;
            commands::eliminate(s.game, op, s.beliefs, s.cap, s.format)
        }
        Command::Compare { ops, common, expect_coincide } => {
            let ops = tokens::operators(&ops)?;
            let s = setup(&common)?;
            commands::compare(s.game, &ops, s.beliefs, s.cap, s.format, expect_coincide)
        }
        Command::OrderIndependence { op, common, trials, seed } => {
            let op = tokens::operator(&op)?;
            let seed = match (seed, trials) {
                (Some(seed), _) => seed,
                (None, 0) => 0,
                (None, _) => return Err(CliError::Input("--seed is required when --trials is positive".into())),
            };
            let s = setup(&common)?;
            commands::order_independence(s.game, op, s.beliefs, s.cap, trials, seed, s.format)
        }
        Command::Example { name, upto, list, format } => {
            let format = tokens::format(&format)?;
            if list {
                return Ok(commands::catalogue(format));
            }
            let name = tokens::example(name.as_deref().unwrap_or_default())?;
            let upto = upto.as_deref().map(tokens::ordinal).transpose()?;
            commands::example(&name, upto, format)
        }
        Command::Check { op, common, properties } => {
            let op = tokens::operator(&op)?;
            let properties = tokens::properties(&properties)?;
            let s = setup(&common)?;
            commands::check(s.game, op, s.beliefs, s.cap, &properties, s.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(rendered) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(rendered.text.as_bytes());
            if rendered.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
