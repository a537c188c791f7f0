use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sgpd::format::{parse, Document};
use sgpd::run::{iso, run, Failure, Options, Report};

#[derive(Parser)]
#[command(name = "sgpd", version, about = "Check and transform finite semigroupoids described in .sgpd files")]
struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 10)]
    max_violations: usize,
    #[arg(long, global = true, default_value_t = semigroupoid::duality::DEFAULT_BISECTION_CAP)]
    cap_bisections: usize,
    #[arg(long, global = true, default_value_t = semigroupoid::graph::DEFAULT_GRAPHING_CAP)]
    cap_graphings: usize,
    /// Only process the block with this name.
    #[arg(long, global = true)]
    name: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every block.
    Validate { file: PathBuf },
    /// Predicates, idempotents and the natural order.
    Analyze { file: PathBuf },
    /// Count the graphings of each semigroupoid.
    Graphings { file: PathBuf },
    /// The Wagner–Preston representation.
    WagnerPreston { file: PathBuf },
    /// Semidirect product of each action.
    Semidirect { file: PathBuf },
    /// Quotient by the congruence generated by each congruence block.
    Quotient { file: PathBuf },
    /// Initial groupoid, or germs of each order block.
    Germ { file: PathBuf },
    /// Underlying groupoid of each inverse semigroupoid.
    Underlying { file: PathBuf },
    /// Ultrafilters of the idempotent semilattice.
    Spectrum { file: PathBuf },
    /// The semigroup of bisections.
    Kb { file: PathBuf },
    /// The semigroupoid of germs of a Σ-ordered semigroup.
    P { file: PathBuf },
    /// Verify ζ and κ.
    Roundtrip { file: PathBuf },
    /// Search for an isomorphism between two tables given as FILE or FILE:NAME.
    Iso { a: String, b: String },
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn split_spec(s: &str) -> (PathBuf, Option<String>) {
    if Path::new(s).exists() {
        return (s.into(), None);
    }
    match s.rsplit_once(':') {
        Some((f, n)) => (f.into(), Some(n.to_string())),
        None => (s.into(), None),
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let opts = Options {
        max_violations: cli.max_violations,
        cap_bisections: cli.cap_bisections,
        cap_graphings: cli.cap_graphings,
        name: cli.name.clone(),
    };
    let (cmd, file) = match &cli.command {
        Command::Iso { a, b } => {
            let (fa, na) = split_spec(a);
            let (fb, nb) = split_spec(b);
            let (da, db) = (load(&fa)?, load(&fb)?);
            return iso((&da, na.as_deref()), (&db, nb.as_deref()));
        }
        Command::Validate { file } => ("validate", file),
        Command::Analyze { file } => ("analyze", file),
        Command::Graphings { file } => ("graphings", file),
        Command::WagnerPreston { file } => ("wagner-preston", file),
        Command::Semidirect { file } => ("semidirect", file),
        Command::Quotient { file } => ("quotient", file),
        Command::Germ { file } => ("germ", file),
        Command::Underlying { file } => ("underlying", file),
        Command::Spectrum { file } => ("spectrum", file),
        Command::Kb { file } => ("kb", file),
        Command::P { file } => ("p", file),
        Command::Roundtrip { file } => ("roundtrip", file),
    };
    run(cmd, &load(file)?, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(rep) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&rep.json()).expect("json") + "\n"
            } else {
                rep.text()
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "ok": false, "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
