//! `fansheaf`: invariants of fans and subdivisions, sheaf dumps and the
//! verification harness.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use fansheaf::verify::Suite;

#[derive(Parser)]
#[command(name = "fansheaf", version, about = "Exact invariants of rational polyhedral fans")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Print progress to stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a single fan.
    Invariants {
        #[arg(long)]
        fan: PathBuf,
        /// Comma-separated: h, g, hstar, local-hstar, mixed-hstar, flag-f, ab, cd, local-cd.
        #[arg(long)]
        which: String,
        /// Also compute the sheaf-side counterpart of each invariant.
        #[arg(long)]
        cross_check: bool,
    },
    /// Mixed and local invariants of a subdivision.
    Mixed {
        #[arg(long)]
        coarse: PathBuf,
        #[arg(long)]
        fine: PathBuf,
        /// Comma-separated: mixed-h, local-h, mixed-cd, local-cd, limit-mixed-hstar, refined-limit-mixed-hstar.
        #[arg(long)]
        which: String,
    },
    /// Build a sheaf on a fan and write its stalk data as JSON.
    Sheaf {
        #[arg(long)]
        fan: PathBuf,
        /// A, C or ehrhart.
        #[arg(long)]
        structure: String,
        #[arg(long)]
        dump: PathBuf,
    },
    /// Run the verification checks on one subdivision or on the default corpus.
    Verify {
        #[arg(long, requires = "fine", conflicts_with = "corpus")]
        coarse: Option<PathBuf>,
        #[arg(long, requires = "coarse", conflicts_with = "corpus")]
        fine: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<String>,
        /// all, h, hstar, cd or props.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Write a simplicial refinement of a fan.
    Refine {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: &Cli) -> anyhow::Result<commands::Outcome> {
    match &cli.command {
        Command::Invariants { fan, which, cross_check } => {
            let which = commands::parse_selectors(which, commands::FAN_SELECTORS)?;
            commands::invariants(fan, &which, *cross_check)
        }
        Command::Mixed { coarse, fine, which } => {
            let which = commands::parse_selectors(which, commands::MIXED_SELECTORS)?;
            commands::mixed(coarse, fine, &which)
        }
        Command::Sheaf { fan, structure, dump } => {
            let structure = commands::parse_structure(structure)?;
            commands::sheaf(fan, structure, dump)
        }
        Command::Verify { coarse, fine, corpus, suite } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| anyhow::anyhow!("unknown suite {suite:?}; expected all, h, hstar, cd or props"))?;
            commands::verify(coarse.as_deref(), fine.as_deref(), corpus.as_deref(), suite)
        }
        Command::Refine { fan, out } => commands::refine(fan, out),
    }
}

/// `key: value` lines for the top level of a document; nested values are
/// printed as compact JSON.
fn render_text(doc: &Value) -> String {
    match doc {
        Value::Object(m) => {
            let mut out = String::new();
            for (k, v) in m {
                match v {
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    // one line per verification check
                    Value::Array(items) if k == "checks" => {
                        for c in items {
                            out.push_str(&format!("{} {}\n", c["status"].as_str().unwrap_or("?"), c["id"].as_str().unwrap_or("?")));
                        }
                    }
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
            out
        }
        other => format!("{other}\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.doc).expect("serializable") + "\n",
                Format::Text => render_text(&outcome.doc),
            };
            print!("{text}");
            if cli.verbose > 0 {
                eprintln!("fansheaf: {}", if outcome.failed { "a check failed" } else { "done" });
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("fansheaf: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
