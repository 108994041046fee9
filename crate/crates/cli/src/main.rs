mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::render::Format;

#[derive(Parser)]
#[command(
    name = "chordgroup",
    version,
    about = "Group and groupoid transformations of chords"
)]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a system file.
    Verify {
        /// System file, or `builtin:d24` / `builtin:malphabeta`.
        system: String,
    },
    /// Label each consecutive pair of chords in a sequence file.
    Analyze {
        system: String,
        /// Sequence file (`-` for standard input).
        sequence: PathBuf,
        /// Left-action labels (group systems).
        #[arg(long)]
        left: bool,
        /// Right-action labels (group systems).
        #[arg(long)]
        right: bool,
        /// Morphism labels (groupoid systems).
        #[arg(long)]
        groupoid: bool,
    },
    /// List the generalized inversions between two types.
    Enumerate {
        system: String,
        type1: String,
        type2: String,
        /// Keep operators whose image of the root-0 chord shares this many tones.
        #[arg(long)]
        min_common_tones: Option<usize>,
    },
    /// Print the composition table or an action table.
    #[command(group(ArgGroup::new("kind").required(true).args(["cayley", "action"])))]
    Table {
        system: String,
        #[arg(long)]
        cayley: bool,
        #[arg(long, value_enum)]
        action: Option<Side>,
    },
    /// Print the formal-inversion groupoid as a DOT graph.
    Dot { system: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { system } => commands::verify(&system, cli.format),
        Command::Analyze {
            system,
            sequence,
            left,
            right,
            groupoid,
        } => commands::analyze(
            &system,
            &sequence,
            commands::Families {
                left,
                right,
                groupoid,
            },
            cli.format,
        ),
        Command::Enumerate {
            system,
            type1,
            type2,
            min_common_tones,
        } => commands::enumerate(&system, &type1, &type2, min_common_tones, cli.format),
        Command::Table {
            system,
            cayley,
            action,
        } => {
            let kind = match (cayley, action) {
                (true, _) => commands::TableKind::Cayley,
                (false, Some(Side::Left)) => commands::TableKind::Left,
                (false, Some(Side::Right)) | (false, None) => commands::TableKind::Right,
            };
            commands::table(&system, kind, cli.format)
        }
        Command::Dot { system } => commands::dot(&system),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
