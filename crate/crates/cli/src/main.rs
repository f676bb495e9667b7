//! `dellac`: enumerate, count, map, label, walk, switch, mute, render and
//! verify. Exit status: 0 on success, 1 when a verification fails, 2 on a
//! usage or validation error.

mod cmd;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "dellac",
    version,
    about = "Dellac configurations, tableaux and surjective pistols"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (output order does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report wall-clock time in verification reports (otherwise 0).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dellac,
    Spdc,
    Tableau,
    Pistol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    /// Tableau to pistol.
    #[value(name = "phi")]
    Phi,
    /// Pistol to its canonical preimage.
    #[value(name = "Phi")]
    BigPhi,
    /// Pistol to its whole fiber.
    #[value(name = "phi-inverse")]
    PhiInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqKind {
    /// r_n = D_n(1) / 2^n.
    R,
    /// D_n(1).
    D1,
    /// The polynomial D_n(x).
    Poly,
}

/// An object given on the command line; falls back to stdin (one per line).
#[derive(clap::Args, Debug, Clone, Default)]
pub struct ObjectArgs {
    /// Object encoding such as `T n=2 cols=1,1,2,2`.
    #[arg(value_name = "OBJECT")]
    encoding: Option<String>,
    /// Same as OBJECT, for a tableau encoding.
    #[arg(long, conflicts_with_all = ["encoding", "pistol"])]
    tableau: Option<String>,
    /// Same as OBJECT, for a pistol encoding.
    #[arg(long, conflicts_with_all = ["encoding", "tableau"])]
    pistol: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every object of a family in canonical order.
    Enumerate {
        #[arg(long)]
        object: Family,
        /// Size parameter.
        #[arg(long)]
        n: usize,
    },
    /// Size of a family.
    Count {
        #[arg(long)]
        object: Family,
        /// Size parameter.
        #[arg(long)]
        n: usize,
    },
    /// Statistics of one object, or their distribution over a family.
    Stats {
        /// Summarise a whole family instead of one object.
        #[arg(long, requires = "n")]
        object: Option<Family>,
        /// Size of the family.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: ObjectArgs,
    },
    /// Sequence values for 0..=n, optionally checked against a b-file.
    Sequence {
        /// Last index.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SeqKind::R)]
        which: SeqKind,
        #[arg(long)]
        bfile: Option<std::path::PathBuf>,
    },
    /// Apply one of the maps between tableaux and pistols.
    Map {
        #[arg(value_enum)]
        kind: MapKind,
        #[command(flatten)]
        input: ObjectArgs,
    },
    /// Pistol labels of a tableau with the rule that fixed each one.
    Labels {
        #[command(flatten)]
        input: ObjectArgs,
    },
    /// Walk from a box of column j of a (partial) tableau; 0 marks an empty row.
    Tpath {
        /// `T n=<n> cols=...` by physical row, 0 for an empty row.
        #[arg(long)]
        tableau: String,
        /// Column to walk from.
        #[arg(long)]
        j: usize,
        /// Starting logical row; omit to print the whole bijection of column j.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Switch a tableau to the given signs (all sign vectors if omitted).
    Switch {
        #[command(flatten)]
        input: ObjectArgs,
        /// Comma-separated signs, e.g. `-1,1`.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Mute a tableau at a twin column.
    Mute {
        #[command(flatten)]
        input: ObjectArgs,
        #[arg(long)]
        column: usize,
        #[arg(long, value_parser = ["alpha", "beta"])]
        gamma: String,
    },
    /// Fiber of a pistol under phi.
    Fiber {
        #[command(flatten)]
        input: ObjectArgs,
        #[arg(long, default_value = "closure", value_parser = ["closure", "brute"])]
        mode: String,
    },
    /// Draw an object as ASCII (text) or SVG.
    Render {
        #[command(flatten)]
        input: ObjectArgs,
        /// Overlay pistol labels on a tableau.
        #[arg(long)]
        labels: bool,
    },
    /// Run verification checks.
    Verify {
        /// Check name, or `all`.
        #[arg(long)]
        check: String,
        /// Size to check (required except for `golden`).
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot set up {k} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = cmd::Ctx {
        format: cli.format,
        timing: cli.timing,
    };
    match cmd::run(&ctx, cli.command) {
        Ok(cmd::Outcome::Ok) => ExitCode::SUCCESS,
        Ok(cmd::Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        super::Cli::command().debug_assert();
    }
}
