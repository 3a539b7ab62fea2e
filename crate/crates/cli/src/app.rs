use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::commands::{self, GenArgs, Output, SuiteArgs, TopologyArgs};
use crate::error::CliResult;
use crate::json;

#[derive(Debug, Parser)]
#[command(name = "typei", version, about = "Automorphisms of finite type I algebras, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random spec, elements and automorphism word.
    Gen(GenArgs),
    /// Check that an automorphism file describes an automorphism.
    Validate(FileArgs),
    /// Factor an automorphism as inner after center-induced.
    Decompose(FileArgs),
    /// Decide whether an automorphism is band preserving, hence inner.
    Classify(FileArgs),
    /// Center-valued norms of the elements in a file.
    Norm(FileArgs),
    /// Membership in the O and V neighborhoods.
    Topology(OutArgs<TopologyArgs>),
    /// Run every traced check on random instances.
    Suite(OutArgs<SuiteArgs>),
    /// Render a trace report as text.
    Report {
        input: PathBuf,
    },
}

#[derive(Debug, clap::Args)]
pub struct FileArgs {
    pub input: PathBuf,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct OutArgs<T: clap::Args> {
    #[command(flatten)]
    pub args: T,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// With `out`, JSON goes to the file and the summary to stdout; otherwise
/// JSON goes to stdout and the summary to stderr.
fn emit(output: &Output, out: Option<&Path>) -> CliResult<u8> {
    match out {
        Some(path) => {
            commands::write_file(path, &json::render(&output.doc))?;
            println!("{}", output.summary);
        }
        None => {
            print!("{}", json::render(&output.doc));
            std::io::stdout().flush().ok();
            eprintln!("{}", output.summary);
        }
    }
    Ok(output.code)
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Gen(a) => {
            println!("{}", commands::gen(&a)?);
            Ok(commands::EXIT_OK)
        }
        Command::Validate(f) => emit(&commands::validate(&f.input)?, f.out.as_deref()),
        Command::Decompose(f) => emit(&commands::decompose_cmd(&f.input)?, f.out.as_deref()),
        Command::Classify(f) => {
            let o = commands::classify(&f.input)?;
            // the class name always goes to stdout
            if f.out.is_none() && o.code == commands::EXIT_OK {
                println!("{}", o.summary);
            }
            emit(&o, f.out.as_deref())
        }
        Command::Norm(f) => emit(&commands::norm(&f.input)?, f.out.as_deref()),
        Command::Topology(t) => emit(&commands::topology(&t.args)?, t.out.as_deref()),
        Command::Suite(s) => emit(&commands::suite(&s.args)?, s.out.as_deref()),
        Command::Report { input } => {
            let o = commands::report(&input)?;
            println!("{}", o.summary);
            Ok(o.code)
        }
    }
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
