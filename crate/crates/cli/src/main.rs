use std::io::{self, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use lestrade::{Runner, DEFAULT_MARGIN};

#[derive(Parser)]
#[command(name = "lestrade", version, about = "Dependent type checker for Lestrade theories")]
struct Cli {
    /// Column after which displayed sorts are broken.
    #[arg(long, global = true, default_value_t = DEFAULT_MARGIN)]
    margin: i64,

    /// Directory in which `.lti` files are read and written.
    #[arg(long, global = true, default_value = ".")]
    dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check `<SRC>.lti`, writing the session log to `<LOG>.lti`.
    Readfile {
        src: String,
        log: String,
        /// Keep reading commands from standard input afterwards.
        #[arg(short, long)]
        interactive: bool,
    },
    /// Read commands from standard input, optionally logging to `<LOG>.lti`.
    Interface { log: Option<String> },
}

fn stem(name: &str) -> &str {
    name.strip_suffix(".lti").unwrap_or(name)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut runner = Runner::new(cli.dir)
        .with_console(Box::new(io::stdout()))
        .with_input(Box::new(BufReader::new(io::stdin())));
    runner.session.margin = cli.margin;
    match cli.command {
        Command::Readfile { src, log, interactive } => {
            let (src, log) = (stem(&src), stem(&log));
            runner
                .readfile(src, log)
                .with_context(|| format!("cannot run {src}.lti into {log}.lti"))?;
            let ok = runner.session.errors == 0;
            if interactive {
                runner.run_interactive(None);
            }
            Ok(ok)
        }
        Command::Interface { log } => {
            runner.run_interactive(log.as_deref().map(stem));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("lestrade: {e:#}");
            ExitCode::from(2)
        }
    }
}
