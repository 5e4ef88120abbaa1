//! `itl`: exit 0 on success, 1 when a check fails, 2 on bad usage or input.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn threads_from_env() {
    if let Some(n) = std::env::var("ITL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            // only fails if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    threads_from_env();
    let result = match &cli.command {
        Command::List { format } => commands::list(*format),
        Command::CheckRel(a) => commands::check_rel(a),
        Command::Profile(a) => commands::profile(a),
        Command::Verify(a) => commands::verify(a),
        Command::Demo { id, seed, budget } => commands::demo(*id, *seed, *budget),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
