use std::process::ExitCode;

use asymlab::cli::{execute, exit_code, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("ASYMLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // ignore failure: the pool may already exist
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("asymlab: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match cli.command.out() {
        Some(path) => std::fs::write(path, &output.body),
        None => {
            print!("{}", output.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("asymlab: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if output.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
