use std::process::ExitCode;

use clap::Parser;
use polyweb_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli, |var| std::env::var(var).ok()).and_then(|out| {
        out.emit()?;
        Ok(out.status)
    });
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("polyweb: {e:#}");
            ExitCode::from(2)
        }
    }
}
