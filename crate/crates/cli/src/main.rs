use std::io::Write;
use std::process::ExitCode;

use ay_cli::args::Cli;
use ay_cli::commands::{self, Context};
use ay_cli::{exit_code, EXIT_CHECK_FAILED, EXIT_INTERNAL, EXIT_OK};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context::from_cli(&cli);
    let report = match commands::run(&cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ay: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let body = report.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("ay: cannot write output: {e}");
        return ExitCode::from(EXIT_INTERNAL as u8);
    }
    if report.passed() {
        ExitCode::from(EXIT_OK as u8)
    } else {
        for c in report.checks.iter().filter(|c| !c.passed) {
            eprintln!("ay: check failed: {}", c.name);
        }
        ExitCode::from(EXIT_CHECK_FAILED as u8)
    }
}
