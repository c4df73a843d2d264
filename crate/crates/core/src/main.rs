use std::process::ExitCode;

use clap::Parser;

use teamform::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
