use std::process::ExitCode;

use clap::Parser;
use hankel_cli::app::{run, Cli};
use hankel_cli::exit_code;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            println!("{}", outcome.text);
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
