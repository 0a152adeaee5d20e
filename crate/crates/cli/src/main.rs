use std::process::ExitCode;

use clap::Parser;
use derivring::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("derivring: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
