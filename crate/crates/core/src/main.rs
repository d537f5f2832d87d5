use std::process::ExitCode;

use clap::Parser;
use copmem::cli::{run, CliConfig};

fn main() -> ExitCode {
    let config = CliConfig::parse();
    match run(&config, std::io::stdout().lock()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("copmem: {e}");
            ExitCode::FAILURE
        }
    }
}
