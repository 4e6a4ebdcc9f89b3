use std::process::ExitCode;

use chiralqw_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.flags) {
        Ok(done) => {
            for line in &done.lines {
                println!("{line}");
            }
            println!("results: {}", done.dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
