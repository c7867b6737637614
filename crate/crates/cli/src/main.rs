use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use rft_cli::args::Cli;
use rft_cli::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(output.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(output.status)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
