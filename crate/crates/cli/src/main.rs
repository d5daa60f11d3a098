use std::io;
use std::process::ExitCode;

use clap::Parser;
use ordmoment_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = ordmoment_cli::run(&cli, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
