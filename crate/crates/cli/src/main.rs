use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rvbound_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = run(&cli, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}
