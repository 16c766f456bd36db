use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use hirzecode_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match run(cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {:#}", f.error);
            f.code
        }
    };
    let _ = out.flush();
    ExitCode::from(status)
}
