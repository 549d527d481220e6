use std::io::Write;
use std::process::ExitCode;

use arcurve_cli::{run, Cli, INTERNAL_ERROR};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let mut status = out.status;
    for (path, text) in &out.files {
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            status = INTERNAL_ERROR;
        }
    }
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(status as u8)
}
