use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use smatrix_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.machine;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let outcome = run(cli, &mut lock);
    let _ = lock.write_all(outcome.render(machine).as_bytes());
    let _ = lock.flush();
    eprint!("{}", outcome.notes);
    ExitCode::from(outcome.exit_code as u8)
}
