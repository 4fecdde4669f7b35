use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use fibsum::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match run(cli, &mut out, &mut err) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() && code == 0 {
        return ExitCode::from(fibsum::app::EXIT_RESOURCE as u8);
    }
    ExitCode::from(code as u8)
}
