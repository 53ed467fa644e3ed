use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = phasat_cli::Cli::parse();
    let result = phasat_cli::run(cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(result.stdout.as_bytes());
    let _ = stdout.flush();
    if !result.stderr.is_empty() {
        eprint!("{}", result.stderr);
    }
    ExitCode::from(result.code.clamp(0, 255) as u8)
}
