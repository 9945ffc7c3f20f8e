use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = kronrep::cli::run(std::env::args_os().skip(1), &mut io::stdin().lock());
    // A closed pipe downstream is not an error of this command.
    let _ = io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
