use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = matnum::cli::dispatch(std::env::args_os(), &mut io::stdin());
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    ExitCode::from(out.code as u8)
}
