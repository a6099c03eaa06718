use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = vinc_cli::run(&argv, &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
