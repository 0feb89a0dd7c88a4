use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr().lock();
    let code = eitsqueeze::run(std::env::args_os(), &mut out, &mut err);
    let code = match out.flush() {
        Ok(()) => code,
        Err(_) => eitsqueeze::EXIT_IO,
    };
    ExitCode::from(code as u8)
}
