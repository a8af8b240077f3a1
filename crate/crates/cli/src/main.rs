use std::io::{self, Write};
use std::process;

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = quml::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    process::exit(code);
}
