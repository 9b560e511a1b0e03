use std::io;
use std::panic;
use std::process;

fn main() {
    let code = panic::catch_unwind(|| {
        let stdin = io::stdin();
        let mut input = stdin.lock();
        let mut out = io::stdout().lock();
        let mut err = io::stderr().lock();
        lexval::cli::run(std::env::args_os(), &mut input, &mut out, &mut err)
    })
    .unwrap_or(lexval::cli::ExitStatus::Internal.code());
    process::exit(code);
}
