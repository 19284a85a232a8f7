use std::process::ExitCode;

use groupent_cli::{run, THREADS_ENV};

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_ENV).ok();
    let code = run(
        std::env::args_os(),
        threads.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
