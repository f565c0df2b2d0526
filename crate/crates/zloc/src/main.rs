use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = zloc::run(std::env::args_os());
    print!("{}", outcome.report);
    eprint!("{}", outcome.diagnostic);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code)
}
