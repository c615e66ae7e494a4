use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(syment_cli::run(std::env::args_os().collect()))
}
