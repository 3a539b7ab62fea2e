use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(typei_cli::run(std::env::args_os()))
}
