use std::process::ExitCode;

fn main() -> ExitCode {
    planarity_cli::run(std::env::args_os())
}
