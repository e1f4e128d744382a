use std::process::ExitCode;

fn main() -> ExitCode {
    blaschke::cli::run_from(std::env::args_os())
}
