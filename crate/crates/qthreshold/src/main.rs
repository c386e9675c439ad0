use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qthreshold::cli::run(std::env::args_os()))
}
