use std::process::ExitCode;

fn main() -> ExitCode {
    let status = mobas::cli::run(std::env::args_os());
    ExitCode::from(status.code() as u8)
}
