use std::process::ExitCode;

fn main() -> ExitCode {
    let code = pucc_cli::run_cli(std::env::args_os());
    ExitCode::from(code)
}
