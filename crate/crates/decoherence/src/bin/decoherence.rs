use std::process::ExitCode;

fn main() -> ExitCode {
    decoherence::cli::main_with_args(std::env::args_os())
}
