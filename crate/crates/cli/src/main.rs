use std::process::ExitCode;

fn main() -> ExitCode {
    tmf3::app::main_with(std::env::args_os())
}
