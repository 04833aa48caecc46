use std::process::ExitCode;

fn main() -> ExitCode {
    toricdyn_cli::main_entry()
}
