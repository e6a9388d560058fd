use std::process::ExitCode;

fn main() -> ExitCode {
    choreo_braids::cli::main_entry()
}
