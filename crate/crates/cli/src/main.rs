use std::process::ExitCode;

fn main() -> ExitCode {
    corephrase::cli::run()
}
