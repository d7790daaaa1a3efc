use clap::Parser;
use dualsurf_cli::{exit, main_with, Cli};

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => main_with(cli),
        // clap's own status for usage errors would read as a verification failure
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                exit::INVALID
            } else {
                exit::OK
            }
        }
    };
    std::process::exit(code);
}
