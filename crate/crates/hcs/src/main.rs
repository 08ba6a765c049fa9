use std::process::ExitCode;

use clap::Parser;

use hcs::cli::{self, Cli};

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => ExitCode::from(cli::run(cli)),
        Err(e) => {
            // Help and version requests print to stdout and succeed;
            // real argument errors belong on stderr with the usage code.
            let use_stderr = e.use_stderr();
            let _ = e.print();
            if use_stderr {
                ExitCode::from(cli::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
