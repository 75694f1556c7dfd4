use clap::error::ErrorKind;
use clap::Parser;

use specfact::harness::{run, Cli};

fn main() {
    // Exit-code contract: 0 success, 1 usage/parse, 2 numeric failure,
    // 3 not comparable. Help and version are successes, so clap's default
    // error exit (2) cannot be used directly.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}
