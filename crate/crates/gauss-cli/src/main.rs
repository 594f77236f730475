use clap::Parser;

use gauss_cli::cli::Cli;
use gauss_cli::runner;

fn main() {
    // clap exits with code 2 on usage errors by itself
    let cli = Cli::parse();
    if let Err(e) = runner::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
