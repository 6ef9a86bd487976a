use clap::Parser;
use twoforest::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    print!("{}", outcome.output);
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    std::process::exit(outcome.exit_code());
}
