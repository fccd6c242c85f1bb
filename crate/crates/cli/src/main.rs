use clap::Parser;
use gapsub_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("{}", e.one_line());
            std::process::exit(e.exit_code());
        }
    }
}
