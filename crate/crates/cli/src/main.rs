use clap::Parser;
use sasakian_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            std::process::exit(outcome.code);
        }
        Err(e) => {
            eprintln!("sasprod: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
