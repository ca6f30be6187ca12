use clap::Parser;
use uqcov::cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(tables) => {
            let text = render(&tables, cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("uqcov: cannot write {}: {e}", path.display());
                        std::process::exit(1);
                    }
                }
                None => print!("{text}"),
            }
        }
        Err(e) => {
            eprintln!("uqcov: {e}");
            std::process::exit(1);
        }
    }
}
