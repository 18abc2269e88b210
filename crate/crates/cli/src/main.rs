use clap::Parser;
use hsbb_cli::{dispatch, write_output, Cli};

fn main() {
    let cli = Cli::parse();
    let result = dispatch(&cli).and_then(|out| write_output(&cli.common, &out));
    if let Err(e) = result {
        eprintln!("hsbb: {e}");
        std::process::exit(e.exit_code());
    }
}
