use clap::Parser;

fn main() {
    let cli = talbot_cli::Cli::parse();
    if let Err(err) = talbot_cli::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
