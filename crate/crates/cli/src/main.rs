use clap::Parser;

fn main() {
    std::process::exit(summa_cli::run(summa_cli::Cli::parse()));
}
