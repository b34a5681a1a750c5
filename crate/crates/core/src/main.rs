use clap::Parser;

fn main() {
    let cli = ymalg::cli::Cli::parse();
    std::process::exit(ymalg::cli::run(&cli));
}
