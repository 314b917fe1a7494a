use clap::Parser;

fn main() {
    std::process::exit(wro::cli::run(wro::cli::Cli::parse()));
}
