use clap::Parser;

fn main() {
    let cli = adelic_core::cli::Cli::parse();
    std::process::exit(adelic_core::cli::main_with(cli));
}
