use clap::Parser;

fn main() {
    let cli = negarr::cli::Cli::parse();
    std::process::exit(negarr::cli::run(cli));
}
