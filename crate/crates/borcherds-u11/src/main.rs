use clap::Parser;

fn main() {
    let cli = borcherds_u11::cli::Cli::parse();
    std::process::exit(borcherds_u11::cli::run(cli));
}
