use clap::Parser;

fn main() {
    env_logger::init();
    let cli = hcx::cli::Cli::parse();
    std::process::exit(hcx::cli::run(cli));
}
