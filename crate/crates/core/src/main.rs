use clap::Parser;

fn main() {
    let cli = sympcoh::cli::Cli::parse();
    std::process::exit(sympcoh::cli::run(cli));
}
