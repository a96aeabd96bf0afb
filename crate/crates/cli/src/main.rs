use clap::Parser;

fn main() {
    let cli = qcar_cli::Cli::parse();
    if let Err(e) = qcar_cli::run(cli) {
        eprintln!("qcar: {e}");
        std::process::exit(e.exit_code());
    }
}
