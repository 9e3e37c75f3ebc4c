use clap::Parser;

fn main() {
    let cli = pchc_cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = pchc_cli::run(cli, &mut lock);
    std::process::exit(code);
}
