use clap::Parser;

fn main() {
    let args = annihil::cli::Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = annihil::cli::run(&args, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
