use clap::Parser;

fn main() {
    let cli = lsverify::cli::Cli::parse();
    let stdout = std::io::stdout();
    match lsverify::cli::run(cli, &mut stdout.lock()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
