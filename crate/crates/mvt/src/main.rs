use clap::Parser;
use mvt::cli::Cli;

fn main() {
    let cli = Cli::parse();
    let report = mvt::commands::run(&cli.command, &cli.opts);
    let out = if cli.opts.text {
        report.to_text()
    } else {
        report.to_json()
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => print!("{out}"),
    }
    std::process::exit(report.status.exit_code());
}
