use ascurves::polyrat::with_seed;
use ascurves_cli::{run, Cli};
use clap::Parser;
use std::io::Write;

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() {
    let cli = Cli::parse();
    match with_seed(cli.seed, || run(&cli)) {
        Ok(report) => {
            if cli.json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&report.to_text());
            }
        }
        Err(e) => {
            if cli.json {
                let body = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
                emit(&format!("{body}\n"));
            } else {
                eprintln!("error: {}", e.diagnostic());
            }
            std::process::exit(e.exit_code());
        }
    }
}
