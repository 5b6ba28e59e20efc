use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use mvroot_cli::execute;

/// Exact square roots, ideals and closures of pseudo MV-algebras.
///
/// Examples:
///   mvroot sqrt 'M(3)' 2/3
///   mvroot sqrt 'gamma(twist3(Z))' '(1,-2,2)' --bound 4
///   mvroot closure 'prod(M(1),M(4))' --kind sqrt --json
///   mvroot verify-paper
#[derive(Parser, Debug)]
#[command(name = "mvroot", version, verbatim_doc_comment)]
struct Cli {
    /// Read one command per line from a file (`-` for stdin) instead of the arguments.
    #[arg(long, short = 'f')]
    file: Option<String>,

    /// The command: a verb, an algebra, element arguments and flags.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    command: Vec<String>,
}

fn emit(text: &str) -> i32 {
    let (report, json) = execute(text);
    let text = if json { report.to_json() + "\n" } else { report.to_text() };
    // a closed pipe downstream is not an error of the command
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    report.exit_code()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.file {
        Some(path) => {
            let mut text = String::new();
            let read = if path == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|t| text = t)
            };
            if let Err(e) = read {
                eprintln!("mvroot: cannot read {path}: {e}");
                return ExitCode::from(3);
            }
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(emit)
                .max()
                .unwrap_or(0)
        }
        None if cli.command.is_empty() => {
            eprintln!("mvroot: no command given (try `mvroot --help`)");
            3
        }
        None => emit(&cli.command.join(" ")),
    };
    ExitCode::from(code as u8)
}
