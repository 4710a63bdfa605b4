mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let format = cli.command.options().format;
    if matches!(cli.command, Command::Report(_)) && format != Format::Json {
        eprintln!("error: report emits JSON only");
        return ExitCode::from(1);
    }
    match commands::run(&cli.command) {
        Ok((output, consistent)) => {
            let Some(text) = output.render(format) else {
                eprintln!("error: {} has no {} output", cli.command.name(), format!("{format:?}").to_lowercase());
                return ExitCode::from(1);
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: consistency check failed");
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
