mod config;
mod run;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{parse_config_text, Cli, RunConfig};

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("idealdual: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let file = match &cli.flags.config {
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_config_text(&t))
        {
            Ok(map) => map,
            Err(e) => return usage_error(&format!("{}: {e}", path.display())),
        },
        None => BTreeMap::new(),
    };
    let cfg = match RunConfig::resolve(cli.command, &cli.flags, &file) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let out = match run::execute(&cfg) {
        Ok(out) => out,
        Err(e) => return usage_error(&format!("{}: {e}", cfg.command.name())),
    };
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &out.bytes),
        None => std::io::stdout().lock().write_all(&out.bytes),
    };
    if let Err(e) = written {
        eprintln!("idealdual: writing output: {e}");
        return ExitCode::from(2);
    }
    if out.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
