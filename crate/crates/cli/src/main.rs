use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use diagres::wps::CharacterConvention;
use diagres_cli::error::CliError;
use diagres_cli::job::parse_job;
use diagres_cli::run::{render_error, run_job, Format, Overrides};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Chi,
    MinusChi,
}

/// Runs a computation described by a TOML job file.
#[derive(Debug, Parser)]
#[command(name = "diagres", version)]
struct Args {
    /// Job file; reads standard input when omitted or "-".
    job: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Degree window `a..b`, inclusive.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<[i64; 2]>,
    #[arg(long)]
    max_m: Option<i64>,
    #[arg(long)]
    max_degree: Option<i64>,
    #[arg(long, value_enum)]
    character_convention: Option<ConventionArg>,
    /// Lowest degree of the certified window.
    #[arg(long, allow_hyphen_values = true)]
    n0: Option<i64>,
}

fn parse_window(s: &str) -> Result<[i64; 2], String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok([a, b])
}

/// Whether the raw arguments ask for machine output, for errors raised
/// before they could be parsed.
fn wants_machine() -> bool {
    let args: Vec<String> = std::env::args().collect();
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "machine")
        || args.iter().any(|a| a == "--format=machine")
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn execute(args: &Args) -> Result<String, CliError> {
    let format = match args.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    let overrides = Overrides {
        window: args.window,
        max_m: args.max_m,
        max_degree: args.max_degree,
        character_convention: args.character_convention.map(|c| match c {
            ConventionArg::Chi => CharacterConvention::Chi,
            ConventionArg::MinusChi => CharacterConvention::MinusChi,
        }),
        n0: args.n0,
    };
    let job = overrides.apply(&parse_job(&read_input(&args.job)?)?)?;
    Ok(run_job(&job)?.render(format))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if wants_machine() => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or_default();
            let err = CliError::usage(first.trim_start_matches("error: "));
            eprint!("{}", render_error(&err, Format::Machine));
            return ExitCode::from(err.exit_code() as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match execute(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let format = match args.format {
                FormatArg::Human => Format::Human,
                FormatArg::Machine => Format::Machine,
            };
            eprint!("{}", render_error(&e, format));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
