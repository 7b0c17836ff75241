mod report;
mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qborch::algebra::Algebra;
use qborch::datum::{validate, Datum, DatumSpec};

use report::{datum_hash, Check, Report};
use verbs::{CliError, Session, Verb, VerbArgs};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Checks and computations for quantum groups of colored Borcherds-Cartan data.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 parse error,
/// 3 depth bound too small, 4 arguments do not fit the verb, 5 invalid datum.
#[derive(Debug, Parser)]
#[command(name = "qborch", version)]
struct Cli {
    /// JSON datum with keys index, A, s, m, theta.
    #[arg(long)]
    datum: PathBuf,
    /// Largest root height kept.
    #[arg(long, default_value_t = 5)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum)]
    verb: Verb,
    /// Highest weight such as `h1=1,d1=0`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Element such as `e[1,1]*q^{h:1;d:0}`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

fn emit(cli: &Cli, report: &Report) {
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    print!("{text}");
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let args = VerbArgs { lambda: cli.lambda.clone(), mu: cli.mu.clone(), nu: cli.nu.clone(), x: cli.x.clone(), y: cli.y.clone() };
    let text = std::fs::read_to_string(&cli.datum).map_err(|e| CliError::Datum(format!("{}: {e}", cli.datum.display())))?;
    let spec = DatumSpec::from_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", cli.datum.display())))?;
    let hash = datum_hash(&spec);
    if let Err(e) = validate(&spec) {
        if cli.verb == Verb::Validate {
            let check = Check::new("datum axioms", "symmetrizable colored Borcherds-Cartan datum", false, e.to_string());
            emit(cli, &Report { verb: cli.verb.name(), datum_hash: hash, depth: cli.depth, checks: vec![check] });
        }
        return Err(CliError::Datum(e.to_string()));
    }
    args.check_against(cli.verb)?;
    let datum = Datum::new(spec).map_err(|e| CliError::Datum(e.to_string()))?;
    let alg = Algebra::new(datum, cli.depth);
    let session = Session { alg: &alg, depth: cli.depth, args };
    let checks = session.run(cli.verb)?;
    let report = Report { verb: cli.verb.name(), datum_hash: hash, depth: cli.depth, checks };
    emit(cli, &report);
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
