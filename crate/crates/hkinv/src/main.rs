//! Command-line front end for the exact hyperkähler toolkit.
//!
//! Every subcommand prints a text summary by default or the full report
//! envelope with `--json`. The process exits 0 iff all verifications
//! passed, 1 on a failed verification or computation error, and 2 on a
//! usage error. `HK_THREADS` caps the worker-thread pool.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hkinv::error::Error;
use hkinv::report::{
    cmd_analyze, cmd_check, cmd_classify, cmd_finite_map, cmd_invariance, cmd_reference_check,
    cmd_structure, BasisSource, CommandOutcome, StructureSource,
};

#[derive(Parser)]
#[command(
    name = "hkinv",
    about = "Exact quaternionic structures on R^{4n} and their invariance algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure from a sign pattern or load one from JSON.
    Structure(InputArgs),
    /// Validate the quaternionic relations of a structure.
    Check(InputArgs),
    /// Solve the infinitesimal invariance equation.
    Invariance(InputArgs),
    /// Structure constants, Killing form, and form predicates.
    Analyze(InputArgs),
    /// Classify the invariance algebra: su(2) ideal plus type C_n part.
    Classify(InputArgs),
    /// Extract and verify the finite rotation induced by an orthogonal map.
    FiniteMap(FiniteMapArgs),
    /// Run the built-in rank-2 reference comparisons.
    ReferenceCheck(OutputArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the full JSON report envelope instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InputArgs {
    /// Sign pattern such as "++-" (shorthand for --pattern).
    #[arg(value_name = "PATTERN", allow_hyphen_values = true)]
    positional: Option<String>,
    /// Sign pattern such as "++-".
    #[arg(long, value_name = "PATTERN", allow_hyphen_values = true)]
    pattern: Option<String>,
    /// All-positive pattern with this many blocks.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// JSON input file.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FiniteMapArgs {
    /// JSON file holding the orthogonal map as a matrix.
    #[arg(long, value_name = "FILE", required = true)]
    input: PathBuf,
    /// Sign pattern of the structure the map acts on.
    #[arg(long, value_name = "PATTERN", allow_hyphen_values = true)]
    pattern: Option<String>,
    /// All-positive pattern with this many blocks.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Error> {
    std::fs::read(path)
        .map_err(|e| Error::ParseError(format!("cannot read {}: {e}", path.display())))
}

fn pattern_of(positional: &Option<String>, pattern: &Option<String>, n: &Option<usize>)
    -> Result<Option<String>, Error>
{
    let mut sources: Vec<String> = Vec::new();
    if let Some(p) = positional {
        sources.push(p.clone());
    }
    if let Some(p) = pattern {
        sources.push(p.clone());
    }
    if let Some(k) = n {
        if *k == 0 {
            return Err(Error::ParseError("--n must be positive".into()));
        }
        sources.push("+".repeat(*k));
    }
    match sources.len() {
        0 => Ok(None),
        1 => Ok(Some(sources.remove(0))),
        _ => Err(Error::ParseError(
            "give exactly one of PATTERN, --pattern, --n".into(),
        )),
    }
}

impl InputArgs {
    fn structure_source(&self) -> Result<StructureSource, Error> {
        let pattern = pattern_of(&self.positional, &self.pattern, &self.n)?;
        match (pattern, &self.input) {
            (Some(_), Some(_)) => Err(Error::ParseError(
                "--input conflicts with a pattern argument".into(),
            )),
            (Some(p), None) => Ok(StructureSource::Pattern(p)),
            (None, Some(path)) => Ok(StructureSource::Json(read_input(path)?)),
            (None, None) => Err(Error::ParseError(
                "an input is required: PATTERN, --pattern, --n, or --input".into(),
            )),
        }
    }

    fn basis_source(&self) -> Result<BasisSource, Error> {
        let pattern = pattern_of(&self.positional, &self.pattern, &self.n)?;
        match (pattern, &self.input) {
            (Some(_), Some(_)) => Err(Error::ParseError(
                "--input conflicts with a pattern argument".into(),
            )),
            (Some(p), None) => Ok(BasisSource::Pattern(p)),
            (None, Some(path)) => Ok(BasisSource::Json(read_input(path)?)),
            (None, None) => Err(Error::ParseError(
                "an input is required: PATTERN, --pattern, --n, or --input".into(),
            )),
        }
    }
}

fn init_threads() -> Result<(), Error> {
    if let Ok(raw) = std::env::var("HK_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| Error::ParseError(format!("HK_THREADS must be an integer, got {raw:?}")))?;
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| Error::ParseError(format!("cannot size thread pool: {e}")))?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(CommandOutcome, bool), Error> {
    let (outcome, json) = match &cli.command {
        Command::Structure(args) => (cmd_structure(&args.structure_source()?)?, args.output.json),
        Command::Check(args) => (cmd_check(&args.structure_source()?)?, args.output.json),
        Command::Invariance(args) => (cmd_invariance(&args.structure_source()?)?, args.output.json),
        Command::Analyze(args) => (cmd_analyze(&args.basis_source()?)?, args.output.json),
        Command::Classify(args) => (cmd_classify(&args.structure_source()?)?, args.output.json),
        Command::FiniteMap(args) => {
            let lambda = read_input(&args.input)?;
            let pattern = pattern_of(&None, &args.pattern, &args.n)?.ok_or_else(|| {
                Error::ParseError("a structure pattern is required: --pattern or --n".into())
            })?;
            (
                cmd_finite_map(&lambda, &StructureSource::Pattern(pattern))?,
                args.output.json,
            )
        }
        Command::ReferenceCheck(args) => (cmd_reference_check()?, args.json),
    };
    Ok((outcome, json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok((outcome, json)) => {
            let rendered = if json {
                let mut line =
                    serde_json::to_string(&outcome.envelope).expect("serializable envelope");
                line.push('\n');
                line
            } else {
                outcome.envelope.text.clone()
            };
            // A closed pipe downstream is not a failure of the verification.
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::ParseError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
