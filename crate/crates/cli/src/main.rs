use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logdiv_core::{Budget, Error, TermOrder};
use serde_json::{json, Map, Value};

mod commands;
mod corpus;
mod render;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "logdiv", version, about = "Exact computations for free divisors and logarithmic comparison verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Term order for printed Groebner bases: lex or degrevlex.
    #[arg(long, global = true, default_value = "degrevlex")]
    order: String,
    /// Step budget per stage; defaults to LOGDIV_BUDGET or a built-in value.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_steps: Option<u64>,
    /// Degree up to which graded Koszul homology is computed.
    #[arg(long, global = true)]
    truncation: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Polynomial, e.g. "x^2 - y^3".
    #[arg(allow_hyphen_values = true)]
    pub polynomial: Option<String>,
    /// Read the polynomial from a file instead.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Comma-separated variable names; inferred from the input when absent.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Logarithmic derivations and the Saito freeness test.
    Derlog(Input),
    /// Quasihomogeneity weights.
    Weights(Input),
    /// Koszul test on the symbols of a Saito basis.
    Koszul(Input),
    /// Build and verify the logarithmic Spencer complex.
    Spencer {
        #[command(flatten)]
        input: Input,
        /// Print the formal differentials for symbolic δ and α in this many variables.
        #[arg(long)]
        symbolic: Option<usize>,
    },
    /// Order-one candidate and the full annihilator of 1/f.
    Ann(Input),
    /// Global b-function.
    Bfun {
        #[command(flatten)]
        input: Input,
        /// Degree bound of the functional-equation cross-check.
        #[arg(long)]
        oracle_bound: Option<u32>,
    },
    /// Full logarithmic comparison report.
    Lct {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        witness_order: u32,
        #[arg(long)]
        witness_degree: Option<u32>,
        /// Skip Ann(f^s) and the b-function.
        #[arg(long)]
        skip_bfunction: bool,
    },
    /// Lie algebra cohomology of a linear free divisor.
    Liecoh(Input),
    /// Hyperplane arrangement combinatorics.
    Arrangement {
        /// Linear forms separated by newlines or semicolons.
        #[arg(allow_hyphen_values = true)]
        forms: Option<String>,
        /// File with one linear form per line.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        vars: Option<String>,
        /// Coordinate arrangement in this many variables.
        #[arg(long, conflicts_with_all = ["forms", "file", "braid"])]
        boolean: Option<usize>,
        /// Braid arrangement x_i - x_j in this many variables.
        #[arg(long, conflicts_with_all = ["forms", "file", "boolean"])]
        braid: Option<usize>,
    },
    /// Run `lct` on the regression corpus, one process per example.
    Corpus {
        /// Also write each example's report into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Number of examples run at once.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long)]
        skip_bfunction: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Derlog(_) => "derlog",
            Command::Weights(_) => "weights",
            Command::Koszul(_) => "koszul",
            Command::Spencer { .. } => "spencer",
            Command::Ann(_) => "ann",
            Command::Bfun { .. } => "bfun",
            Command::Lct { .. } => "lct",
            Command::Liecoh(_) => "liecoh",
            Command::Arrangement { .. } => "arrangement",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Shared settings handed to every command.
pub struct Job {
    pub order: TermOrder,
    pub budget: Budget,
    pub truncation: Option<u32>,
}

/// How a command ended.
pub enum Outcome {
    Ok,
    /// Finished, but some stage ran out of budget.
    Partial(Vec<String>),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::UnknownVariable(_) | Error::ZeroPolynomial | Error::InvalidOrder(_) => 2,
        Error::Timeout { .. } | Error::Cancelled => 3,
        Error::Certificate(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let mut input = Map::new();
    input.insert("order".into(), json!(cli.order));
    let budget = match cli.budget_steps {
        Some(n) => Budget::new(n),
        None => Budget::from_env(),
    };
    input.insert("budget_steps".into(), json!(budget.max_steps()));
    if let Some(t) = cli.truncation {
        input.insert("truncation".into(), json!(t));
    }
    let mut result = Map::new();
    let outcome = TermOrder::parse(&cli.order).and_then(|order| {
        let job = Job { order, budget, truncation: cli.truncation };
        if let Command::Corpus { dir, jobs, skip_bfunction } = &cli.command {
            input.insert("skip_bfunction".into(), json!(skip_bfunction));
            let mut forwarded = vec!["--order".to_string(), cli.order.clone()];
            forwarded.extend(cli.budget_steps.map(|b| ["--budget-steps".to_string(), b.to_string()]).into_iter().flatten());
            let opts = corpus::CorpusOptions { forwarded, dir: dir.clone(), jobs: *jobs as usize, skip_bfunction: *skip_bfunction };
            return corpus::run(&opts, &mut result);
        }
        run(&cli.command, &job, &mut input, &mut result)
    });
    let (status, code, error) = match &outcome {
        Ok(Outcome::Ok) => ("ok", 0u8, None),
        Ok(Outcome::Partial(stages)) => ("timeout", 3, Some(format!("step budget exhausted in {}", stages.join(", ")))),
        Err(e) => (
            match exit_code(e) {
                3 => "timeout",
                _ => "error",
            },
            exit_code(e),
            Some(e.to_string()),
        ),
    };
    let mut env = Map::new();
    env.insert("schema_version".into(), json!(SCHEMA_VERSION));
    env.insert("version".into(), json!(format!("logdiv {}", env!("CARGO_PKG_VERSION"))));
    env.insert("command".into(), json!(command));
    env.insert("input".into(), Value::Object(input));
    env.insert("status".into(), json!(status));
    env.insert("result".into(), Value::Object(result));
    if let Some(msg) = &error {
        env.insert("error".into(), json!(msg));
    }
    let env = Value::Object(env);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&env).expect("serializable") + "\n",
        Format::Text => render::text(&env),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("logdiv: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if let Some(msg) = error {
        eprintln!("logdiv: {msg}");
    }
    ExitCode::from(code)
}

fn run(command: &Command, job: &Job, input: &mut Map<String, Value>, out: &mut Map<String, Value>) -> logdiv_core::Result<Outcome> {
    match command {
        Command::Derlog(i) => commands::derlog(&commands::read_polynomial(i, input)?, job, out),
        Command::Weights(i) => commands::weights(&commands::read_polynomial(i, input)?, out),
        Command::Koszul(i) => commands::koszul(&commands::read_polynomial(i, input)?, job, out),
        Command::Spencer { input: i, symbolic } => match symbolic {
            Some(n) => {
                input.insert("symbolic".into(), json!(n));
                commands::spencer_symbolic(*n, out)
            }
            None => commands::spencer(&commands::read_polynomial(i, input)?, job, out),
        },
        Command::Ann(i) => commands::ann(&commands::read_polynomial(i, input)?, job, out),
        Command::Bfun { input: i, oracle_bound } => {
            let f = commands::read_polynomial(i, input)?;
            if let Some(b) = oracle_bound {
                input.insert("oracle_bound".into(), json!(b));
            }
            commands::bfun(&f, *oracle_bound, job, out)
        }
        Command::Lct { input: i, witness_order, witness_degree, skip_bfunction } => {
            let f = commands::read_polynomial(i, input)?;
            input.insert("witness_order".into(), json!(witness_order));
            if let Some(d) = witness_degree {
                input.insert("witness_degree".into(), json!(d));
            }
            input.insert("skip_bfunction".into(), json!(skip_bfunction));
            let opts = logdiv_core::lct::LctOptions {
                witness_order: *witness_order,
                witness_degree: *witness_degree,
                skip_full_annihilator: *skip_bfunction,
                ..Default::default()
            };
            commands::lct(&f, &opts, job, out)
        }
        Command::Liecoh(i) => commands::liecoh(&commands::read_polynomial(i, input)?, job, out),
        Command::Arrangement { forms, file, vars, boolean, braid } => {
            let a = commands::read_arrangement(forms.as_deref(), file.as_ref(), vars.as_deref(), *boolean, *braid, input)?;
            commands::arrangement(&a, out)
        }
        Command::Corpus { .. } => unreachable!("handled in main"),
    }
}
