//! `detpoly`: ask whether a polynomial factors through a polynomial map.
//!
//! Every subcommand reads the map with `--vars` and `--map`, runs one
//! decision procedure, re-verifies the certificate it produced and prints a
//! report as text or JSON.

mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{ExitCode, Report};

#[derive(Debug, Parser)]
#[command(
    name = "detpoly",
    version,
    about = "Decide whether g is determined by, or a function of, a polynomial map f",
    after_help = "Map components are separated by ';' (e.g. --map \"t1;t1*t2\").\n\
                  Results about f's image are written in variables x1, x2, ...\n\
                  \"Determined\" means determined over the algebraic closure of the field.\n\
                  Exit codes: 0 decided, 2 unknown, 3 precondition failure, 4 step budget \
                  exhausted, 5 parse error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub query: Query,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Are the components of f algebraically independent?
    Indep,
    /// Ideal of the Zariski closure of the range of f.
    RangeClosure,
    /// Monic generator q of the closure of {(f(a), g(a))}.
    IrrClosure,
    /// Is g = p(f) for a polynomial p?
    MemberRing,
    /// Is g = r(f)/s(f) for polynomials r, s?
    MemberField,
    /// Smallest ν with g^(χ^ν) in k[f] (positive characteristic).
    Radchi,
    /// Is g determined by f? Decided by the double-point ideal.
    Determined,
    /// Determinedness by membership; requires f almost surjective.
    DeterminedThm,
    /// Is f almost surjective? Yes, No with a witness, or Unknown.
    AlmostSurj,
    /// From a divisibility witness (--p, --q), build b determined but not in k[f].
    Witness,
    /// Does p(f) divide q(f)?
    Divides,
    /// Recover p with p(f) = g (or g^(χ^ν)).
    Decompose,
    /// Dimension of the ideal given by --ideal.
    Dim,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Indep => "indep",
            Command::RangeClosure => "range-closure",
            Command::IrrClosure => "irr-closure",
            Command::MemberRing => "member-ring",
            Command::MemberField => "member-field",
            Command::Radchi => "radchi",
            Command::Determined => "determined",
            Command::DeterminedThm => "determined-thm",
            Command::AlmostSurj => "almost-surj",
            Command::Witness => "witness",
            Command::Divides => "divides",
            Command::Decompose => "decompose",
            Command::Dim => "dim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Query {
    /// Field characteristic: 0 for the rationals, or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Comma-separated domain variables, e.g. t1,t2.
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Components of f separated by ';'.
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// The polynomial g.
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Polynomial p in x1..xm (witness, divides).
    #[arg(long, global = true)]
    pub p: Option<String>,
    /// Polynomial q in x1..xm (witness, divides).
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Generators separated by ';' (dim).
    #[arg(long, global = true)]
    pub ideal: Option<String>,
    /// Monomial order of the input context.
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    /// Largest ν tried by the rad_χ search.
    #[arg(long, global = true)]
    pub nu_cap: Option<u32>,
    /// Largest power tried when expanding an almost-surjectivity witness.
    #[arg(long, global = true)]
    pub power_cap: Option<u32>,
    /// Reduction steps allowed per Gröbner basis.
    #[arg(long, global = true)]
    pub step_budget: Option<u64>,
    /// Skip the almost-surjectivity check (decompose).
    #[arg(long, global = true)]
    pub assume_surjective: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Parses `argv` (including the program name), runs the query and returns
/// the rendered output with its exit code.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Parse as i32 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let report = commands::execute(cli.command, &cli.query);
    let text = match cli.query.format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text(),
    };
    (report.exit_code() as i32, text)
}
