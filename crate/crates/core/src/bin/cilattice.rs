use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cilattice::batch::{hypersurface_table, verify, verify_cases};
use cilattice::hodge::MAX_CODIM;
use cilattice::render::{self, Format, ReportDocument};
use cilattice::{audit, decompose_with, hodge_row, DecomposeError, DecomposeOptions, MultiDegree};

const OK: u8 = 0;
const INVALID: u8 = 1;
const OUTSIDE: u8 = 2;
const AUDIT_FAILED: u8 = 3;

/// Hodge numbers and primitive cohomology lattices of even-dimensional
/// complete intersections.
#[derive(Parser)]
#[command(name = "cilattice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one complete intersection.
    Report(ReportArgs),
    /// Hypersurface table over degrees 2..=max-degree.
    Table(TableArgs),
    /// Decompose and audit every point of a grid.
    Verify(VerifyArgs),
    /// Middle Hodge row only.
    Hodge(HodgeArgs),
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct Variety {
    /// Degrees of the defining equations, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u64>,
    /// Dimension n (even, at least 2).
    #[arg(long)]
    dim: u32,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    variety: Variety,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// Print the Gram matrix of the decomposition.
    #[arg(long)]
    gram: bool,
    /// Run the invariant audit; exit 3 if it fails.
    #[arg(long)]
    audit: bool,
    /// Construct the witness vectors for the applicable branches.
    #[arg(long)]
    witness: bool,
    /// Send the cubic surface and two-quadric cases through the general rules.
    #[arg(long)]
    no_exceptional: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    max_degree: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    dims: Vec<u32>,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest number of equations.
    #[arg(long, default_value_t = 3)]
    max_codim: usize,
    /// Largest degree of a single equation.
    #[arg(long, default_value_t = 5)]
    max_entry: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
    dims: Vec<u32>,
    /// Extra multidegree to include, comma separated; repeatable.
    #[arg(long)]
    also: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct HodgeArgs {
    #[command(flatten)]
    variety: Variety,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

struct Failure(u8, String);

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        let code = match e {
            DecomposeError::OutsideTheorem(_) => OUTSIDE,
            DecomposeError::Hodge(_) | DecomposeError::DegreeTooSmall => INVALID,
            _ => AUDIT_FAILED,
        };
        Failure(code, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(INVALID, msg.into())
}

fn check_dims(dims: &[u32]) -> Result<(), Failure> {
    if dims.is_empty() {
        return Err(invalid("at least one dimension is required"));
    }
    match dims.iter().find(|&&n| n < 2 || n % 2 == 1) {
        Some(n) => Err(invalid(format!("dimension {n} must be even and at least 2"))),
        None => Ok(()),
    }
}

fn parse_variety(v: &Variety) -> Result<MultiDegree, Failure> {
    check_dims(&[v.dim])?;
    MultiDegree::new(&v.degrees).map_err(|e| invalid(e.to_string()))
}

fn report(args: &ReportArgs) -> Result<u8, Failure> {
    let degrees = parse_variety(&args.variety)?;
    let options = DecomposeOptions {
        exceptional_cases: !args.no_exceptional,
    };
    let report = decompose_with(&degrees, args.variety.dim, options)?;
    let mut doc = ReportDocument::new(report);
    if args.gram {
        let g = doc
            .report
            .decomposition
            .realize(cilattice::oracle::REALIZE_LIMIT)
            .map_err(|e| Failure(INVALID, format!("cannot print the Gram matrix: {e}")))?;
        doc.gram = Some(g);
    }
    if args.witness {
        doc.witnesses = Some(render::witnesses(&doc.report)?);
    }
    let mut code = OK;
    if args.audit {
        let result = audit(&doc.report);
        if !result.passed() {
            code = AUDIT_FAILED;
        }
        doc.audit = Some(result);
    }
    print!("{}", with_newline(doc.render(args.format.into())));
    Ok(code)
}

fn table(args: &TableArgs) -> Result<u8, Failure> {
    if args.max_degree < 2 {
        return Err(invalid("--max-degree must be at least 2"));
    }
    check_dims(&args.dims)?;
    let rows = hypersurface_table(args.max_degree, &args.dims);
    print!("{}", with_newline(render::table(&rows, args.format.into())));
    let bad: Vec<_> = rows.iter().filter(|r| !r.consistent()).collect();
    for r in &bad {
        eprintln!("criterion mismatch at d={} n={}", r.d, r.n);
    }
    Ok(if bad.is_empty() { OK } else { AUDIT_FAILED })
}

fn verify_cmd(args: &VerifyArgs) -> Result<u8, Failure> {
    if args.max_codim == 0 || args.max_codim > MAX_CODIM {
        return Err(invalid(format!("--max-codim must be in 1..={MAX_CODIM}")));
    }
    if args.max_entry < 2 {
        return Err(invalid("--max-entry must be at least 2"));
    }
    check_dims(&args.dims)?;
    let mut extra = Vec::new();
    for entry in &args.also {
        let raw = entry
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("--also {entry}: {e}")))?;
        extra.push(MultiDegree::new(&raw).map_err(|e| invalid(format!("--also {entry}: {e}")))?);
    }
    let entries = verify(&verify_cases(args.max_codim, args.max_entry, &args.dims, &extra));
    print!("{}", with_newline(render::verify(&entries, args.format.into())));
    Ok(if entries.iter().all(|e| e.pass) { OK } else { AUDIT_FAILED })
}

fn hodge(args: &HodgeArgs) -> Result<u8, Failure> {
    let degrees = parse_variety(&args.variety)?;
    let row = hodge_row(&degrees, args.variety.dim).map_err(|e| invalid(e.to_string()))?;
    print!("{}", with_newline(render::hodge(&degrees, &row, args.format.into())));
    Ok(OK)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INVALID } else { OK });
        }
    };
    let result = match &cli.command {
        Command::Report(a) => report(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Hodge(a) => hodge(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
