//! Command-line front end.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false (or a square that
//! cannot be canonicalized), 2 usage or parse error, 3 no square of the
//! requested kind exists.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::construct::{
    algorithm1, algorithm2, known_bounds, max_distance_square, pandiagonal_max, shift_by_k,
    sudoku_best, BoundKind, ShiftParams,
};
use crate::error::Error;
use crate::grid::{grids_to_text, SquareGrid, SudokuShape};
use crate::metrics::inner_distance;
use crate::search::{
    max_distance_via_search, run_search, Constraint, SearchMode, SearchQuery, Symmetry,
    DEFAULT_NODE_BUDGET,
};
use crate::transform::to_circulant_canonical;
use crate::validate::{validate_latin, validate_pandiagonal, validate_sudoku};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONEXISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "innerdist",
    version,
    about = "Latin squares with large inner distance"
)]
pub struct Cli {
    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a square.
    Gen(GenArgs),
    /// Validate a square.
    Check(CheckArgs),
    /// Report the inner distance of a square.
    Dist(InputArgs),
    /// Print known bounds on the maximum inner distance.
    Bounds(BoundsArgs),
    /// Exhaustive search.
    Search(SearchArgs),
    /// Reduce a cyclic square to the canonical circulant.
    Canon(InputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Band/stack shift construction: --n --r --c --alpha --beta
    Shift,
    /// Shift-by-k square: --n --k
    Shiftk,
    /// Maximum inner distance square: --n
    Maxdist,
    /// Pandiagonal square of maximum inner distance: --n
    Pandiagonal,
    /// Best known (a, b)-Sudoku construction: --a --b
    Sudoku,
    /// Even-by-even Sudoku construction for blocks 2x by 2y: --x --y
    Eveneven,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long)]
    pub y: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Grid file (text or JSON); stdin when omitted.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Latin,
    Pandiagonal,
    Sudoku,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "latin")]
    pub kind: CheckKind,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SquareKind {
    Plain,
    Pandiagonal,
    Sudoku,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: SquareKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Count,
    Enumerate,
    Exists,
    /// Largest distance with a solution.
    Max,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "plain")]
    pub kind: SquareKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub min_dist: u32,
    #[arg(long, value_enum, default_value = "count")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Node expansion cap.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Only count squares with 1 in the top-left cell.
    #[arg(long)]
    pub fix_first_cell: bool,
    /// Write witnesses to this file, blank-line separated.
    #[arg(long)]
    pub witnesses: Option<PathBuf>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Nonexistence(_) => EXIT_NONEXISTENT,
            Error::NotReducible(_) => EXIT_FALSE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

/// Parsed output of a subcommand: text to print and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &outcome.text).map_err(|e| e.to_string()),
                None => stdout
                    .write_all(outcome.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "innerdist: cannot write output: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "innerdist: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gen(args) => gen(args, cli.format.unwrap_or(Format::Text)),
        Command::Check(args) => check(args, stdin, cli.format.unwrap_or(Format::Json)),
        Command::Dist(args) => dist(args, stdin, cli.format.unwrap_or(Format::Text)),
        Command::Bounds(args) => bounds(args),
        Command::Search(args) => search(args),
        Command::Canon(args) => canon(args, stdin, cli.format.unwrap_or(Format::Text)),
    }
}

fn read_grid(
    input: &InputArgs,
    stdin: &mut dyn Read,
) -> Result<(SquareGrid, Option<SudokuShape>), Failure> {
    let text = match &input.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    Ok(SquareGrid::parse_any(&text)?)
}

fn render_grid(g: &SquareGrid, shape: Option<SudokuShape>, format: Format) -> String {
    match format {
        Format::Text => g.to_text(),
        Format::Json => g.to_json(shape) + "\n",
    }
}

fn gen(args: &GenArgs, format: Format) -> Result<Outcome, Failure> {
    let (grid, shape) = match args.algo {
        Algo::Shift => {
            let params = ShiftParams::new(
                need(args.n, "n")?,
                need(args.r, "r")?,
                need(args.c, "c")?,
                need(args.alpha, "alpha")?,
                need(args.beta, "beta")?,
            )?;
            (algorithm1(&params)?, None)
        }
        Algo::Shiftk => (shift_by_k(need(args.n, "n")?, need(args.k, "k")?)?, None),
        Algo::Maxdist => (max_distance_square(need(args.n, "n")?)?, None),
        Algo::Pandiagonal => (pandiagonal_max(need(args.n, "n")?)?, None),
        Algo::Sudoku => {
            let shape = SudokuShape::new(need(args.a, "a")?, need(args.b, "b")?)?;
            (sudoku_best(shape.a, shape.b)?, Some(shape))
        }
        Algo::Eveneven => {
            let (x, y) = (need(args.x, "x")?, need(args.y, "y")?);
            (algorithm2(x, y)?, Some(SudokuShape::new(2 * x, 2 * y)?))
        }
    };
    Ok(Outcome::ok(render_grid(&grid, shape, format)))
}

fn check(args: &CheckArgs, stdin: &mut dyn Read, format: Format) -> Result<Outcome, Failure> {
    let (grid, doc_shape) = read_grid(&args.input, stdin)?;
    let report = match args.kind {
        CheckKind::Latin => validate_latin(&grid),
        CheckKind::Pandiagonal => validate_pandiagonal(&grid),
        CheckKind::Sudoku => {
            let shape = match (args.a, args.b, doc_shape) {
                (Some(a), Some(b), _) => SudokuShape::new(a, b)?,
                (None, None, Some(shape)) => shape,
                _ => return Err(usage("sudoku check needs --a and --b")),
            };
            validate_sudoku(&grid, shape)?
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        Format::Text => {
            let mut s = format!("verdict: {}\n", report.verdict);
            for v in &report.violations {
                s += &format!(
                    "{} {}: symbol {} repeated\n",
                    serde_json::to_value(v.kind)
                        .expect("kind serializes")
                        .as_str()
                        .unwrap_or("?"),
                    v.index,
                    v.symbol
                );
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if report.verdict { EXIT_OK } else { EXIT_FALSE },
    })
}

fn dist(args: &InputArgs, stdin: &mut dyn Read, format: Format) -> Result<Outcome, Failure> {
    let (grid, _) = read_grid(args, stdin)?;
    let report = inner_distance(&grid)?;
    let text = match format {
        Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        Format::Text => {
            let classes: Vec<String> = report
                .classes
                .iter()
                .map(|(d, count)| format!("{d}:{count}"))
                .collect();
            let pairs: Vec<String> = report
                .argmin_pairs
                .iter()
                .map(|((r1, c1), (r2, c2))| format!("({r1},{c1})-({r2},{c2})"))
                .collect();
            format!(
                "inner_distance: {}\nclasses: {}\nargmin: {}\n",
                report.inner_distance,
                classes.join(" "),
                pairs.join(" ")
            )
        }
    };
    Ok(Outcome::ok(text))
}

fn bound_kind(
    kind: SquareKind,
    n: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
) -> Result<BoundKind, Failure> {
    Ok(match kind {
        SquareKind::Plain => BoundKind::Plain(need(n, "n")?),
        SquareKind::Pandiagonal => BoundKind::Pandiagonal(need(n, "n")?),
        SquareKind::Sudoku => {
            let shape = SudokuShape::new(need(a, "a")?, need(b, "b")?)?;
            if let Some(n) = n {
                shape.check_order(n)?;
            }
            BoundKind::Sudoku {
                a: shape.a,
                b: shape.b,
            }
        }
    })
}

fn bounds(args: &BoundsArgs) -> Result<Outcome, Failure> {
    let entry = known_bounds(bound_kind(args.kind, args.n, args.a, args.b)?)?;
    Ok(Outcome::ok(entry.to_json() + "\n"))
}

fn search(args: &SearchArgs) -> Result<Outcome, Failure> {
    let kind = match (args.kind, args.n, args.a, args.b) {
        // a sudoku search may be given only the block shape
        (SquareKind::Sudoku, None, Some(_), Some(_)) => {
            bound_kind(args.kind, None, args.a, args.b)?
        }
        _ => bound_kind(args.kind, args.n, args.a, args.b)?,
    };
    let started = Instant::now();
    let query_json = json!({
        "kind": kind.name(),
        "n": kind.order(),
        "a": args.a,
        "b": args.b,
        "min_distance": args.min_dist,
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "workers": args.workers,
        "budget": args.budget,
        "fix_first_cell": args.fix_first_cell,
    });

    if args.mode == ModeArg::Max {
        let max = max_distance_via_search(kind, Some(args.budget), args.workers)?;
        let out = json!({
            "query": query_json,
            "max": max,
            "elapsed_ms": started.elapsed().as_millis() as u64,
        });
        return Ok(Outcome::ok(out.to_string() + "\n"));
    }

    let mode = match args.mode {
        ModeArg::Count => SearchMode::Count,
        ModeArg::Enumerate => SearchMode::Enumerate,
        _ => SearchMode::Exists,
    };
    let constraint = match kind {
        BoundKind::Plain(_) => Constraint::Plain,
        BoundKind::Pandiagonal(_) => Constraint::Pandiagonal,
        BoundKind::Sudoku { a, b } => Constraint::Sudoku(SudokuShape::new(a, b)?),
    };
    let query = SearchQuery::new(kind.order(), constraint, args.min_dist, mode)
        .with_symmetry(if args.fix_first_cell {
            Symmetry::FixFirstCell
        } else {
            Symmetry::None
        })
        .with_budget(Some(args.budget))
        .with_workers(args.workers);
    let result = run_search(&query)?;
    let mut out = json!({
        "query": query_json,
        "count": result.count,
        "complete": result.complete,
        "nodes": result.nodes_expanded,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    if mode != SearchMode::Count {
        match &args.witnesses {
            Some(path) => fs::write(path, grids_to_text(&result.witnesses))
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
            None => out["witnesses"] = json!(result.witnesses),
        }
    }
    Ok(Outcome::ok(out.to_string() + "\n"))
}

fn canon(args: &InputArgs, stdin: &mut dyn Read, format: Format) -> Result<Outcome, Failure> {
    let (grid, _) = read_grid(args, stdin)?;
    let (canonical, perm) = to_circulant_canonical(&grid)?;
    let text = match format {
        Format::Text => format!("{}\n{}\n", canonical.to_text(), perm.to_json()),
        Format::Json => json!({ "canonical": canonical, "permutation": perm }).to_string() + "\n",
    };
    Ok(Outcome::ok(text))
}
