//! `smap`: validate and run special fuzzy/neutrosophic models, compose matrices, solve max-min equations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use specialmaps::fre::{self, FreOptions, DEFAULT_BUDGET};
use specialmaps::matrix::{elementwise_max, elementwise_min, mat_add, mat_mul, maxmin_compose, minmax_compose};
use specialmaps::models::{class_diagnostics, run};
use specialmaps::special::make_special;
use specialmaps::text::{parse_matrix, parse_model_raw, parse_vector, render_values};
use specialmaps::{trace, Error, Matrix, Model, OrderPolicy, Outcome, RunOptions, State};

mod code {
    pub const OTHER: u8 = 1;
    // 2 is clap's usage error
    pub const PARSE: u8 = 3;
    pub const VALIDATION: u8 = 4;
    pub const SHAPE: u8 = 5;
    pub const ITERATION_CAP: u8 = 6;
    pub const BUDGET: u8 = 7;
    pub const ARITHMETIC: u8 = 8;
}

#[derive(Parser)]
#[command(name = "smap", version, about = "Special fuzzy and neutrosophic cognitive/relational maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Book,
    Indeterminacy,
}

impl From<Policy> for OrderPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Book => OrderPolicy::BookDefault,
            Policy::Indeterminacy => OrderPolicy::IndeterminacyDominant,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ComposeOp {
    Max,
    Min,
    Maxmin,
    Minmax,
    Mul,
    Add,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model file against its class and print its shape
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Iterate a model from an input vector to its hidden pattern
    Run {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON-lines trace here
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "book")]
        order_policy: Policy,
        #[arg(long, default_value_t = 0.0)]
        threshold_k: f64,
        #[arg(long, default_value_t = specialmaps::dynamics::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Threshold and update max-min / min-max components as well
        #[arg(long)]
        lattice_threshold: bool,
    },
    /// Combine two matrices
    Compose {
        #[arg(long, value_enum)]
        op: ComposeOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "book")]
        order_policy: Policy,
    },
    /// Solve p o Q = r (one row of R per equation) under max-min composition
    Fre {
        q: PathBuf,
        r: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        grid_step: f64,
        /// Also enumerate minimal grid solutions
        #[arg(long)]
        minimal: bool,
        /// Accept I entries in Q and r
        #[arg(long)]
        neutro: bool,
        #[arg(long, value_enum, default_value = "book")]
        order_policy: Policy,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => code::PARSE,
        Error::ShapeMismatch(_) | Error::ComponentCountMismatch { .. } => code::SHAPE,
        Error::IterationCapExceeded { .. } => code::ITERATION_CAP,
        Error::BudgetExceeded { .. } => code::BUDGET,
        Error::OrderUndefined(..) | Error::ModeMismatch(_) | Error::OutOfDomain(_) => code::ARITHMETIC,
        Error::DomainViolation { .. }
        | Error::EmptyUnion
        | Error::NonSquareCm(_)
        | Error::NonCmComponent(_)
        | Error::NonRmComponent(_)
        | Error::InvalidInput(_)
        | Error::ClassViolation { .. }
        | Error::NonzeroDiagonal { .. }
        | Error::WrongEntryPoint(_) => code::VALIDATION,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn shapes(dims: &[(usize, usize)]) -> String {
    if dims.iter().all(|d| *d == dims[0]) {
        format!("{}×{}", dims[0].0, dims[0].1)
    } else {
        dims.iter().map(|(r, c)| format!("{r}×{c}")).collect::<Vec<_>>().join(" ")
    }
}

fn validate(path: &Path) -> Result<String, Failure> {
    let raw = parse_model_raw(&read(path)?)?;
    let tags: Vec<_> = raw.components.iter().map(|(_, t)| *t).collect();
    let m = make_special(raw.components)?;
    let diags = class_diagnostics(raw.class, &m);
    let mut out = format!(
        "{}, {} components, {}, {}\n",
        raw.class,
        m.len(),
        shapes(&m.shapes()),
        if diags.is_empty() { "valid" } else { "invalid" }
    );
    let _ = writeln!(out, "classification: {}", m.classification().describe(m.is_neutrosophic()));
    for (i, (t, (r, c))) in tags.iter().zip(m.shapes()).enumerate() {
        let _ = writeln!(out, "component {}: {} {} {} {r}×{c}", i + 1, t.kind, t.algebra, t.op);
    }
    for d in &diags {
        let _ = writeln!(out, "error: {d}");
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Invalid)
    }
}

fn render_state(s: &State) -> String {
    match s {
        State::Single(v) => render_values(v),
        State::Pair { domain, range } => format!("domain {} | range {}", render_values(domain), render_values(range)),
    }
}

fn render_outcome(o: &Outcome) -> String {
    match o {
        Outcome::FixedPoint(s @ State::Single(_)) => format!("fixed point: {}", render_state(s)),
        Outcome::FixedPoint(s) => format!("fixed binary pair: {}", render_state(s)),
        Outcome::LimitCycle(ss) => format!(
            "limit cycle (period {}): {}",
            ss.len(),
            ss.iter().map(render_state).collect::<Vec<_>>().join(" -> ")
        ),
    }
}

fn load_model(path: &Path) -> Result<Model, Failure> {
    Ok(specialmaps::text::parse_model(&read(path)?)?)
}

fn run_cmd(
    model: &Path,
    input: &Path,
    trace_path: Option<&Path>,
    opts: RunOptions,
) -> Result<String, Failure> {
    let m = load_model(model)?;
    let x = parse_vector(&read(input)?)?;
    let hp = run(&m, &x, opts)?;
    if let Some(p) = trace_path {
        let text = trace::to_jsonl(&trace::records(&m, &x, &hp));
        std::fs::write(p, text).map_err(|e| Failure::Io(p.to_path_buf(), e))?;
    }
    let mut out = String::new();
    for (i, c) in hp.components.iter().enumerate() {
        let unit = if c.steps == 1 { "step" } else { "steps" };
        let _ = writeln!(out, "component {}: {} ({} {unit})", i + 1, render_outcome(&c.outcome), c.steps);
    }
    Ok(out)
}

fn compose(op: ComposeOp, a: &Path, b: &Path, policy: OrderPolicy) -> Result<String, Failure> {
    let a = parse_matrix(&read(a)?)?;
    let b = parse_matrix(&read(b)?)?;
    let m: Matrix = match op {
        ComposeOp::Max => elementwise_max(&a, &b, policy)?,
        ComposeOp::Min => elementwise_min(&a, &b, policy)?,
        ComposeOp::Maxmin => maxmin_compose(&a, &b, policy)?,
        ComposeOp::Minmax => minmax_compose(&a, &b, policy)?,
        ComposeOp::Mul => mat_mul(&a, &b)?,
        ComposeOp::Add => mat_add(&a, &b)?,
    };
    Ok(m.to_string())
}

fn solve(q: &Path, r: &Path, grid_step: f64, minimal: bool, opts: FreOptions) -> Result<String, Failure> {
    let q = parse_matrix(&read(q)?)?;
    let r = parse_matrix(&read(r)?)?;
    let sols = fre::solve_matrix(&q, &r, opts)?;
    let mut out = String::new();
    for (i, (s, row)) in sols.iter().zip(r.to_rows()).enumerate() {
        if sols.len() > 1 {
            let _ = writeln!(out, "equation {}:", i + 1);
        }
        let _ = writeln!(out, "max solution: {}", render_values(&s.max_solution));
        let _ = writeln!(out, "solvable: {}", if s.solvable { "yes" } else { "no" });
        let _ = writeln!(out, "residual: {}", render_values(&s.residual));
        let bad = fre::unreachable_columns(&q, &row, opts.policy)?;
        if !bad.is_empty() {
            let cols: Vec<String> = bad.iter().map(|k| (k + 1).to_string()).collect();
            let _ = writeln!(out, "unreachable columns: {}", cols.join(" "));
        }
        if minimal {
            let mins = fre::minimal_solutions_bruteforce(&q, &row, grid_step, DEFAULT_BUDGET)?;
            let _ = writeln!(out, "minimal grid solutions: {}", mins.len());
            for p in mins {
                let _ = writeln!(out, "  {}", render_values(&p));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Validate { model } => validate(&model),
        Cmd::Run {
            model,
            input,
            trace,
            order_policy,
            threshold_k,
            max_steps,
            lattice_threshold,
        } => run_cmd(
            &model,
            &input,
            trace.as_deref(),
            RunOptions {
                k: threshold_k,
                policy: order_policy.into(),
                max_steps,
                lattice_threshold,
                ..Default::default()
            },
        ),
        Cmd::Compose { op, a, b, order_policy } => compose(op, &a, &b, order_policy.into()),
        Cmd::Fre { q, r, grid_step, minimal, neutro, order_policy } => solve(
            &q,
            &r,
            grid_step,
            minimal,
            FreOptions {
                neutrosophic: neutro,
                policy: order_policy.into(),
                ..Default::default()
            },
        ),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid) => ExitCode::from(code::VALIDATION),
        Err(Failure::Io(p, e)) => {
            eprintln!("error: {}: {e}", p.display());
            ExitCode::from(code::OTHER)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
