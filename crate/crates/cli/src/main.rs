use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cp2_core::batch::Exec;
use cp2_core::extensions::{reduce_diamond_mine, solve_diamond_mine, solve_two_robots};
use cp2_core::extensions::{DmReduction, TwoRobotInstance};
use cp2_core::falling::compute_bounds;
use cp2_core::scaling::run_bench;
use cp2_core::verify::{verify, Outcome, VerifyConfig};
use cp2_core::{
    compute_f, compute_m, compute_m_four_case, generate_grid, oracle_cubic, oracle_exhaustive, solve_cp2,
    solve_cp2_fast, solve_cp2_via_suurballe, CellValue, Grid, StepProfile,
};
use serde::Serialize;

mod format;

use format::{Format, GridFile, ParseError};

#[derive(Parser)]
#[command(name = "cp2", version, about = "Best pair of non-intersecting falling paths on integer grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Grid file; stdin when absent or `-`
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Algo {
    Linear,
    Fast,
    Extended,
    Cubic,
    Exhaustive,
    Suurballe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum BenchAlgo {
    Linear,
    Fast,
    Cubic,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one grid
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Algo::Linear)]
        algo: Algo,
        /// Include witness paths (linear, fast and extended only)
        #[arg(long)]
        witness: bool,
        /// Also compare the simplified tables with the four-case form
        #[arg(long)]
        debug_four_case: bool,
    },
    /// Cross-check all solvers on random grids
    Verify {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        hmin: usize,
        #[arg(long, default_value_t = 10)]
        hmax: usize,
        #[arg(long, default_value_t = 2)]
        wmin: usize,
        #[arg(long, default_value_t = 10)]
        wmax: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on the calling thread only
        #[arg(long)]
        sequential: bool,
        /// Corrupt the linear answer of this instance (harness self-test)
        #[arg(long, hide = true)]
        inject_fault: Option<usize>,
    },
    /// Print a random grid
    Generate {
        #[arg(long)]
        height: usize,
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Time a solver on N x N grids and fit the log-log slope
    Bench {
        /// Comma-separated side lengths, strictly increasing, each >= 64
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchAlgo::Linear)]
        algo: BenchAlgo,
        /// Accepted slope range, `LO,HI`
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.85, 1.20])]
        band: Vec<f64>,
    },
    /// Diamond Mine round trip on an N x N grid over {-1, 0, 1}
    Dm {
        #[command(flatten)]
        input: Input,
    },
    /// Two robots from columns j1 < j2
    Robots2 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        j1: usize,
        #[arg(long)]
        j2: usize,
    },
}

enum Failure {
    Mismatch,
    Parse(String),
    Guard(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<cp2_core::Error> for Failure {
    fn from(e: cp2_core::Error) -> Self {
        match e {
            cp2_core::Error::SizeGuard(_) | cp2_core::Error::NonFiniteGrid => Failure::Guard(e.to_string()),
            other => Failure::Parse(other.to_string()),
        }
    }
}

fn read_input(input: &Input) -> Result<GridFile, Failure> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(format::parse(&text, input.format)?)
}

fn emit<T: Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("records serialize"));
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Serialize)]
struct SolveRecord {
    algo: Algo,
    h: usize,
    w: usize,
    total: CellValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    four_case_equal: Option<bool>,
    elapsed_ms: f64,
}

fn cmd_solve(input: &Input, algo: Algo, witness: bool, debug_four_case: bool) -> Result<(), Failure> {
    let file = read_input(input)?;
    let g = &file.grid;
    let steps = file.steps.clone().unwrap_or_else(|| StepProfile::unit(g.height()));
    if algo != Algo::Extended && !steps.is_unit() {
        return Err(Failure::Parse(format!("step profile given but --algo {algo:?} uses unit steps")));
    }
    let start = Instant::now();
    let (total, paths) = match algo {
        Algo::Linear => {
            let r = solve_cp2(g);
            (r.total, Some((r.left_path.cols, r.right_path.cols)))
        }
        Algo::Fast => {
            let r = solve_cp2_fast(g);
            (r.total, Some((r.left_path.cols, r.right_path.cols)))
        }
        Algo::Extended => {
            let r = cp2_core::disjoint::solve_cp2_with(g, &steps)?;
            (r.total, Some((r.left_path.cols, r.right_path.cols)))
        }
        Algo::Cubic => (oracle_cubic(g), None),
        Algo::Exhaustive => (oracle_exhaustive(g, false)?, None),
        Algo::Suurballe => (solve_cp2_via_suurballe(g)?, None),
    };
    let elapsed_ms = millis(start);
    let four_case_equal = debug_four_case.then(|| {
        let f = compute_f(g, &StepProfile::unit(g.height()));
        let b = compute_bounds(&f);
        compute_m(g, &f, &b).ok() == compute_m_four_case(g, &f, &b).ok()
    });
    let (left, right) = match paths {
        Some((l, r)) if witness => (Some(l), Some(r)),
        _ => (None, None),
    };
    emit(&SolveRecord { algo, h: g.height(), w: g.width(), total, left, right, four_case_equal, elapsed_ms });
    Ok(())
}

#[derive(Serialize)]
struct MismatchRecord<'a> {
    status: &'static str,
    seed: u64,
    #[serde(flatten)]
    outcome: &'a Outcome,
    grid: Vec<Vec<CellValue>>,
}

#[derive(Serialize)]
struct AgreeRecord {
    status: &'static str,
    count: usize,
    seed: u64,
}

fn cmd_verify(cfg: VerifyConfig, exec: Exec, fault: Option<usize>) -> Result<(), Failure> {
    let mut outcomes = verify(&cfg, exec)?;
    if let Some(o) = fault.and_then(|i| outcomes.get_mut(i)) {
        o.answers[0].1 = o.answers[0].1 + 1;
    }
    match outcomes.iter().find(|o| !o.ok()) {
        None => {
            emit(&AgreeRecord { status: "all agree", count: cfg.count, seed: cfg.seed });
            Ok(())
        }
        Some(o) => {
            let (_, g) = cfg.instance(o.index)?;
            emit(&MismatchRecord { status: "mismatch", seed: cfg.seed, outcome: o, grid: to_rows(&g) });
            Err(Failure::Mismatch)
        }
    }
}

fn to_rows(g: &Grid) -> Vec<Vec<CellValue>> {
    g.rows().map(<[CellValue]>::to_vec).collect()
}

#[derive(Serialize)]
struct BenchRecord {
    #[serde(flatten)]
    report: cp2_core::scaling::BenchReport,
    band: (f64, f64),
    /// `None` when the slope is undefined
    in_band: Option<bool>,
}

fn cmd_bench(sizes: &[usize], reps: usize, seed: u64, algo: BenchAlgo, band: (f64, f64)) -> Result<(), Failure> {
    if sizes.is_empty() || sizes.iter().any(|&n| n < 64) {
        return Err(Failure::Guard("bench sizes must be at least 64".into()));
    }
    let solve: &dyn Fn(&Grid) -> CellValue = match algo {
        BenchAlgo::Linear => &|g| solve_cp2(g).total,
        BenchAlgo::Fast => &|g| solve_cp2_fast(g).total,
        BenchAlgo::Cubic => &oracle_cubic,
    };
    let name = serde_json::to_value(algo).expect("enum serializes");
    let report = run_bench(name.as_str().unwrap_or("solver"), sizes, reps, seed, solve)
        .map_err(|e| Failure::Parse(e.to_string()))?;
    let in_band = report.slope.map(|s| band.0 <= s && s <= band.1);
    emit(&BenchRecord { report, band, in_band });
    match in_band {
        Some(false) => Err(Failure::Mismatch),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct DmRecord {
    n: usize,
    reachable: bool,
    total: CellValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<(usize, usize)>,
}

fn cmd_dm(input: &Input) -> Result<(), Failure> {
    let g = read_input(input)?.grid;
    let reduced = match reduce_diamond_mine(&g)? {
        DmReduction::Unreachable => None,
        DmReduction::Reduced(r) => Some((r.height(), r.width())),
    };
    let total = solve_diamond_mine(&g)?;
    emit(&DmRecord { n: g.height(), reachable: reduced.is_some(), total, reduced });
    Ok(())
}

#[derive(Serialize)]
struct RobotsRecord {
    j1: usize,
    j2: usize,
    total: CellValue,
}

fn cmd_robots2(input: &Input, j1: usize, j2: usize) -> Result<(), Failure> {
    let g = read_input(input)?.grid;
    let inst = TwoRobotInstance::new(g, j1, j2)?;
    emit(&RobotsRecord { j1, j2, total: solve_two_robots(&inst)? });
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { input, algo, witness, debug_four_case } => cmd_solve(&input, algo, witness, debug_four_case),
        Command::Verify { count, hmin, hmax, wmin, wmax, lo, hi, seed, sequential, inject_fault } => {
            let cfg = VerifyConfig { count, h_min: hmin, h_max: hmax, w_min: wmin, w_max: wmax, lo, hi, seed };
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            cmd_verify(cfg, exec, inject_fault)
        }
        Command::Generate { height, width, lo, hi, seed, format } => {
            let grid = generate_grid(height, width, lo, hi, seed)?;
            print!("{}", format::render(&GridFile { grid, steps: None }, format));
            Ok(())
        }
        Command::Bench { sizes, reps, seed, algo, band } => match band[..] {
            [lo, hi] => cmd_bench(&sizes, reps, seed, algo, (lo, hi)),
            _ => Err(Failure::Parse("--band takes LO,HI".into())),
        },
        Command::Dm { input } => cmd_dm(&input),
        Command::Robots2 { input, j1, j2 } => cmd_robots2(&input, j1, j2),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
