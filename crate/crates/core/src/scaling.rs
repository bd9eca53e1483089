//! Timing sweeps over square grids and a least-squares fit of the log-log
//! slope of time against cell count.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cell::CellValue;
use crate::error::{Error, Result};
use crate::grid::{generate_grid, Grid};

/// Timing of one size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeTiming {
    pub n: usize,
    pub cells: usize,
    /// Median over the timed reps, in seconds.
    pub seconds: f64,
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub solver: String,
    pub reps: usize,
    pub seed: u64,
    pub sizes: Vec<SizeTiming>,
    /// `None` with fewer than two sizes.
    pub slope: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2
    }
}

/// Median wall time of `reps` calls after one discarded warm-up call,
/// together with the warm-up's answer.
pub fn time_solver(g: &Grid, reps: usize, solve: &dyn Fn(&Grid) -> CellValue) -> (Duration, CellValue) {
    let answer = solve(g);
    let times = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            let a = solve(std::hint::black_box(g));
            let e = t.elapsed();
            assert_eq!(a, answer, "solver is not deterministic");
            e
        })
        .collect();
    (median(times), answer)
}

/// Times `solve` on `n x n` grids with values in `[0, 9]`. Grid generation
/// is outside the timed region. Sizes must be strictly increasing.
pub fn run_bench(
    solver: &str,
    sizes: &[usize],
    reps: usize,
    seed: u64,
    solve: &dyn Fn(&Grid) -> CellValue,
) -> Result<BenchReport> {
    if sizes.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidInstance("bench sizes must be strictly increasing".into()));
    }
    let mut out = Vec::with_capacity(sizes.len());
    for (k, &n) in sizes.iter().enumerate() {
        let g = generate_grid(n, n, 0, 9, seed.wrapping_add(k as u64))?;
        let (t, answer) = time_solver(&g, reps, solve);
        out.push(SizeTiming { n, cells: n * n, seconds: t.as_secs_f64(), checksum: answer.to_string() });
    }
    let points: Vec<(f64, f64)> = out.iter().map(|s| (s.cells as f64, s.seconds.max(1e-9))).collect();
    Ok(BenchReport { solver: solver.to_string(), reps, seed, slope: loglog_slope(&points), sizes: out })
}
