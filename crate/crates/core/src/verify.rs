//! Differential verification: run every applicable solver on seeded random
//! grids and compare answers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::batch::{map_indices, Exec};
use crate::cell::CellValue;
use crate::disjoint::{compute_m, solve_cp2, solve_cp2_fast, Cp2Result};
use crate::error::{Error, Result};
use crate::falling::{compute_bounds, compute_f};
use crate::grid::{generate_grid, path_sum, validate_path, Grid, StepProfile};
use crate::oracle::{oracle_cubic, oracle_exhaustive, EXHAUSTIVE_MAX_SIDE};
use crate::suurballe::solve_cp2_via_suurballe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Linear,
    Fast,
    Cubic,
    ExhaustiveOverlap,
    ExhaustiveDisjoint,
    Suurballe,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Linear => "linear",
            Algo::Fast => "fast",
            Algo::Cubic => "cubic",
            Algo::ExhaustiveOverlap => "exhaustive_overlap",
            Algo::ExhaustiveDisjoint => "exhaustive_disjoint",
            Algo::Suurballe => "suurballe",
        }
    }
}

/// Parameters of a random sweep. Heights and widths are inclusive ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub count: usize,
    pub h_min: usize,
    pub h_max: usize,
    pub w_min: usize,
    pub w_max: usize,
    pub lo: i64,
    pub hi: i64,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn check(&self) -> Result<()> {
        if self.h_min < 2 || self.w_min < 2 || self.h_min > self.h_max || self.w_min > self.w_max {
            return Err(Error::InvalidInstance(format!(
                "bad size ranges {}..={} x {}..={}",
                self.h_min, self.h_max, self.w_min, self.w_max
            )));
        }
        if self.lo > self.hi {
            return Err(Error::BadRange { lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    /// Seed and grid of instance `index`; independent of every other index.
    pub fn instance(&self, index: usize) -> Result<(u64, Grid)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        let h = rng.gen_range(self.h_min..=self.h_max);
        let w = rng.gen_range(self.w_min..=self.w_max);
        let grid_seed: u64 = rng.gen();
        Ok((grid_seed, generate_grid(h, w, self.lo, self.hi, grid_seed)?))
    }
}

/// Answers and invariant checks for one grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub index: usize,
    pub grid_seed: u64,
    pub height: usize,
    pub width: usize,
    pub answers: Vec<(Algo, CellValue)>,
    pub violations: Vec<String>,
}

impl Outcome {
    /// First pair of solvers that disagree, if any.
    pub fn mismatch(&self) -> Option<((Algo, CellValue), (Algo, CellValue))> {
        let first = *self.answers.first()?;
        self.answers.iter().find(|a| a.1 != first.1).map(|&a| (first, a))
    }

    pub fn ok(&self) -> bool {
        self.mismatch().is_none() && self.violations.is_empty()
    }
}

/// Checks the bound and witness invariants of the linear solver's output.
pub fn check_invariants(g: &Grid, r: &Cp2Result) -> Vec<String> {
    let (h, w) = (g.height(), g.width());
    let steps = StepProfile::unit(h);
    let f = compute_f(g, &steps);
    let b = compute_bounds(&f);
    let mut bad = Vec::new();
    match path_sum(g, &b.left_path()) {
        Ok(s) if s == f.get(0, 0) => {}
        other => bad.push(format!("PS(lp) = {other:?}, F[0][0] = {}", f.get(0, 0))),
    }
    match path_sum(g, &b.right_path()) {
        Ok(s) if s == f.get(0, w - 1) => {}
        other => bad.push(format!("PS(rp) = {other:?}, F[0][W-1] = {}", f.get(0, w - 1))),
    }
    if let Some(i) = (0..h).find(|&i| b.lp[i] > b.rp[i]) {
        bad.push(format!("lp({i}) = {} > rp({i}) = {}", b.lp[i], b.rp[i]));
    }
    match compute_m(g, &f, &b) {
        Ok(m) if m.ml(0, w - 1) == m.mr(0, 0) => {}
        Ok(m) => bad.push(format!("Ml(0, W-1) = {:?}, Mr(0, 0) = {:?}", m.ml(0, w - 1), m.mr(0, 0))),
        Err(e) => bad.push(format!("compute_m: {e}")),
    }
    let (l, rt) = (&r.left_path, &r.right_path);
    if !validate_path(g, l, &steps) || !validate_path(g, rt, &steps) {
        bad.push("witness is not a full falling path".into());
    } else {
        if l.cols[0] != 0 || rt.cols[0] != w as i64 - 1 {
            bad.push("witness does not start in the top corners".into());
        }
        if let Some(i) = (0..h).find(|&i| l.cols[i] >= rt.cols[i]) {
            bad.push(format!("witnesses meet or cross in row {i}"));
        }
        let sum = path_sum(g, l).ok().zip(path_sum(g, rt).ok()).map(|(a, c)| a + c);
        if sum != Some(r.total) {
            bad.push(format!("witness sum {sum:?} differs from total {}", r.total));
        }
    }
    bad
}

/// Runs every solver that applies to `g`.
///
/// The oracles and the Suurballe reference compute the unrestricted optimum,
/// which matches the linear solver on nonnegative grids only, so they are
/// skipped when `g` has negative cells. Exhaustive enumeration is limited
/// to grids within its size guard.
pub fn solve_all(g: &Grid) -> (Cp2Result, Vec<(Algo, CellValue)>) {
    let linear = solve_cp2(g);
    let mut answers = vec![(Algo::Linear, linear.total), (Algo::Fast, solve_cp2_fast(g).total)];
    if g.is_nonnegative() {
        answers.push((Algo::Cubic, oracle_cubic(g)));
        if g.height() <= EXHAUSTIVE_MAX_SIDE && g.width() <= EXHAUSTIVE_MAX_SIDE {
            answers.push((Algo::ExhaustiveOverlap, oracle_exhaustive(g, true).expect("within size guard")));
            answers.push((Algo::ExhaustiveDisjoint, oracle_exhaustive(g, false).expect("within size guard")));
        }
        answers.push((Algo::Suurballe, solve_cp2_via_suurballe(g).expect("finite grid")));
    }
    (linear, answers)
}

pub fn verify_instance(cfg: &VerifyConfig, index: usize) -> Result<Outcome> {
    let (grid_seed, g) = cfg.instance(index)?;
    let (linear, answers) = solve_all(&g);
    Ok(Outcome {
        index,
        grid_seed,
        height: g.height(),
        width: g.width(),
        answers,
        violations: check_invariants(&g, &linear),
    })
}

/// Runs the sweep; outcomes are ordered by instance index.
pub fn verify(cfg: &VerifyConfig, exec: Exec) -> Result<Vec<Outcome>> {
    cfg.check()?;
    map_indices(cfg.count, exec, |i| verify_instance(cfg, i)).into_iter().collect()
}
