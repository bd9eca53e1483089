//! Linear-time pair solver.
//!
//! `Ml(i, j)` is the best total of a non-intersecting pair from row `i` to
//! the bottom where the left path starts on `lp(i)` and stays at or left of
//! `lp`, and the right path starts at column `j` and stays at or right of
//! `rp`. `Mr` mirrors this with the right path anchored on `rp(i)`. Each row
//! of both tables is computed from the row below in `O(W)`.

mod fast;
mod four_case;
mod trace;

use std::ops::Range;

pub use fast::{first_intersection, solve_cp2_fast, FirstIntersection};
pub use four_case::compute_m_four_case;
pub use trace::trace_witness;

use serde::Serialize;

use crate::cell::{CellValue, NegInfinity};
use crate::error::{Error, Result};
use crate::falling::{compute_bounds_with, compute_f, BoundPair, FTable};
use crate::grid::{FallingPath, Grid, StepProfile};
use crate::swm::{range_argmax_first, range_max, Swm};

/// One row of `Ml` or `Mr`, stored over its defined columns only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MRow {
    start: usize,
    vals: Vec<CellValue>,
}

impl MRow {
    fn over(domain: Range<usize>) -> MRow {
        MRow { start: domain.start, vals: vec![NegInfinity; domain.len()] }
    }

    pub fn domain(&self) -> Range<usize> {
        self.start..self.start + self.vals.len()
    }

    pub fn get(&self, j: usize) -> Option<CellValue> {
        j.checked_sub(self.start).and_then(|k| self.vals.get(k).copied())
    }

    #[inline]
    fn set(&mut self, j: usize, v: CellValue) {
        self.vals[j - self.start] = v;
    }

    /// Maximum over `[lo, hi]` intersected with the domain.
    pub fn max_in(&self, lo: i64, hi: i64) -> CellValue {
        let s = self.start as i64;
        range_max(&self.vals, lo - s, hi - s)
    }

    /// Smallest column attaining [`MRow::max_in`], if the range meets the domain.
    pub fn argmax_in(&self, lo: i64, hi: i64) -> Option<usize> {
        let s = self.start as i64;
        range_argmax_first(&self.vals, lo - s, hi - s).map(|k| k + self.start)
    }

    /// Full-width copy with `NegInfinity` outside the domain.
    fn dense_into(&self, out: &mut [CellValue]) {
        out.fill(NegInfinity);
        out[self.domain()].copy_from_slice(&self.vals);
    }
}

/// The `Ml` and `Mr` tables, one ragged row per grid row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTables {
    pub ml: Vec<MRow>,
    pub mr: Vec<MRow>,
}

impl MTables {
    pub fn ml(&self, i: usize, j: usize) -> Option<CellValue> {
        self.ml[i].get(j)
    }

    pub fn mr(&self, i: usize, j: usize) -> Option<CellValue> {
        self.mr[i].get(j)
    }
}

/// Columns where `Ml(i, ·)` is defined: `j >= max(lp(i) + 1, rp(i))`.
pub fn ml_domain(lp: usize, rp: usize, w: usize) -> Range<usize> {
    (lp + 1).max(rp).min(w)..w
}

/// Columns where `Mr(i, ·)` is defined: `j <= min(lp(i), rp(i) - 1)`.
pub fn mr_domain(lp: usize, rp: usize) -> Range<usize> {
    match rp.checked_sub(1) {
        Some(r) => 0..lp.min(r) + 1,
        None => 0..0,
    }
}

/// Value standing in for a guarded term whose guard fails. Zero on
/// nonnegative grids, where every pair tail has a nonnegative sum; otherwise
/// `NegInfinity` so that a missing case can never win.
pub fn neutral_element(g: &Grid) -> CellValue {
    if g.is_nonnegative() {
        CellValue::ZERO
    } else {
        NegInfinity
    }
}

fn check_inputs(g: &Grid, f: &FTable, b: &BoundPair, steps: &StepProfile) -> Result<()> {
    let (h, w) = (g.height(), g.width());
    let shape_ok = f.height() == h
        && f.width() == w
        && b.lp.len() == h
        && b.rp.len() == h
        && steps.as_slice().len() + 1 == h;
    if !shape_ok || b.lp[0] != 0 || b.rp[0] != w - 1 || f.row(h - 1) != g.row(h - 1) {
        return Err(Error::BoundsMismatch);
    }
    for i in 0..h {
        if b.lp[i] > b.rp[i] || b.rp[i] >= w {
            return Err(Error::BoundsMismatch);
        }
        if i > 0 {
            let d = steps.width_into(i);
            if b.lp[i].abs_diff(b.lp[i - 1]) > d || b.rp[i].abs_diff(b.rp[i - 1]) > d {
                return Err(Error::BoundsMismatch);
            }
        }
    }
    Ok(())
}

/// `out[j] = max(v[k])` over `k` in `[max(j - d, lo), min(j + d, hi)]`.
fn window_max(v: &[CellValue], d: usize, lo: usize, hi: usize, scratch: &mut Vec<CellValue>, out: &mut [CellValue]) {
    let w = v.len();
    if lo > hi || lo >= w {
        out.fill(NegInfinity);
        return;
    }
    if d <= 1 {
        for j in 0..w {
            out[j] = range_max(&v[lo..=hi], j as i64 - d as i64 - lo as i64, (j + d) as i64 - lo as i64);
        }
        return;
    }
    scratch.clear();
    scratch.extend((0..w).map(|k| if (lo..=hi).contains(&k) { v[k] } else { NegInfinity }));
    let swm = Swm::build(scratch, d);
    out.copy_from_slice(swm.as_slice());
}

/// Scalar maxima shared by a whole row of the recurrence.
pub(crate) struct RowScalars {
    /// `max Mr(i+1, k)` for the left path leaving `lp`; `None` if no such `k`.
    pub mri: Option<CellValue>,
    /// `max Ml(i+1, k)` for the right path leaving `rp`.
    pub mli: Option<CellValue>,
}

pub(crate) fn row_scalars(m: &MTables, b: &BoundPair, i: usize, d: usize, w: usize) -> RowScalars {
    let (lp0, lp1, rp0, rp1) = (b.lp[i] as i64, b.lp[i + 1] as i64, b.rp[i] as i64, b.rp[i + 1] as i64);
    let d = d as i64;
    let w = w as i64;
    let (a, z) = ((lp0 - d).max(0), lp1 - 1);
    let mri = (a <= z).then(|| m.mr[i + 1].max_in(a, z));
    let (a, z) = (rp1 + 1, (w - 1).min(rp0 + d));
    let mli = (a <= z).then(|| m.ml[i + 1].max_in(a, z));
    RowScalars { mri, mli }
}

/// Computes `Ml` and `Mr` for the unit step rule.
pub fn compute_m(g: &Grid, f: &FTable, b: &BoundPair) -> Result<MTables> {
    compute_m_with(g, f, b, &StepProfile::unit(g.height()))
}

/// Computes `Ml` and `Mr` under a step profile. Windows of radius `d > 1`
/// go through the sliding window maximum over masked rows, so every row
/// costs `O(W)` regardless of `d`.
pub fn compute_m_with(g: &Grid, f: &FTable, b: &BoundPair, steps: &StepProfile) -> Result<MTables> {
    compute_m_from(g, f, b, steps, 0)
}

/// Same as [`compute_m_with`] but stops after row `first_row`; earlier rows
/// are left empty.
pub(crate) fn compute_m_from(
    g: &Grid,
    f: &FTable,
    b: &BoundPair,
    steps: &StepProfile,
    first_row: usize,
) -> Result<MTables> {
    check_inputs(g, f, b, steps)?;
    let (h, w) = (g.height(), g.width());
    let neutral = neutral_element(g);
    let mut m = MTables { ml: vec![MRow::default(); h], mr: vec![MRow::default(); h] };

    let last = h - 1;
    let (lp, rp) = (b.lp[last], b.rp[last]);
    let mut ml = MRow::over(ml_domain(lp, rp, w));
    for j in ml.domain() {
        ml.set(j, g.get(last, lp) + g.get(last, j));
    }
    let mut mr = MRow::over(mr_domain(lp, rp));
    for j in mr.domain() {
        mr.set(j, g.get(last, rp) + g.get(last, j));
    }
    m.ml[last] = ml;
    m.mr[last] = mr;

    let mut scratch = Vec::with_capacity(w);
    let mut dense = vec![NegInfinity; w];
    let mut f_right = vec![NegInfinity; w];
    let mut f_left = vec![NegInfinity; w];
    let mut ml_next = vec![NegInfinity; w];
    let mut mr_next = vec![NegInfinity; w];

    for i in (first_row..last).rev() {
        let d = steps.width_into(i + 1);
        let (lp0, lp1, rp0, rp1) = (b.lp[i], b.lp[i + 1], b.rp[i], b.rp[i + 1]);
        let f1 = f.row(i + 1);
        let s = row_scalars(&m, b, i, d, w);

        window_max(f1, d, rp1, w - 1, &mut scratch, &mut f_right);
        window_max(f1, d, 0, lp1, &mut scratch, &mut f_left);
        m.ml[i + 1].dense_into(&mut dense);
        window_max(&dense, d, 0, w - 1, &mut scratch, &mut ml_next);
        m.mr[i + 1].dense_into(&mut dense);
        window_max(&dense, d, 0, w - 1, &mut scratch, &mut mr_next);

        let mut ml = MRow::over(ml_domain(lp0, rp0, w));
        for j in ml.domain() {
            let max1 = match s.mri {
                Some(mri) => f_right[j] + mri - f1[rp1],
                None => neutral,
            };
            let max2 = if lp1 + 2 <= w { ml_next[j] } else { neutral };
            ml.set(j, g.get(i, lp0) + g.get(i, j) + max1.max(max2));
        }
        let mut mr = MRow::over(mr_domain(lp0, rp0));
        for j in mr.domain() {
            let max1 = match s.mli {
                Some(mli) => f_left[j] + mli - f1[lp1],
                None => neutral,
            };
            let max2 = if rp1 >= 1 { mr_next[j] } else { neutral };
            mr.set(j, g.get(i, rp0) + g.get(i, j) + max1.max(max2));
        }
        m.ml[i] = ml;
        m.mr[i] = mr;
    }
    Ok(m)
}

/// Solver output: the best total and a witness pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cp2Result {
    pub total: CellValue,
    pub left_path: FallingPath,
    pub right_path: FallingPath,
}

/// Best total of two non-intersecting falling paths from the two top
/// corners under the unit step rule.
///
/// On nonnegative grids this is the optimum of the problem where a shared
/// cell is collected once. With negative values it is the best pair of
/// non-intersecting paths confined to the `lp`/`rp` corridor; that equals
/// the node-disjoint optimum on grids without bottlenecks but is not
/// claimed otherwise.
pub fn solve_cp2(g: &Grid) -> Cp2Result {
    solve_cp2_with(g, &StepProfile::unit(g.height())).expect("unit steps are always valid")
}

/// [`solve_cp2`] under a general step profile.
pub fn solve_cp2_with(g: &Grid, steps: &StepProfile) -> Result<Cp2Result> {
    steps.check(g)?;
    let f = compute_f(g, steps);
    let b = compute_bounds_with(&f, steps);
    let w = g.width();
    if !b.intersect() {
        return Ok(Cp2Result {
            total: f.get(0, 0) + f.get(0, w - 1),
            left_path: b.left_path(),
            right_path: b.right_path(),
        });
    }
    let m = compute_m_with(g, &f, &b, steps)?;
    let total = m.ml(0, w - 1).expect("Ml(0, W-1) is always defined");
    let (l, r) = trace_witness(g, &f, &b, &m, steps, trace::Start::Left(w - 1), 0);
    Ok(Cp2Result {
        total,
        left_path: FallingPath::from_columns(0, &l),
        right_path: FallingPath::from_columns(0, &r),
    })
}
