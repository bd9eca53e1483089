//! Variant that fills `Ml`/`Mr` only below the first row where `lp` and
//! `rp` meet.
//!
//! Above that row one of the optimal paths coincides with its bound, so the
//! pair splits into a bound prefix, a free prefix found with an upward
//! table, and an `Ml`/`Mr` tail.

use crate::cell::{CellValue, NegInfinity};
use crate::falling::{compute_bounds, compute_f, compute_udf, UdFTable};
use crate::grid::{FallingPath, Grid, StepProfile};
use crate::swm::{range_argmax_first, range_max};

use super::trace::{trace_witness, Start};
use super::{compute_m_from, Cp2Result};

/// First row where `lp` and `rp` share a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FirstIntersection {
    pub fi: usize,
    pub fj: usize,
}

#[derive(Clone, Copy)]
enum Corner {
    Left,
    Right,
}

/// Upward table over rows `0..=fi` of the grid restricted to the cells a
/// path from the given top corner can reach; row `fi` is blocked.
fn corner_udf(g: &Grid, fi: usize, corner: Corner) -> UdFTable {
    let w = g.width();
    let mut cells = Vec::with_capacity((fi + 1) * w);
    for i in 0..=fi {
        for j in 0..w {
            let open = i < fi
                && match corner {
                    Corner::Left => j <= i,
                    Corner::Right => j + i >= w - 1,
                };
            cells.push(if open { g.get(i, j) } else { NegInfinity });
        }
    }
    let tg = Grid::from_cells(fi + 1, w, cells).expect("masked copy of a valid grid");
    compute_udf(&tg)
}

/// Walks an upward table from `(row, col)` back to row 0.
fn backtrack(ud: &UdFTable, row: usize, col: usize) -> Vec<usize> {
    let mut cols = vec![col; row + 1];
    for r in (0..row).rev() {
        let c = cols[r + 1] as i64;
        cols[r] = range_argmax_first(ud.row(r), c - 1, c + 1).expect("nonempty window");
    }
    cols
}

/// Same total as [`super::solve_cp2`] with the tables filled only from the
/// first intersection of `lp` and `rp` downward.
pub fn solve_cp2_fast(g: &Grid) -> Cp2Result {
    let (h, w) = (g.height(), g.width());
    let steps = StepProfile::unit(h);
    let f = compute_f(g, &steps);
    let b = compute_bounds(&f);
    let Some((fi, fj)) = b.first_intersection() else {
        return Cp2Result {
            total: f.get(0, 0) + f.get(0, w - 1),
            left_path: b.left_path(),
            right_path: b.right_path(),
        };
    };
    let m = compute_m_from(g, &f, &b, &steps, fi).expect("bounds come from the same F");
    let ud_right = corner_udf(g, fi, Corner::Right);
    let ud_left = corner_udf(g, fi, Corner::Left);

    let prefix = |ud: &UdFTable, j: usize| range_max(ud.row(fi - 1), j as i64 - 1, j as i64 + 1);
    let mut l_best: Option<(CellValue, usize)> = None;
    for j in m.ml[fi].domain() {
        let v = m.ml(fi, j).unwrap() + prefix(&ud_right, j);
        if l_best.map_or(true, |(b, _)| v > b) {
            l_best = Some((v, j));
        }
    }
    let mut r_best: Option<(CellValue, usize)> = None;
    for j in m.mr[fi].domain() {
        let v = m.mr(fi, j).unwrap() + prefix(&ud_left, j);
        if r_best.map_or(true, |(b, _)| v > b) {
            r_best = Some((v, j));
        }
    }
    let l_max = l_best.map(|(v, j)| (v + f.get(0, 0) - f.get(fi, fj), j));
    let r_max = r_best.map(|(v, j)| (v + f.get(0, w - 1) - f.get(fi, fj), j));

    let use_left = match (l_max, r_max) {
        (Some((a, _)), Some((c, _))) => a >= c,
        (Some(_), None) => true,
        (None, _) => false,
    };
    let (total, j, start) = if use_left {
        let (v, j) = l_max.unwrap();
        (v, j, Start::Left(j))
    } else {
        let (v, j) = r_max.expect("one side of the first intersection is open");
        (v, j, Start::Right(j))
    };

    let (tail_l, tail_r) = trace_witness(g, &f, &b, &m, &steps, start, fi);
    let (mut left, mut right): (Vec<usize>, Vec<usize>);
    if use_left {
        left = b.lp[..fi].to_vec();
        let end = range_argmax_first(ud_right.row(fi - 1), j as i64 - 1, j as i64 + 1).unwrap();
        right = backtrack(&ud_right, fi - 1, end);
        // Lift the free prefix off lp where they touch.
        for (r, c) in right.iter_mut().enumerate() {
            *c = (*c).max(b.rp[r]);
        }
    } else {
        right = b.rp[..fi].to_vec();
        let end = range_argmax_first(ud_left.row(fi - 1), j as i64 - 1, j as i64 + 1).unwrap();
        left = backtrack(&ud_left, fi - 1, end);
        for (r, c) in left.iter_mut().enumerate() {
            *c = (*c).min(b.lp[r]);
        }
    }
    left.extend(tail_l);
    right.extend(tail_r);
    Cp2Result {
        total,
        left_path: FallingPath::from_columns(0, &left),
        right_path: FallingPath::from_columns(0, &right),
    }
}

/// The first intersection of the bound paths, if they meet.
pub fn first_intersection(g: &Grid) -> Option<FirstIntersection> {
    let f = compute_f(g, &StepProfile::unit(g.height()));
    compute_bounds(&f).first_intersection().map(|(fi, fj)| FirstIntersection { fi, fj })
}
