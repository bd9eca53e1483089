//! Two robots starting at arbitrary top-row columns, sharing collected
//! values when they stand on the same cell.
//!
//! Far-apart robots never meet, so their single-path optima add up.
//! Otherwise the reachable column window is turned upside down under a
//! zero block. Paths from the new top corners then end on the start
//! columns, which carry a boost large enough that every optimal pair uses
//! both of them.

use crate::cell::{CellValue, Finite};
use crate::disjoint::solve_cp2;
use crate::error::{Error, Result};
use crate::falling::compute_f;
use crate::grid::{Grid, StepProfile};

/// A grid and two distinct start columns `j1 < j2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRobotInstance {
    pub grid: Grid,
    pub j1: usize,
    pub j2: usize,
}

impl TwoRobotInstance {
    pub fn new(grid: Grid, j1: usize, j2: usize) -> Result<Self> {
        if j1 >= j2 || j2 >= grid.width() {
            return Err(Error::InvalidInstance(format!(
                "start columns must satisfy j1 < j2 < {}, got {j1} and {j2}",
                grid.width()
            )));
        }
        if !grid.is_nonnegative() {
            return Err(Error::InvalidInstance("two-robot grids must be nonnegative".into()));
        }
        Ok(TwoRobotInstance { grid, j1, j2 })
    }
}

/// Best total of two robots from `(0, j1)` and `(0, j2)` to the bottom row.
pub fn solve_two_robots(inst: &TwoRobotInstance) -> Result<CellValue> {
    let TwoRobotInstance { grid: g, j1, j2 } = inst;
    let (j1, j2) = (*j1, *j2);
    let (h, w) = (g.height(), g.width());
    if j2 - j1 > 2 * h {
        let f = compute_f(g, &StepProfile::unit(h));
        return Ok(f.get(0, j1) + f.get(0, j2));
    }

    let lo = j1.saturating_sub(h);
    let hi = (j2 + h).min(w - 1);
    let width = hi - lo + 1;
    let m = g.max_finite().unwrap_or(0).max(0);
    let boost = 2 * m * h as i64 + 1;

    let rows = 3 * h;
    let mut cells = vec![Finite(0); rows * width];
    for i in 0..h {
        // window row i lands on row 3H-1-i
        let dst = (rows - 1 - i) * width;
        cells[dst..dst + width].copy_from_slice(&g.row(i)[lo..=hi]);
    }
    let last = (rows - 1) * width;
    cells[last + j1 - lo] = cells[last + j1 - lo] + Finite(boost);
    cells[last + j2 - lo] = cells[last + j2 - lo] + Finite(boost);
    let reduced = Grid::from_cells_with_bound(rows, width, cells, boost + m)?;
    Ok(solve_cp2(&reduced).total - Finite(2 * boost))
}
