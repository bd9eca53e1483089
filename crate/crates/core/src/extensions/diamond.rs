//! Diamond Mine: collect the most diamonds on a right/down walk from the
//! top-left to the bottom-right corner and a left/up walk back.
//!
//! The grid is rotated by 45 degrees so both walks become falling paths.
//! Gaps between rotated cells get zero-valued corridor cells, so two
//! walks that share a cell can still be drawn apart, and blocked cells and
//! everything outside the rotated square become large negative values.
//!
//! A corridor cell above a blocked cell is blocked as well. When both walks
//! are forced through cells whose only free corridor is such a cell, the
//! reduced optimum falls below the true one; it never exceeds it, and on
//! grids without blocked cells the two agree.

use std::collections::VecDeque;

use crate::cell::{CellValue, Finite};
use crate::disjoint::solve_cp2;
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Result of reducing a Diamond Mine instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DmReduction {
    /// The bottom-right corner cannot be reached.
    Unreachable,
    /// The `(3N-2) x (2N-1)` grid whose two-path optimum is the answer.
    Reduced(Grid),
}

fn check_instance(g_dm: &Grid) -> Result<usize> {
    let n = g_dm.height();
    if g_dm.width() != n {
        return Err(Error::InvalidInstance(format!("diamond mine grid must be square, got {}x{}", n, g_dm.width())));
    }
    for i in 0..n {
        for j in 0..n {
            if !matches!(g_dm.get(i, j), Finite(-1..=1)) {
                return Err(Error::InvalidInstance(format!("cell ({i}, {j}) is not -1, 0 or 1")));
            }
        }
    }
    Ok(n)
}

fn reachable(g_dm: &Grid) -> bool {
    let n = g_dm.height();
    let open = |i: usize, j: usize| g_dm.get(i, j) != Finite(-1);
    if !open(0, 0) {
        return false;
    }
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if i + 1 == n && j + 1 == n {
            return true;
        }
        for (a, b) in [(i + 1, j), (i, j + 1)] {
            if a < n && b < n && open(a, b) && !seen[a * n + b] {
                seen[a * n + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    false
}

/// Rotates an `N x N` grid over `{-1, 0, 1}` into a two-path instance.
pub fn reduce_diamond_mine(g_dm: &Grid) -> Result<DmReduction> {
    let big_n = check_instance(g_dm)?;
    if !reachable(g_dm) {
        return Ok(DmReduction::Unreachable);
    }
    let n = big_n - 1;
    let side = 2 * n + 1;
    let blocker = -10 * big_n as i64;
    let dm = |i: usize, j: usize| g_dm.get(i, j) == Finite(-1);

    let mut g1 = vec![vec![0i64; side]; side];
    for i in 0..=n {
        for j in 0..=n {
            g1[i + j][n + i - j] = match g_dm.get(i, j) {
                Finite(v) => v,
                _ => unreachable!("checked above"),
            };
        }
    }
    // Corridor cell above every rotated cell but the first. Its horizontal
    // neighbours are the rotated cells above and to the left in the
    // original grid.
    for i in 0..=n {
        for j in 0..=n {
            if i + j == 0 {
                continue;
            }
            let walled = i > 0 && j > 0 && dm(i - 1, j) && dm(i, j - 1);
            g1[i + j - 1][n + i - j] = if dm(i, j) || walled { blocker } else { 0 };
        }
    }

    let mut cells = Vec::with_capacity((3 * n + 1) * side);
    cells.resize(n * side, Finite(0));
    for (i, row) in g1.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let outside = i + j < n || i + j > 3 * n || i + n < j || i > j + n;
            let v = if 0 < i && i < 2 * n && outside {
                blocker
            } else if (i == 0 && (j + 1 < n || j > n + 1)) || (i == 2 * n && j != n) {
                0
            } else if v == -1 {
                blocker
            } else {
                v
            };
            cells.push(Finite(v));
        }
    }
    Ok(DmReduction::Reduced(Grid::from_cells(3 * n + 1, side, cells)?))
}

/// Most diamonds collected on the round trip, or 0 if the far corner is
/// unreachable.
pub fn solve_diamond_mine(g_dm: &Grid) -> Result<CellValue> {
    match reduce_diamond_mine(g_dm)? {
        DmReduction::Unreachable => Ok(Finite(0)),
        DmReduction::Reduced(g) => Ok(solve_cp2(&g).total),
    }
}
