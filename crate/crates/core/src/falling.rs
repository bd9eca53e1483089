//! Single-path dynamic programming: the downward `F` table, the upward `udF`
//! table, the extreme maximal paths `lp`/`rp` and the single-robot solver.

use crate::cell::{CellValue, NegInfinity};
use crate::grid::{FallingPath, Grid, StepProfile};
use crate::swm::{range_argmax_first, range_argmax_last, Swm};

/// A dense `H x W` table of path sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    height: usize,
    width: usize,
    values: Vec<CellValue>,
}

/// `F[i][j]`: best sum of a falling path from `(i, j)` to the bottom row.
pub type FTable = Table;
/// `udF[i][j]`: best sum of a falling path from row 0 down to `(i, j)`.
pub type UdFTable = Table;

impl Table {
    fn filled(height: usize, width: usize) -> Table {
        Table { height, width, values: vec![NegInfinity; height * width] }
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> CellValue {
        self.values[i * self.width + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[CellValue] {
        &self.values[i * self.width..(i + 1) * self.width]
    }

    fn row_mut(&mut self, i: usize) -> &mut [CellValue] {
        &mut self.values[i * self.width..(i + 1) * self.width]
    }

    pub fn to_rows(&self) -> Vec<Vec<CellValue>> {
        self.values.chunks(self.width).map(<[_]>::to_vec).collect()
    }

    /// Vertical flip, used to relate `F` and `udF`.
    pub fn flip_vertical(&self) -> Table {
        let values = self.values.chunks(self.width).rev().flatten().copied().collect();
        Table { values, ..*self }
    }
}

/// Writes `out[j] = g[j] + max(prev[j-d..=j+d])` for one row.
fn relax_row(g: &[CellValue], prev: &[CellValue], d: usize, out: &mut [CellValue]) {
    let w = g.len();
    if d == 1 {
        for j in 0..w {
            let mut m = prev[j];
            if j > 0 {
                m = m.max(prev[j - 1]);
            }
            if j + 1 < w {
                m = m.max(prev[j + 1]);
            }
            out[j] = g[j] + m;
        }
    } else {
        let swm = Swm::build(prev, d);
        for j in 0..w {
            out[j] = g[j] + swm.query(j);
        }
    }
}

/// Downward table under the given step profile.
pub fn compute_f(g: &Grid, steps: &StepProfile) -> FTable {
    let (h, w) = (g.height(), g.width());
    let mut f = Table::filled(h, w);
    f.row_mut(h - 1).copy_from_slice(g.row(h - 1));
    let mut below = g.row(h - 1).to_vec();
    let mut cur = vec![NegInfinity; w];
    for i in (0..h - 1).rev() {
        relax_row(g.row(i), &below, steps.width_into(i + 1), &mut cur);
        f.row_mut(i).copy_from_slice(&cur);
        std::mem::swap(&mut below, &mut cur);
    }
    f
}

/// Upward table under the unit step rule.
pub fn compute_udf(g: &Grid) -> UdFTable {
    compute_udf_with(g, &StepProfile::unit(g.height()))
}

pub fn compute_udf_with(g: &Grid, steps: &StepProfile) -> UdFTable {
    let (h, w) = (g.height(), g.width());
    let mut t = Table::filled(h, w);
    t.row_mut(0).copy_from_slice(g.row(0));
    let mut above = g.row(0).to_vec();
    let mut cur = vec![NegInfinity; w];
    for i in 1..h {
        relax_row(g.row(i), &above, steps.width_into(i), &mut cur);
        t.row_mut(i).copy_from_slice(&cur);
        std::mem::swap(&mut above, &mut cur);
    }
    t
}

/// The leftmost maximal path from `(0, 0)` and the rightmost maximal path
/// from `(0, W-1)`, stored as one column per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPair {
    pub lp: Vec<usize>,
    pub rp: Vec<usize>,
}

impl BoundPair {
    pub fn left_path(&self) -> FallingPath {
        FallingPath::from_columns(0, &self.lp)
    }

    pub fn right_path(&self) -> FallingPath {
        FallingPath::from_columns(0, &self.rp)
    }

    /// First row where the two paths meet, with the shared column.
    pub fn first_intersection(&self) -> Option<(usize, usize)> {
        (0..self.lp.len()).find(|&i| self.lp[i] == self.rp[i]).map(|i| (i, self.lp[i]))
    }

    pub fn intersect(&self) -> bool {
        self.lp.iter().zip(&self.rp).any(|(a, b)| a >= b)
    }
}

/// Bounds for the unit step rule.
///
/// The comparison order is fixed: for `lp` the left neighbour wins ties
/// against the straight move, then the right neighbour must be strictly
/// better; `rp` mirrors this.
pub fn compute_bounds(f: &FTable) -> BoundPair {
    let (h, w) = (f.height(), f.width());
    let mut lp = vec![0; h];
    let mut rp = vec![w - 1; h];
    for i in 1..h {
        let row = f.row(i);
        let lj = lp[i - 1];
        let mut l = lj;
        if lj > 0 && row[lj - 1] >= row[lj] {
            l = lj - 1;
        }
        if lj + 1 < w && row[l] < row[lj + 1] {
            l = lj + 1;
        }
        lp[i] = l;

        let rj = rp[i - 1];
        let mut r = rj;
        if rj + 1 < w && row[rj + 1] >= row[rj] {
            r = rj + 1;
        }
        if rj > 0 && row[r] < row[rj - 1] {
            r = rj - 1;
        }
        rp[i] = r;
    }
    BoundPair { lp, rp }
}

/// Bounds under a general step profile: leftmost and rightmost argmax in
/// each clipped window. Agrees with [`compute_bounds`] for unit steps.
pub fn compute_bounds_with(f: &FTable, steps: &StepProfile) -> BoundPair {
    if steps.is_unit() {
        return compute_bounds(f);
    }
    let (h, w) = (f.height(), f.width());
    let mut lp = vec![0; h];
    let mut rp = vec![w - 1; h];
    for i in 1..h {
        let d = steps.width_into(i) as i64;
        let row = f.row(i);
        let l = lp[i - 1] as i64;
        let r = rp[i - 1] as i64;
        lp[i] = range_argmax_first(row, l - d, l + d).expect("window contains its center");
        rp[i] = range_argmax_last(row, r - d, r + d).expect("window contains its center");
    }
    BoundPair { lp, rp }
}

/// Best single path from `(0, start_col)`, with a witness that follows the
/// leftmost maximizing successor.
pub fn solve_mfps(g: &Grid, start_col: usize, steps: &StepProfile) -> (CellValue, FallingPath) {
    let f = compute_f(g, steps);
    let path = trace_f_path(&f, 0, start_col, steps);
    (f.get(0, start_col), FallingPath::from_columns(0, &path))
}

/// Columns of an `F`-defined path from `(row, col)` to the bottom row.
pub fn trace_f_path(f: &FTable, row: usize, col: usize, steps: &StepProfile) -> Vec<usize> {
    let mut cols = Vec::with_capacity(f.height() - row);
    let mut c = col;
    cols.push(c);
    for i in row + 1..f.height() {
        let d = steps.width_into(i) as i64;
        c = range_argmax_first(f.row(i), c as i64 - d, c as i64 + d).expect("nonempty window");
        cols.push(c);
    }
    cols
}
