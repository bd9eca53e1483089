//! Problem model: grids, falling paths, step profiles and instance generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cell::{CellValue, Finite};
use crate::error::{Error, Result};

/// Default bound on the magnitude of finite cell values.
pub const VALUE_BOUND: i64 = 1_000_000_000;

/// Largest admissible `bound * cells` product. Keeps every path or pair sum,
/// and every difference of such sums, exact in `i64`.
const ARITHMETIC_LIMIT: i128 = 1 << 62;

/// An immutable `height x width` grid stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    height: usize,
    width: usize,
    cells: Vec<CellValue>,
}

impl Grid {
    /// Builds a grid from rows, checking shape and the default value bound.
    pub fn from_rows<R, C>(rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = C>,
        C: IntoIterator<Item = CellValue>,
    {
        Self::from_rows_with_bound(rows, VALUE_BOUND)
    }

    pub fn from_rows_with_bound<R, C>(rows: R, bound: i64) -> Result<Self>
    where
        R: IntoIterator<Item = C>,
        C: IntoIterator<Item = CellValue>,
    {
        let mut cells = Vec::new();
        let mut width = None;
        let mut height = 0;
        for (r, row) in rows.into_iter().enumerate() {
            let before = cells.len();
            cells.extend(row);
            let got = cells.len() - before;
            match width {
                None => width = Some(got),
                Some(w) if w != got => {
                    return Err(Error::RaggedRow { row: r, got, expected: w })
                }
                _ => {}
            }
            height += 1;
        }
        Self::from_cells_with_bound(height, width.unwrap_or(0), cells, bound)
    }

    /// Convenience constructor for finite grids, mostly used by tests.
    pub fn from_i64<const W: usize>(rows: &[[i64; W]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Finite(v))))
    }

    pub fn from_vecs(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Finite(v))))
    }

    pub fn from_cells(height: usize, width: usize, cells: Vec<CellValue>) -> Result<Self> {
        Self::from_cells_with_bound(height, width, cells, VALUE_BOUND)
    }

    pub fn from_cells_with_bound(
        height: usize,
        width: usize,
        cells: Vec<CellValue>,
        bound: i64,
    ) -> Result<Self> {
        if height < 2 || width < 2 {
            return Err(Error::TooSmall { height, width });
        }
        if cells.len() != height * width {
            return Err(Error::RaggedRow {
                row: cells.len() / width,
                got: cells.len() % width,
                expected: width,
            });
        }
        let n = height * width;
        if bound < 0 || (bound as i128) * (n as i128) >= ARITHMETIC_LIMIT {
            return Err(Error::BoundOverflow { bound, cells: n });
        }
        for (idx, c) in cells.iter().enumerate() {
            if let Finite(v) = *c {
                if v.unsigned_abs() > bound as u64 {
                    return Err(Error::ValueOutOfBounds {
                        row: idx / width,
                        col: idx % width,
                        value: v,
                        bound,
                    });
                }
            }
        }
        Ok(Grid { height, width, cells })
    }

    pub fn zeros(height: usize, width: usize) -> Result<Self> {
        Self::from_cells(height, width, vec![CellValue::ZERO; height * width])
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
    pub fn get(&self, row: usize, col: usize) -> CellValue {
        self.cells[row * self.width + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[CellValue] {
        &self.cells[row * self.width..(row + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CellValue]> {
        self.cells.chunks_exact(self.width)
    }

    pub fn cells(&self) -> &[CellValue] {
        &self.cells
    }

    pub fn is_nonnegative(&self) -> bool {
        self.cells.iter().all(|c| matches!(c, Finite(v) if *v >= 0))
    }

    pub fn is_finite(&self) -> bool {
        self.cells.iter().all(|c| c.is_finite())
    }

    /// Largest finite value, if any cell is finite.
    pub fn max_finite(&self) -> Option<i64> {
        self.cells.iter().filter_map(|c| c.finite()).max()
    }

    /// Returns a copy with `f` applied to every cell. The result is checked
    /// against the default bound.
    pub fn map(&self, f: impl FnMut(CellValue) -> CellValue) -> Result<Grid> {
        Grid::from_cells(self.height, self.width, self.cells.iter().copied().map(f).collect())
    }

    /// Top and bottom rows swapped.
    pub fn flip_vertical(&self) -> Grid {
        let cells = self.cells.chunks_exact(self.width).rev().flatten().copied().collect();
        Grid { cells, ..*self }
    }

    /// Left and right columns swapped.
    pub fn mirror_horizontal(&self) -> Grid {
        let cells = self
            .rows()
            .flat_map(|r| r.iter().rev().copied())
            .collect();
        Grid { cells, ..*self }
    }

    /// Rows `from..` as a new grid. Needs at least two remaining rows.
    pub fn rows_from(&self, from: usize) -> Result<Grid> {
        Grid::from_cells(
            self.height - from,
            self.width,
            self.cells[from * self.width..].to_vec(),
        )
    }

    /// Returns a copy with one cell replaced. Skips the bound check so that
    /// callers can build masked grids.
    pub fn with_cell(&self, row: usize, col: usize, value: CellValue) -> Grid {
        let mut g = self.clone();
        g.cells[row * self.width + col] = value;
        g
    }
}

/// Per-row maximal lateral step. `width_into(i)` is the step allowed when
/// moving from row `i - 1` into row `i`, for `i` in `1..height`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepProfile {
    steps: Vec<usize>,
}

impl StepProfile {
    /// The basic rule: one column left, straight, or one column right.
    pub fn unit(height: usize) -> Self {
        StepProfile { steps: vec![1; height.saturating_sub(1)] }
    }

    /// `steps[k]` is the step into row `k + 1`; needs `height - 1` entries,
    /// each below `width`.
    pub fn new(steps: Vec<usize>, height: usize, width: usize) -> Result<Self> {
        if steps.len() + 1 != height {
            return Err(Error::InvalidSteps(format!(
                "expected {} step widths, got {}",
                height.saturating_sub(1),
                steps.len()
            )));
        }
        if let Some((k, &d)) = steps.iter().enumerate().find(|(_, &d)| d >= width) {
            return Err(Error::InvalidSteps(format!(
                "step into row {} is {d}, must be below width {width}",
                k + 1
            )));
        }
        Ok(StepProfile { steps })
    }

    /// Step profile without validation against a grid; checked at use.
    pub fn from_raw(steps: Vec<usize>) -> Self {
        StepProfile { steps }
    }

    #[inline]
    pub fn width_into(&self, row: usize) -> usize {
        self.steps[row - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.steps
    }

    pub fn is_unit(&self) -> bool {
        self.steps.iter().all(|&d| d == 1)
    }

    pub fn check(&self, grid: &Grid) -> Result<()> {
        StepProfile::new(self.steps.clone(), grid.height(), grid.width()).map(|_| ())
    }
}

/// A falling path: one column per row starting at `start_row`.
///
/// Columns are signed so that out-of-grid candidates can be represented and
/// rejected by [`validate_path`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FallingPath {
    pub start_row: usize,
    pub cols: Vec<i64>,
}

impl FallingPath {
    pub fn new(start_row: usize, cols: Vec<i64>) -> Self {
        FallingPath { start_row, cols }
    }

    pub fn from_columns(start_row: usize, cols: &[usize]) -> Self {
        FallingPath { start_row, cols: cols.iter().map(|&c| c as i64).collect() }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn end_row(&self) -> usize {
        self.start_row + self.cols.len() - 1
    }

    /// Column at absolute `row`, if the path covers it.
    pub fn at(&self, row: usize) -> Option<i64> {
        row.checked_sub(self.start_row).and_then(|k| self.cols.get(k).copied())
    }

    /// The subpath covering rows `from..=to`.
    pub fn subpath(&self, from: usize, to: usize) -> FallingPath {
        let a = from - self.start_row;
        let b = to - self.start_row;
        FallingPath { start_row: from, cols: self.cols[a..=b].to_vec() }
    }
}

/// Sum of grid values along `path`.
pub fn path_sum(grid: &Grid, path: &FallingPath) -> Result<CellValue> {
    if path.start_row + path.cols.len() > grid.height() {
        return Err(Error::PathEscapesGrid);
    }
    let mut total = CellValue::ZERO;
    for (k, &c) in path.cols.iter().enumerate() {
        if c < 0 || c as usize >= grid.width() {
            return Err(Error::PathEscapesGrid);
        }
        total = total + grid.get(path.start_row + k, c as usize);
    }
    Ok(total)
}

/// Whether every column is inside the grid and every move respects the
/// step width into its row.
pub fn validate_path(grid: &Grid, path: &FallingPath, steps: &StepProfile) -> bool {
    let w = grid.width() as i64;
    if path.start_row + path.cols.len() > grid.height() {
        return false;
    }
    if path.cols.iter().any(|&c| c < 0 || c >= w) {
        return false;
    }
    path.cols.windows(2).enumerate().all(|(k, pair)| {
        let row = path.start_row + k + 1;
        match steps.as_slice().get(row - 1) {
            Some(&d) => (pair[1] - pair[0]).unsigned_abs() <= d as u64,
            None => false,
        }
    })
}

/// Deterministic pseudo-random grid with values uniform in `[lo, hi]`.
pub fn generate_grid(h: usize, w: usize, lo: i64, hi: i64, seed: u64) -> Result<Grid> {
    if h < 2 || w < 2 {
        return Err(Error::TooSmall { height: h, width: w });
    }
    if lo > hi || lo.unsigned_abs() > VALUE_BOUND as u64 || hi.unsigned_abs() > VALUE_BOUND as u64 {
        return Err(Error::BadRange { lo, hi });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..h * w).map(|_| Finite(rng.gen_range(lo..=hi))).collect();
    Grid::from_cells(h, w, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::NegInfinity;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest};

    fn g22() -> Grid {
        Grid::from_i64(&[[1, 2], [3, 4]]).unwrap()
    }

    #[test]
    fn path_sum_examples() {
        let g = g22();
        assert_eq!(path_sum(&g, &FallingPath::new(0, vec![0, 0])).unwrap(), 4);
        assert_eq!(path_sum(&g, &FallingPath::new(0, vec![1, 0])).unwrap(), 5);
        let z = Grid::zeros(3, 3).unwrap();
        assert_eq!(path_sum(&z, &FallingPath::new(0, vec![0, 1, 2])).unwrap(), 0);
    }

    #[test]
    fn path_sum_rejects_escaping_paths() {
        let g = g22();
        assert_eq!(path_sum(&g, &FallingPath::new(0, vec![0, 2])), Err(Error::PathEscapesGrid));
        assert_eq!(path_sum(&g, &FallingPath::new(1, vec![0, 0])), Err(Error::PathEscapesGrid));
        assert_eq!(path_sum(&g, &FallingPath::new(0, vec![-1, 0])), Err(Error::PathEscapesGrid));
    }

    #[test]
    fn path_sum_propagates_neg_infinity() {
        let g = g22().with_cell(1, 0, NegInfinity);
        assert_eq!(path_sum(&g, &FallingPath::new(0, vec![0, 0])).unwrap(), NegInfinity);
    }

    #[test]
    fn validate_path_examples() {
        let g = Grid::zeros(2, 3).unwrap();
        let p = FallingPath::new(0, vec![0, 2]);
        assert!(!validate_path(&g, &p, &StepProfile::unit(2)));
        assert!(validate_path(&g, &p, &StepProfile::new(vec![2], 2, 3).unwrap()));
        assert!(!validate_path(&g, &FallingPath::new(0, vec![0, -1]), &StepProfile::unit(2)));
    }

    #[test]
    fn generate_grid_examples() {
        let g = generate_grid(2, 2, 0, 0, 7).unwrap();
        assert_eq!(g, Grid::zeros(2, 2).unwrap());
        assert_eq!(generate_grid(3, 3, 0, 9, 1).unwrap(), generate_grid(3, 3, 0, 9, 1).unwrap());
        let g = generate_grid(4, 3, -5, 5, 2).unwrap();
        assert!(g.cells().iter().all(|c| (-5..=5).contains(&c.unwrap_finite())));
        assert!(generate_grid(1, 3, 0, 1, 0).is_err());
        assert!(generate_grid(3, 3, 2, 1, 0).is_err());
        assert!(generate_grid(3, 3, 0, VALUE_BOUND + 1, 0).is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(Grid::from_vecs(&[vec![1, 2]]), Err(Error::TooSmall { .. })));
        assert!(matches!(
            Grid::from_vecs(&[vec![1, 2], vec![3]]),
            Err(Error::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            Grid::from_vecs(&[vec![1, 2], vec![3, VALUE_BOUND + 1]]),
            Err(Error::ValueOutOfBounds { .. })
        ));
        assert!(matches!(
            Grid::from_cells_with_bound(2, 2, vec![CellValue::ZERO; 4], 1 << 61),
            Err(Error::BoundOverflow { .. })
        ));
    }

    #[test]
    fn step_profile_validation() {
        assert!(StepProfile::new(vec![1, 2], 3, 3).is_ok());
        assert!(StepProfile::new(vec![1, 3], 3, 3).is_err());
        assert!(StepProfile::new(vec![1], 3, 3).is_err());
    }

    fn random_path(h: usize, w: usize, seed: u64) -> FallingPath {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = rng.gen_range(0..w as i64);
        let mut cols = vec![c];
        for _ in 1..h {
            c = (c + rng.gen_range(-1..=1)).clamp(0, w as i64 - 1);
            cols.push(c);
        }
        FallingPath::new(0, cols)
    }

    proptest! {
        #[test]
        fn sum_is_additive_over_splits(h in 2usize..9, w in 2usize..9, seed: u64, split in 0usize..8) {
            let g = generate_grid(h, w, -9, 9, seed).unwrap();
            let p = random_path(h, w, seed ^ 0x55);
            let s = split % (h - 1);
            let head = p.subpath(0, s);
            let tail = p.subpath(s + 1, h - 1);
            prop_assert_eq!(
                path_sum(&g, &p).unwrap(),
                path_sum(&g, &head).unwrap() + path_sum(&g, &tail).unwrap()
            );
        }

        #[test]
        fn crossing_tails_are_swappable(h in 3usize..10, w in 2usize..9, s1: u64, s2: u64) {
            let g = Grid::zeros(h, w).unwrap();
            let steps = StepProfile::unit(h);
            let p1 = random_path(h, w, s1);
            let p2 = random_path(h, w, s2);
            for i in 0..h - 1 {
                if p1.cols[i] <= p2.cols[i] && p1.cols[i + 1] >= p2.cols[i + 1] {
                    let mut a = p1.cols[..=i].to_vec();
                    a.extend_from_slice(&p2.cols[i + 1..]);
                    let mut b = p2.cols[..=i].to_vec();
                    b.extend_from_slice(&p1.cols[i + 1..]);
                    prop_assert!(validate_path(&g, &FallingPath::new(0, a), &steps));
                    prop_assert!(validate_path(&g, &FallingPath::new(0, b), &steps));
                }
            }
        }

        #[test]
        fn validity_ignores_values(h in 2usize..8, w in 2usize..8, seed: u64, shift in -100i64..100) {
            let g = generate_grid(h, w, -9, 9, seed).unwrap();
            let shifted = g.map(|c| c + shift).unwrap();
            let steps = StepProfile::unit(h);
            let p = random_path(h, w, seed);
            let mut bad = p.clone();
            bad.cols[h - 1] += 5;
            prop_assert_eq!(validate_path(&g, &p, &steps), validate_path(&shifted, &p, &steps));
            prop_assert_eq!(validate_path(&g, &bad, &steps), validate_path(&shifted, &bad, &steps));
        }
    }
}
