use crate::cell::CellValue;
use crate::disjoint::solve_cp2_with;
use crate::error::Result;
use crate::grid::{Grid, StepProfile};

/// Best pair of non-intersecting paths when the move into row `i` may shift
/// by up to `steps.width_into(i)` columns.
pub fn solve_cp2_extended(g: &Grid, steps: &StepProfile) -> Result<CellValue> {
    Ok(solve_cp2_with(g, steps)?.total)
}
