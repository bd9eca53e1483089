//! Maximum-sum pairs of non-intersecting falling paths on integer grids.
//!
//! Two robots start in the top corners of a grid and move down one row per
//! step, shifting at most one column. [`solve_cp2`] finds the best total in
//! `O(H * W)`; the [`oracle`] and [`suurballe`] modules hold slower
//! independent solvers used to check it.

pub mod batch;
pub mod cell;
pub mod disjoint;
pub mod error;
pub mod extensions;
pub mod falling;
pub mod grid;
pub mod oracle;
pub mod scaling;
pub mod suurballe;
pub mod swm;
pub mod verify;

pub use cell::{CellValue, Finite, NegInfinity};
pub use error::{Error, Result};
pub use falling::{compute_bounds, compute_f, compute_udf, solve_mfps, BoundPair, FTable, UdFTable};
pub use grid::{generate_grid, path_sum, validate_path, FallingPath, Grid, StepProfile, VALUE_BOUND};
pub use disjoint::{compute_m, compute_m_four_case, solve_cp2, solve_cp2_fast, Cp2Result, FirstIntersection, MTables};
pub use extensions::{reduce_diamond_mine, solve_cp2_extended, solve_diamond_mine, solve_two_robots, DmReduction, Swm, TwoRobotInstance};
pub use oracle::{oracle_cubic, oracle_dm, oracle_exhaustive};
pub use suurballe::solve_cp2_via_suurballe;
