//! Problems that reduce to the two-path solver: wider step rules, the
//! Diamond Mine round trip, and two robots at arbitrary start columns.

mod diamond;
mod extended;
mod robots;

pub use crate::swm::Swm;
pub use diamond::{reduce_diamond_mine, solve_diamond_mine, DmReduction};
pub use extended::solve_cp2_extended;
pub use robots::{solve_two_robots, TwoRobotInstance};
