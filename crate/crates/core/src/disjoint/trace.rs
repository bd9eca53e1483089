//! Witness reconstruction for the `Ml`/`Mr` recurrence.
//!
//! The tables hold sums only, so the trace replays each row's choice. A
//! state is one anchored path plus one free column. When the anchored side
//! is abandoned (the `max1` term), the other side stops following its
//! anchor and instead follows a maximal `F` path from the chosen column
//! until it meets the path underneath it. Those detours are kept as stacks
//! of pending columns, innermost last.

use crate::cell::CellValue;
use crate::falling::{BoundPair, FTable};
use crate::grid::{Grid, StepProfile};
use crate::swm::range_argmax_first;

use super::MTables;

/// State the trace starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Start {
    /// Left path on `lp`, right path at this column (`Ml`).
    Left(usize),
    /// Right path on `rp`, left path at this column (`Mr`).
    Right(usize),
}

enum Step {
    /// Stay anchored; free column moves to `k`.
    Keep(usize),
    /// Switch anchors; new free column `k`, detour starting at `c`.
    Switch(usize, usize),
}

/// Columns of the left and right witness paths for rows `row..H`, starting
/// from `start` at `row`. Ties prefer keeping the anchor, then the smaller
/// column.
pub fn trace_witness(
    g: &Grid,
    f: &FTable,
    b: &BoundPair,
    m: &MTables,
    steps: &StepProfile,
    start: Start,
    row: usize,
) -> (Vec<usize>, Vec<usize>) {
    let (h, w) = (g.height(), g.width());
    let wi = w as i64;
    let mut state = start;
    let mut right_detours: Vec<usize> = Vec::new();
    let mut left_detours: Vec<usize> = Vec::new();
    let mut left = Vec::with_capacity(h - row);
    let mut right = Vec::with_capacity(h - row);

    for i in row..h {
        let (base_l, base_r) = match state {
            Start::Left(j) => (b.lp[i], j),
            Start::Right(j) => (j, b.rp[i]),
        };
        let mut eff_r = base_r;
        let mut kept = Vec::with_capacity(right_detours.len());
        for &p in right_detours.iter().rev() {
            if p > eff_r {
                eff_r = p;
                kept.push(p);
            }
        }
        kept.reverse();
        right_detours = kept;
        let mut eff_l = base_l;
        let mut kept = Vec::with_capacity(left_detours.len());
        for &p in left_detours.iter().rev() {
            if p < eff_l {
                eff_l = p;
                kept.push(p);
            }
        }
        kept.reverse();
        left_detours = kept;
        left.push(eff_l);
        right.push(eff_r);
        if i + 1 == h {
            break;
        }

        let d = steps.width_into(i + 1) as i64;
        let (lp0, lp1, rp0, rp1) = (b.lp[i] as i64, b.lp[i + 1] as i64, b.rp[i] as i64, b.rp[i + 1] as i64);
        let f1 = f.row(i + 1);
        let pick = |keep: Option<(CellValue, usize)>, switch: Option<(CellValue, usize, usize)>| {
            match (keep, switch) {
                (Some((v2, k2)), Some((v1, k1, c))) => {
                    if v2 >= v1 {
                        Step::Keep(k2)
                    } else {
                        Step::Switch(k1, c)
                    }
                }
                (Some((_, k2)), None) => Step::Keep(k2),
                (None, Some((_, k1, c))) => Step::Switch(k1, c),
                (None, None) => unreachable!("every defined M cell has a feasible successor"),
            }
        };

        let step = match state {
            Start::Left(j) => {
                let j = j as i64;
                let keep = if lp1 + 2 <= wi {
                    m.ml[i + 1].argmax_in(j - d, j + d).map(|k| (m.ml[i + 1].get(k).unwrap(), k))
                } else {
                    None
                };
                let (a, z) = ((lp0 - d).max(0), lp1 - 1);
                let switch = if a <= z {
                    m.mr[i + 1].argmax_in(a, z).and_then(|k1| {
                        let c = range_argmax_first(f1, (j - d).max(rp1), (j + d).min(wi - 1))?;
                        Some((f1[c] + m.mr[i + 1].get(k1).unwrap() - f1[rp1 as usize], k1, c))
                    })
                } else {
                    None
                };
                pick(keep, switch)
            }
            Start::Right(j) => {
                let j = j as i64;
                let keep = if rp1 >= 1 {
                    m.mr[i + 1].argmax_in(j - d, j + d).map(|k| (m.mr[i + 1].get(k).unwrap(), k))
                } else {
                    None
                };
                let (a, z) = (rp1 + 1, (wi - 1).min(rp0 + d));
                let switch = if a <= z {
                    m.ml[i + 1].argmax_in(a, z).and_then(|k1| {
                        let c = range_argmax_first(f1, (j - d).max(0), (j + d).min(lp1))?;
                        Some((f1[c] + m.ml[i + 1].get(k1).unwrap() - f1[lp1 as usize], k1, c))
                    })
                } else {
                    None
                };
                pick(keep, switch)
            }
        };

        for p in right_detours.iter_mut() {
            let q = *p as i64;
            *p = range_argmax_first(f1, (q - d).max(rp1), (q + d).min(wi - 1)).expect("detour stays right of rp");
        }
        for p in left_detours.iter_mut() {
            let q = *p as i64;
            *p = range_argmax_first(f1, (q - d).max(0), (q + d).min(lp1)).expect("detour stays left of lp");
        }
        state = match (state, step) {
            (s, Step::Keep(k)) => match s {
                Start::Left(_) => Start::Left(k),
                Start::Right(_) => Start::Right(k),
            },
            (Start::Left(_), Step::Switch(k, c)) => {
                right_detours.push(c);
                Start::Right(k)
            }
            (Start::Right(_), Step::Switch(k, c)) => {
                left_detours.push(c);
                Start::Left(k)
            }
        };
    }
    (left, right)
}
