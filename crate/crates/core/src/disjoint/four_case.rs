//! The unsimplified recurrence: separate cases for the free path meeting
//! the opposite bound and for it staying strictly beyond it. Kept for
//! differential testing against [`super::compute_m`].

use crate::error::Result;
use crate::falling::{BoundPair, FTable};
use crate::grid::{Grid, StepProfile};
use crate::swm::range_max;

use super::{check_inputs, ml_domain, mr_domain, neutral_element, row_scalars, MRow, MTables};

/// `Ml`/`Mr` for the unit step rule via the four-case form.
pub fn compute_m_four_case(g: &Grid, f: &FTable, b: &BoundPair) -> Result<MTables> {
    let h = g.height();
    let w = g.width();
    check_inputs(g, f, b, &StepProfile::unit(h))?;
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

    let wi = w as i64;
    for i in (0..last).rev() {
        let (lp0, lp1, rp0, rp1) = (b.lp[i], b.lp[i + 1], b.rp[i], b.rp[i + 1]);
        let (lp1i, rp1i) = (lp1 as i64, rp1 as i64);
        let f1 = f.row(i + 1);
        let s = row_scalars(&m, b, i, 1, w);
        let left_leaves = lp0.max(1) <= lp1;
        let right_leaves = rp1 <= rp0.min(w.saturating_sub(2)) && w >= 2;

        let mut ml = MRow::over(ml_domain(lp0, rp0, w));
        for j in ml.domain() {
            let ji = j as i64;
            // left leaves lp, right lands on rp(i+1)
            let case1 = if ji - 1 <= rp1i && left_leaves { s.mri.unwrap() } else { neutral };
            // left stays on lp
            let case2 = if lp1 + 2 <= w {
                m.ml[i + 1].max_in((ji - 1).max(rp1i).max(lp1i + 1), (ji + 1).min(wi - 1))
            } else {
                neutral
            };
            // left leaves lp, right lands strictly right of rp(i+1)
            let case4 = if left_leaves && rp1 + 2 <= w && rp0 < j {
                s.mri.unwrap() + range_max(f1, (rp1i + 1).max(ji - 1), (ji + 1).min(wi - 1)) - f1[rp1]
            } else {
                neutral
            };
            ml.set(j, g.get(i, lp0) + g.get(i, j) + case1.max(case2).max(case4));
        }

        let mut mr = MRow::over(mr_domain(lp0, rp0));
        for j in mr.domain() {
            let ji = j as i64;
            let case1 = if ji + 1 >= lp1i && right_leaves { s.mli.unwrap() } else { neutral };
            let case2 = if rp1 >= 1 {
                m.mr[i + 1].max_in((ji - 1).max(0), (ji + 1).min(lp1i).min(rp1i - 1))
            } else {
                neutral
            };
            let case4 = if right_leaves && lp1 >= 1 && j < lp0 {
                s.mli.unwrap() + range_max(f1, (ji - 1).max(0), (ji + 1).min(lp1i - 1)) - f1[lp1]
            } else {
                neutral
            };
            mr.set(j, g.get(i, rp0) + g.get(i, j) + case1.max(case2).max(case4));
        }
        m.ml[i] = ml;
        m.mr[i] = mr;
    }
    Ok(m)
}
