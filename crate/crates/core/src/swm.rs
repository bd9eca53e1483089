//! Sliding window maximum with a fixed radius.

use std::collections::VecDeque;

use crate::cell::{CellValue, NegInfinity};

/// Precomputed maxima of every centered window of radius `radius`,
/// clipped to the vector bounds.
#[derive(Clone, Debug)]
pub struct Swm {
    radius: usize,
    maxima: Vec<CellValue>,
}

impl Swm {
    /// Monotonic-deque build, amortized O(1) per element.
    pub fn build(v: &[CellValue], radius: usize) -> Swm {
        let n = v.len();
        let mut maxima = Vec::with_capacity(n);
        // Indices with strictly decreasing values from front to back.
        let mut dq: VecDeque<usize> = VecDeque::new();
        let mut next = 0;
        for j in 0..n {
            let hi = (j + radius).min(n - 1);
            while next <= hi {
                while let Some(&b) = dq.back() {
                    if v[b] <= v[next] {
                        dq.pop_back();
                    } else {
                        break;
                    }
                }
                dq.push_back(next);
                next += 1;
            }
            let lo = j.saturating_sub(radius);
            while let Some(&f) = dq.front() {
                if f < lo {
                    dq.pop_front();
                } else {
                    break;
                }
            }
            maxima.push(v[*dq.front().expect("window is never empty")]);
        }
        Swm { radius, maxima }
    }

    #[inline]
    pub fn query(&self, j: usize) -> CellValue {
        self.maxima[j]
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.maxima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maxima.is_empty()
    }

    pub fn as_slice(&self) -> &[CellValue] {
        &self.maxima
    }
}

/// Maximum of `v[lo..=hi]` with signed bounds, clipped to the vector.
/// An empty range yields `NegInfinity`.
#[inline]
pub fn range_max(v: &[CellValue], lo: i64, hi: i64) -> CellValue {
    let lo = lo.max(0);
    let hi = hi.min(v.len() as i64 - 1);
    if lo > hi {
        return NegInfinity;
    }
    v[lo as usize..=hi as usize].iter().copied().max().unwrap_or(NegInfinity)
}

/// Smallest index attaining the maximum of `v[lo..=hi]`, if the range is
/// nonempty after clipping.
#[inline]
pub fn range_argmax_first(v: &[CellValue], lo: i64, hi: i64) -> Option<usize> {
    let lo = lo.max(0);
    let hi = hi.min(v.len() as i64 - 1);
    if lo > hi {
        return None;
    }
    let (lo, hi) = (lo as usize, hi as usize);
    let mut best = lo;
    for k in lo + 1..=hi {
        if v[k] > v[best] {
            best = k;
        }
    }
    Some(best)
}

/// Largest index attaining the maximum of `v[lo..=hi]`.
#[inline]
pub fn range_argmax_last(v: &[CellValue], lo: i64, hi: i64) -> Option<usize> {
    let lo = lo.max(0);
    let hi = hi.min(v.len() as i64 - 1);
    if lo > hi {
        return None;
    }
    let (lo, hi) = (lo as usize, hi as usize);
    let mut best = hi;
    for k in (lo..hi).rev() {
        if v[k] > v[best] {
            best = k;
        }
    }
    Some(best)
}
