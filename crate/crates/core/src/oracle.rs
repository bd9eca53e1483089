//! Slow reference solvers. None of these share code with the linear solver;
//! they exist to check it.

use crate::cell::{CellValue, Finite, NegInfinity};
use crate::error::{Error, Result};
use crate::grid::{Grid, StepProfile};

/// Largest height and width accepted by the plain enumerators.
pub const EXHAUSTIVE_MAX_SIDE: usize = 8;
/// Largest Diamond Mine side accepted by [`oracle_dm`].
pub const DM_MAX_SIDE: usize = 7;
/// Cap on paths per start column for the enumerators.
const MAX_PATHS: usize = 50_000;

/// Cubic dynamic program over robot column pairs `j1 < j2`, two rolling rows.
/// Runs the full recurrence for every width.
///
/// Works on plain `i64` with `i64::MIN` standing in for `NegInfinity`; pairs with `j1 >= j2` hold the floor, so the 3x3 successor
/// maximum can be taken one axis at a time.
pub fn oracle_cubic(g: &Grid) -> CellValue {
    const FLOOR: i64 = i64::MIN;
    let (h, w) = (g.height(), g.width());
    let val = |i: usize, j: usize| g.get(i, j).finite().unwrap_or(FLOOR);
    let add3 = |a: i64, b: i64, c: i64| if a == FLOOR || b == FLOOR || c == FLOOR { FLOOR } else { a + b + c };
    let mut next = vec![FLOOR; w * w];
    let mut cur = vec![FLOOR; w * w];
    let mut across = vec![FLOOR; w * w];
    for j1 in 0..w {
        for j2 in j1 + 1..w {
            next[j1 * w + j2] = add3(val(h - 1, j1), val(h - 1, j2), 0);
        }
    }
    for i in (0..h - 1).rev() {
        // across[k1][j2] = max over k2 in j2-1..=j2+1 of next[k1][k2]
        for k1 in 0..w {
            let row = &next[k1 * w..(k1 + 1) * w];
            let out = &mut across[k1 * w..(k1 + 1) * w];
            for j2 in 0..w {
                let mut m = row[j2];
                if j2 > 0 {
                    m = m.max(row[j2 - 1]);
                }
                if j2 + 1 < w {
                    m = m.max(row[j2 + 1]);
                }
                out[j2] = m;
            }
        }
        let gi: Vec<i64> = (0..w).map(|j| val(i, j)).collect();
        for j1 in 0..w {
            let lo = j1.saturating_sub(1);
            let hi = (j1 + 1).min(w - 1);
            for j2 in j1 + 1..w {
                let mut best = FLOOR;
                for k1 in lo..=hi {
                    best = best.max(across[k1 * w + j2]);
                }
                cur[j1 * w + j2] = add3(gi[j1], gi[j2], best);
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let v = next[w - 1];
    if v == FLOOR {
        NegInfinity
    } else {
        Finite(v)
    }
}

/// Every path from `(0, start)` to the bottom row under `steps`.
fn enumerate_paths(h: usize, w: usize, start: usize, steps: &StepProfile) -> Result<Vec<Vec<u8>>> {
    let mut paths = vec![vec![start as u8]];
    for i in 1..h {
        let d = steps.width_into(i) as i64;
        let mut grown = Vec::new();
        for p in &paths {
            let c = *p.last().unwrap() as i64;
            for k in (c - d).max(0)..=(c + d).min(w as i64 - 1) {
                let mut q = p.clone();
                q.push(k as u8);
                grown.push(q);
            }
            if grown.len() > MAX_PATHS {
                return Err(Error::SizeGuard(format!("more than {MAX_PATHS} paths")));
            }
        }
        paths = grown;
    }
    Ok(paths)
}

fn check_side(g: &Grid) -> Result<()> {
    if g.height() > EXHAUSTIVE_MAX_SIDE || g.width() > EXHAUSTIVE_MAX_SIDE {
        return Err(Error::SizeGuard(format!(
            "exhaustive enumeration needs H, W <= {EXHAUSTIVE_MAX_SIDE}, got {}x{}",
            g.height(),
            g.width()
        )));
    }
    Ok(())
}

/// Best pair over all path pairs from `(0, a)` and `(0, b)`.
///
/// With `allow_overlap` a cell visited by both paths is scored once;
/// otherwise the paths may not share a cell in any row.
fn best_pair(g: &Grid, a: usize, b: usize, steps: &StepProfile, allow_overlap: bool) -> Result<CellValue> {
    let (h, w) = (g.height(), g.width());
    let left = enumerate_paths(h, w, a, steps)?;
    let right = if a == b { left.clone() } else { enumerate_paths(h, w, b, steps)? };
    let sum = |p: &[u8]| -> CellValue { p.iter().enumerate().map(|(i, &c)| g.get(i, c as usize)).sum() };
    let left_sums: Vec<CellValue> = left.iter().map(|p| sum(p)).collect();
    let right_sums: Vec<CellValue> = right.iter().map(|p| sum(p)).collect();
    let mut best = NegInfinity;
    for (p, &sp) in left.iter().zip(&left_sums) {
        'pairs: for (q, &sq) in right.iter().zip(&right_sums) {
            let mut total = sp + sq;
            for i in 0..h {
                if p[i] == q[i] {
                    if !allow_overlap {
                        continue 'pairs;
                    }
                    total = total - g.get(i, p[i] as usize);
                }
            }
            best = best.max(total);
        }
    }
    Ok(best)
}

/// Enumerates every pair of paths from the two top corners.
pub fn oracle_exhaustive(g: &Grid, allow_overlap: bool) -> Result<CellValue> {
    check_side(g)?;
    best_pair(g, 0, g.width() - 1, &StepProfile::unit(g.height()), allow_overlap)
}

/// Disjoint-pair enumeration under a general step profile.
pub fn oracle_exhaustive_extended(g: &Grid, steps: &StepProfile) -> Result<CellValue> {
    check_side(g)?;
    steps.check(g)?;
    best_pair(g, 0, g.width() - 1, steps, false)
}

/// Two robots from arbitrary start columns, shared cells scored once.
pub fn oracle_two_start(g: &Grid, j1: usize, j2: usize) -> Result<CellValue> {
    check_side(g)?;
    best_pair(g, j1, j2, &StepProfile::unit(g.height()), true)
}

/// Exact disjoint-pair optimum by depth-first branch and bound.
///
/// Explores joint moves row by row and prunes with the bound
/// `S(l) + S(r)`, where `S` is the best single path sum from a cell. The
/// bound ignores disjointness, so it never cuts an optimal pair.
/// `node_budget` caps the number of explored states.
pub fn oracle_branch_and_bound(g: &Grid, node_budget: u64) -> Result<CellValue> {
    let (h, w) = (g.height(), g.width());
    // single[i][j]: best single path sum from (i, j) downward
    let mut single = vec![vec![NegInfinity; w]; h];
    single[h - 1] = g.row(h - 1).to_vec();
    for i in (0..h - 1).rev() {
        for j in 0..w {
            let mut m = NegInfinity;
            for k in j.saturating_sub(1)..=(j + 1).min(w - 1) {
                m = m.max(single[i + 1][k]);
            }
            single[i][j] = g.get(i, j) + m;
        }
    }

    struct Search<'a> {
        g: &'a Grid,
        single: Vec<Vec<CellValue>>,
        best: CellValue,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn dfs(&mut self, i: usize, l: usize, r: usize, acc: CellValue) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SizeGuard(format!("branch and bound exceeded {} nodes", self.budget)));
            }
            let h = self.g.height();
            if i + 1 == h {
                self.best = self.best.max(acc);
                return Ok(());
            }
            let w = self.g.width();
            let mut moves = Vec::with_capacity(9);
            for a in l.saturating_sub(1)..=(l + 1).min(w - 1) {
                for b in r.saturating_sub(1)..=(r + 1).min(w - 1) {
                    if a != b {
                        let bound = acc + self.single[i + 1][a] + self.single[i + 1][b];
                        moves.push((bound, a, b));
                    }
                }
            }
            // most promising first so good incumbents appear early
            moves.sort_by(|x, y| y.0.cmp(&x.0));
            for (bound, a, b) in moves {
                if bound == NegInfinity || (self.best.is_finite() && bound <= self.best) {
                    continue;
                }
                let next = acc + self.g.get(i + 1, a) + self.g.get(i + 1, b);
                self.dfs(i + 1, a, b, next)?;
            }
            Ok(())
        }
    }

    let mut s = Search { g, single, best: NegInfinity, nodes: 0, budget: node_budget };
    let start = g.get(0, 0) + g.get(0, w - 1);
    s.dfs(0, 0, w - 1, start)?;
    Ok(s.best)
}

/// Diamond Mine: collect the most diamonds (cells equal to 1) on a
/// right/down walk from the top-left to the bottom-right corner and back.
/// Cells equal to -1 are blocked. Returns 0 when the corner is unreachable.
pub fn oracle_dm(g_dm: &Grid) -> Result<CellValue> {
    let n = g_dm.height();
    if g_dm.width() != n {
        return Err(Error::InvalidInstance("diamond mine grid must be square".into()));
    }
    if n > DM_MAX_SIDE {
        return Err(Error::SizeGuard(format!("diamond mine enumeration needs N <= {DM_MAX_SIDE}")));
    }
    let blocked = |i: usize, j: usize| g_dm.get(i, j) == Finite(-1);
    // Walks as bitmasks over the N*N cells plus their diamond count.
    let mut walks: Vec<u64> = Vec::new();
    let mut stack = vec![(0usize, 0usize, 0u64)];
    while let Some((i, j, mask)) = stack.pop() {
        if blocked(i, j) {
            continue;
        }
        let mask = mask | 1 << (i * n + j);
        if i + 1 == n && j + 1 == n {
            walks.push(mask);
            continue;
        }
        if i + 1 < n {
            stack.push((i + 1, j, mask));
        }
        if j + 1 < n {
            stack.push((i, j + 1, mask));
        }
    }
    if walks.is_empty() {
        return Ok(Finite(0));
    }
    let mut diamonds = 0u64;
    for i in 0..n {
        for j in 0..n {
            if g_dm.get(i, j) == Finite(1) {
                diamonds |= 1 << (i * n + j);
            }
        }
    }
    let mut best = 0;
    for (k, &a) in walks.iter().enumerate() {
        for &b in &walks[k..] {
            best = best.max(((a | b) & diamonds).count_ones() as i64);
        }
    }
    Ok(Finite(best))
}
