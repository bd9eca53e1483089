//! Reduction to two node-disjoint shortest paths in a DAG.
//!
//! Every cell becomes a node; a cell links to the up to three cells below
//! it with weight `m - g(i, j)`, where `m` is the grid maximum, so all
//! weights are nonnegative. A source links to both top corners with weight
//! zero and every bottom cell links to a sink. The two cheapest node-disjoint
//! source-sink paths are found with Suurballe's method, run here as two
//! rounds of successive shortest paths with Johnson potentials over a
//! node-split residual graph.
//!
//! Each path crosses exactly `H` weighted cell edges, so a pair of total
//! weight `M'` collects `2 * m * H - M'`.
//!
//! Dijkstra uses a binary heap, `O(E log V)` per round. A Fibonacci heap
//! would give `O(E + V log V)`; at the sizes this module is used for (a
//! correctness cross-check) the difference does not matter.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cell::{CellValue, Finite};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Edge-weighted DAG with designated source and sink.
#[derive(Clone, Debug)]
pub struct WeightedDag {
    adj: Vec<Vec<(usize, i64)>>,
    pub source: usize,
    pub sink: usize,
}

impl WeightedDag {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn edges(&self, v: usize) -> &[(usize, i64)] {
        &self.adj[v]
    }
}

/// Builds the reduction graph. Cell `(i, j)` is node `i * W + j`; the
/// source and sink are `W * H` and `W * H + 1`.
pub fn build_reduction_dag(g: &Grid) -> Result<WeightedDag> {
    if !g.is_finite() {
        return Err(Error::NonFiniteGrid);
    }
    let (h, w) = (g.height(), g.width());
    let m = g.max_finite().expect("grid has cells");
    let weight = |i: usize, j: usize| m - g.get(i, j).unwrap_finite();
    let source = w * h;
    let sink = source + 1;
    let mut adj = vec![Vec::new(); w * h + 2];
    adj[source].push((0, 0));
    adj[source].push((w - 1, 0));
    for i in 0..h {
        for j in 0..w {
            let v = i * w + j;
            if i + 1 == h {
                adj[v].push((sink, weight(i, j)));
                continue;
            }
            for k in j.saturating_sub(1)..=(j + 1).min(w - 1) {
                adj[v].push(((i + 1) * w + k, weight(i, j)));
            }
        }
    }
    Ok(WeightedDag { adj, source, sink })
}

/// Minimum-weight pair of node-disjoint source-sink paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointPathsAnswer {
    pub total_weight: i64,
    /// Node sequences from source to sink, in original node ids.
    pub paths: [Vec<usize>; 2],
}

struct Residual {
    to: Vec<usize>,
    cap: Vec<i32>,
    cost: Vec<i64>,
    head: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Residual {
        Residual { to: Vec::new(), cap: Vec::new(), cost: Vec::new(), head: vec![Vec::new(); n] }
    }

    /// Adds `u -> v` and its reverse; edge `e` pairs with `e ^ 1`.
    fn add(&mut self, u: usize, v: usize, cap: i32, cost: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
    }
}

/// Dijkstra on reduced costs. Returns distances and the edge used to reach
/// each node.
fn dijkstra(r: &Residual, pot: &[i64], s: usize) -> (Vec<Option<i64>>, Vec<Option<usize>>) {
    let n = r.head.len();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut via = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(0);
    heap.push(Reverse((0i64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue;
        }
        for &e in &r.head[u] {
            if r.cap[e] <= 0 {
                continue;
            }
            let v = r.to[e];
            let reduced = r.cost[e] + pot[u] - pot[v];
            assert!(reduced >= 0, "negative reduced cost {reduced} on residual edge {u} -> {v}");
            let nd = d + reduced;
            if dist[v].map_or(true, |old| nd < old) {
                dist[v] = Some(nd);
                via[v] = Some(e);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    (dist, via)
}

/// Two node-disjoint paths of minimum total weight.
pub fn suurballe_two_disjoint(dag: &WeightedDag) -> Result<DisjointPathsAnswer> {
    let n = dag.node_count();
    let (s, t) = (dag.source, dag.sink);
    // Node v splits into v_in = 2v and v_out = 2v + 1. The source and sink
    // carry both paths, so their split edge has capacity 2.
    let mut r = Residual::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { 2 } else { 1 };
        r.add(2 * v, 2 * v + 1, cap, 0);
        for &(u, wgt) in &dag.adj[v] {
            r.add(2 * v + 1, 2 * u, 1, wgt);
        }
    }
    let (rs, rt) = (2 * s, 2 * t + 1);
    let mut pot = vec![0i64; 2 * n];
    let mut total = 0;
    for _ in 0..2 {
        let (dist, via) = dijkstra(&r, &pot, rs);
        let Some(dt) = dist[rt] else {
            return Err(Error::NoDisjointPaths);
        };
        total += dt - pot[rs] + pot[rt];
        let mut v = rt;
        while v != rs {
            let e = via[v].expect("reached nodes have a predecessor");
            r.cap[e] -= 1;
            r.cap[e ^ 1] += 1;
            v = r.to[e ^ 1];
        }
        // Unreached nodes keep their potential shifted by the sink distance,
        // which keeps every residual edge they touch nonnegative.
        for (p, d) in pot.iter_mut().zip(&dist) {
            *p += d.unwrap_or(dt);
        }
    }

    // Follow saturated forward edges from the source.
    let mut paths: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut flow: Vec<i32> = (0..r.to.len()).map(|e| if e % 2 == 0 { r.cap[e ^ 1] } else { 0 }).collect();
    for path in paths.iter_mut() {
        let mut v = rs;
        path.push(s);
        while v != rt {
            let e = r.head[v]
                .iter()
                .copied()
                .find(|&e| flow[e] > 0)
                .expect("flow leaves every node it enters");
            flow[e] -= 1;
            v = r.to[e];
            if v % 2 == 0 && v / 2 != s {
                path.push(v / 2);
            }
        }
    }
    Ok(DisjointPathsAnswer { total_weight: total, paths })
}

/// Converts the shortest disjoint pair back to a collected total.
pub fn solve_cp2_via_suurballe(g: &Grid) -> Result<CellValue> {
    let dag = build_reduction_dag(g)?;
    let ans = suurballe_two_disjoint(&dag)?;
    let m = g.max_finite().expect("grid has cells");
    Ok(Finite(2 * m * g.height() as i64 - ans.total_weight))
}
