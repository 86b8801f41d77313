//! Reference Pareto sets by depth-first path enumeration.
//!
//! Deliberately shares nothing with the engine beyond reading the graph's
//! edge list: costs are plain `Vec<u64>`, dominance is re-implemented here.
//!
//! Paths are enumerated depth-first from `s`. A partial path is cut when
//! - its cost is weakly dominated by a partial path already recorded at the
//!   same vertex (every continuation of it is matched by one of the
//!   recorded path, which is or was expanded), or
//! - its cost plus a per-criterion lower bound to `d` is weakly dominated by
//!   an `s -> d` cost already found.
//!
//! Edge costs must be positive so that every cycle strictly increases the
//! cost and gets cut by the first rule; the enumeration then only ever
//! extends paths that could still be simple and Pareto-optimal.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use hmls_core::Graph;

type Cost = Vec<u64>;

fn weakly_le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Per-criterion shortest distance from every vertex to `d`.
fn lower_bounds(g: &Graph, d: usize) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count();
    let mut rev: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, e) in g.edges().iter().enumerate() {
        rev[e.to as usize].push((e.from as usize, k));
    }
    (0..g.criteria())
        .map(|c| {
            let mut dist = vec![None; n];
            let mut heap = BinaryHeap::new();
            dist[d] = Some(0u64);
            heap.push(Reverse((0u64, d)));
            while let Some(Reverse((du, u))) = heap.pop() {
                if dist[u] != Some(du) {
                    continue;
                }
                for &(w, k) in &rev[u] {
                    let nd = du + g.edges()[k].cost.get(c);
                    if dist[w].is_none_or(|old| nd < old) {
                        dist[w] = Some(nd);
                        heap.push(Reverse((nd, w)));
                    }
                }
            }
            dist
        })
        .collect()
}

/// Exact Pareto set of `s -> d` path costs, sorted lexicographically.
///
/// # Panics
/// If the graph has an edge with a zero cost component.
pub fn pareto_oracle(g: &Graph, s: u32, d: u32) -> Vec<Cost> {
    let q = g.criteria();
    assert!(
        g.edges().iter().all(|e| e.cost.as_slice().iter().all(|&c| c > 0)),
        "oracle requires positive edge costs"
    );
    let (s, d) = (s as usize, d as usize);
    if s == d {
        return vec![vec![0; q]];
    }
    let n = g.vertex_count();
    let mut out: Vec<Vec<(usize, Cost)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let w = e.cost.as_slice().to_vec();
        out[e.from as usize].push((e.to as usize, w));
    }
    let lb = lower_bounds(g, d);
    if lb[0][s].is_none() {
        return Vec::new();
    }

    let mut recorded: Vec<Vec<Cost>> = vec![Vec::new(); n];
    let mut found: Vec<Cost> = Vec::new();
    let mut stack: Vec<(usize, Cost)> = vec![(s, vec![0; q])];
    while let Some((v, cost)) = stack.pop() {
        if recorded[v].iter().any(|r| weakly_le(r, &cost)) {
            continue;
        }
        let optimistic: Option<Cost> = (0..q).map(|c| lb[c][v].map(|b| cost[c] + b)).collect();
        let Some(optimistic) = optimistic else {
            continue;
        };
        if found.iter().any(|f| weakly_le(f, &optimistic)) {
            continue;
        }
        recorded[v].retain(|r| !weakly_le(&cost, r));
        recorded[v].push(cost.clone());
        if v == d {
            found.retain(|f| !weakly_le(&cost, f));
            found.push(cost);
            continue;
        }
        for (w, ec) in &out[v] {
            let next: Cost = cost.iter().zip(ec).map(|(a, b)| a + b).collect();
            stack.push((*w, next));
        }
    }
    found.sort();
    found
}
