//! Limit precomputation over the hierarchy.
//!
//! Per criterion, a reverse single-criterion Dijkstra from the target
//! (climbing like the backward stage, then covering the top level) yields
//! lower bounds for top-level vertices, and an upward forward Dijkstra
//! from the source closes the gap to give one real source→target path
//! that is optimal for that criterion.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::{dominates, CostVector};
use crate::cover::HierarchyView;
use crate::error::QueryError;
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Missing,
    Unreachable,
    Lower(CostVector),
}

#[derive(Debug, Clone)]
pub struct BoundsTable {
    lower: Vec<Bound>,
    source_upper: Vec<CostVector>,
}

impl BoundsTable {
    fn empty() -> Self {
        BoundsTable { lower: Vec::new(), source_upper: Vec::new() }
    }

    /// True when the target is unreachable; pruning is then disabled.
    pub fn is_empty(&self) -> bool {
        self.source_upper.is_empty()
    }

    /// Componentwise lower bound on the remaining cost from `v`, for
    /// top-level vertices that reach the target and for the source.
    pub fn lower_bound(&self, v: VertexId) -> Option<CostVector> {
        match self.lower.get(v as usize) {
            Some(Bound::Lower(c)) => Some(*c),
            _ => None,
        }
    }

    /// True for a top-level vertex with no route to the target.
    pub fn is_dead_end(&self, v: VertexId) -> bool {
        matches!(self.lower.get(v as usize), Some(Bound::Unreachable))
    }

    /// Full cost vectors of the criterion-optimal source→target paths,
    /// deduplicated.
    pub fn source_upper(&self) -> &[CostVector] {
        &self.source_upper
    }
}

type Key = (u64, CostVector);

/// Single-criterion Dijkstra on the hierarchy; ties on the criterion are
/// broken by the full vector, so each result is a real path's cost.
fn dijkstra(
    view: HierarchyView<'_>,
    root: VertexId,
    criterion: usize,
    reverse: bool,
) -> Result<Vec<Option<CostVector>>, QueryError> {
    let n = view.vertex_count();
    let mut best: Vec<Option<Key>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let zero = CostVector::zero(view.criteria());
    best[root as usize] = Some((0, zero));
    heap.push(Reverse((0u64, zero, root)));
    while let Some(Reverse((_, cost, v))) = heap.pop() {
        if done[v as usize] {
            continue;
        }
        done[v as usize] = true;
        // the forward sweep stops on the top level, the reverse one covers it
        if !reverse && view.is_top(v) {
            continue;
        }
        let t = view.top_level(v);
        let g = view.graph(t);
        let edges = if reverse { g.in_edges(v) } else { g.out_edges(v) };
        for &e in edges {
            let edge = g.edge(e);
            let head = if reverse { edge.from } else { edge.to };
            let c = cost.checked_add(&edge.cost)?;
            let key = (c.get(criterion), c);
            if best[head as usize].is_none_or(|b| key < b) {
                best[head as usize] = Some(key);
                heap.push(Reverse((key.0, c, head)));
            }
        }
    }
    Ok(best.into_iter().map(|b| b.map(|(_, c)| c)).collect())
}

pub fn compute_bounds(view: HierarchyView<'_>, s: VertexId, d: VertexId) -> Result<BoundsTable, QueryError> {
    super::check_vertex(view.base(), s)?;
    super::check_vertex(view.base(), d)?;
    let n = view.vertex_count();
    let q = view.criteria();

    let mut lower: Vec<Bound> = (0..n as VertexId)
        .map(|v| if view.is_top(v) { Bound::Unreachable } else { Bound::Missing })
        .collect();
    let mut source_upper = Vec::with_capacity(q);
    let mut lb_fill: Vec<CostVector> = vec![CostVector::zero(q); n];
    let mut source_lb = CostVector::zero(q);

    for i in 0..q {
        let back = dijkstra(view, d, i, true)?;
        let fwd = dijkstra(view, s, i, false)?;
        let mut best: Option<Key> = None;
        for v in 0..n {
            if let (Some(f), Some(b)) = (fwd[v], back[v]) {
                let c = f.checked_add(&b)?;
                let key = (c.get(i), c);
                if best.is_none_or(|k| key < k) {
                    best = Some(key);
                }
            }
        }
        let Some((opt, full)) = best else {
            return Ok(BoundsTable::empty());
        };
        source_lb.set(i, opt);
        if !source_upper.contains(&full) {
            source_upper.push(full);
        }
        for v in 0..n as VertexId {
            if let (true, Some(b)) = (view.is_top(v), back[v as usize]) {
                lb_fill[v as usize].set(i, b.get(i));
                lower[v as usize] = Bound::Lower(lb_fill[v as usize]);
            }
        }
    }
    lower[s as usize] = Bound::Lower(source_lb);
    Ok(BoundsTable { lower, source_upper })
}

/// True if a candidate at `vertex` with `cost` can be discarded: its
/// optimistic completion is strictly dominated by a known route.
pub fn bound_prune(bounds: &BoundsTable, vertex: VertexId, cost: &CostVector) -> bool {
    if bounds.is_empty() {
        return false;
    }
    match bounds.lower.get(vertex as usize) {
        None | Some(Bound::Missing) => false,
        Some(Bound::Unreachable) => true,
        Some(Bound::Lower(lb)) => match cost.checked_add(lb) {
            Ok(estimate) => bounds.source_upper.iter().any(|u| dominates(u, &estimate)),
            Err(_) => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_hierarchy;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    fn upper_sorted(b: &BoundsTable) -> Vec<CostVector> {
        let mut v = b.source_upper().to_vec();
        v.sort();
        v
    }

    #[test]
    fn diamond_bounds() {
        let (h, _) = build_hierarchy(d4(), 0);
        let b = compute_bounds(h.view(), S, D).unwrap();
        assert_eq!(b.lower_bound(S), Some(cv(&[2, 3])));
        assert_eq!(upper_sorted(&b), vec![cv(&[2, 4]), cv(&[3, 3])]);
        assert_eq!(b.lower_bound(DA), Some(cv(&[1, 1])));
        assert_eq!(b.lower_bound(D), Some(cv(&[0, 0])));
    }

    #[test]
    fn same_vertex_bounds_are_zero() {
        let (h, _) = build_hierarchy(d4(), 0);
        let b = compute_bounds(h.view(), DA, DA).unwrap();
        assert_eq!(b.lower_bound(DA), Some(cv(&[0, 0])));
        assert_eq!(b.source_upper(), &[cv(&[0, 0])]);
    }

    #[test]
    fn single_path_bounds() {
        let g = Graph::new(3, 2, vec![edge(0, 1, &[2, 5]), edge(1, 2, &[3, 1])]).unwrap();
        let (h, _) = build_hierarchy(g, 0);
        let b = compute_bounds(h.view(), 0, 2).unwrap();
        assert_eq!(b.lower_bound(0), Some(cv(&[5, 6])));
        assert_eq!(b.source_upper(), &[cv(&[5, 6])]);
    }

    #[test]
    fn unreachable_target_gives_empty_table() {
        let (h, _) = build_hierarchy(d4(), 0);
        let b = compute_bounds(h.view(), D, S).unwrap();
        assert!(b.is_empty());
        assert!(!bound_prune(&b, D, &cv(&[100, 100])));
    }

    #[test]
    fn prune_examples() {
        let b = BoundsTable {
            lower: vec![Bound::Lower(cv(&[0, 0])), Bound::Missing],
            source_upper: vec![cv(&[2, 4]), cv(&[3, 3])],
        };
        assert!(bound_prune(&b, 0, &cv(&[9, 9])));
        assert!(!bound_prune(&b, 0, &cv(&[2, 4])));
        assert!(!bound_prune(&b, 0, &cv(&[2, 3])));
        assert!(!bound_prune(&b, 1, &cv(&[9, 9])));
    }

    #[test]
    fn g5_hierarchy_bounds() {
        let (h, _) = build_hierarchy(g5(), 1);
        let b = compute_bounds(h.view(), A, B).unwrap();
        assert_eq!(b.source_upper(), &[cv(&[5, 5])]);
        assert_eq!(b.lower_bound(U), Some(cv(&[4, 4])));
        assert_eq!(b.lower_bound(W), Some(cv(&[1, 1])));
        assert_eq!(b.lower_bound(A), Some(cv(&[5, 5])));
        assert_eq!(b.lower_bound(X), None);
    }
}
