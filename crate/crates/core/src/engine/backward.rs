use std::collections::HashMap;
use std::time::Instant;

use crate::cost::CostVector;
use crate::cover::HierarchyView;
use crate::error::QueryError;
use crate::graph::VertexId;

use super::search::{Direction, Dominance, EdgeRef, Expansion, LabelId, SearchCounters, SearchSpace};

/// Result of the backward stage: labels encoding `v → d` paths.
///
/// Every vertex the backward search settled keeps its labels, so the
/// forward stage can join at any of them; hits are the subset lying on the
/// top level, where backward expansion stops.
pub struct BackwardRoutes {
    space: SearchSpace,
    target: VertexId,
    meeting: HashMap<VertexId, Vec<(CostVector, LabelId)>>,
    hits: Vec<VertexId>,
    skipped: bool,
}

impl BackwardRoutes {
    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Top-level vertices reached, ascending.
    pub fn hits(&self) -> &[VertexId] {
        &self.hits
    }

    /// True when the target already lies on the top level.
    pub fn skipped(&self) -> bool {
        self.skipped
    }

    /// Backward labels at `v`, if the backward search settled any there.
    #[inline]
    pub fn labels_at(&self, v: VertexId) -> Option<&[(CostVector, LabelId)]> {
        self.meeting.get(&v).map(Vec::as_slice)
    }

    pub fn costs_at(&self, v: VertexId) -> Vec<CostVector> {
        let mut c: Vec<_> = self.labels_at(v).unwrap_or(&[]).iter().map(|(c, _)| *c).collect();
        c.sort_unstable();
        c
    }

    pub fn meeting_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.meeting.keys().copied()
    }

    pub fn counters(&self) -> SearchCounters {
        self.space.counters
    }

    /// Edges from the label's vertex to the target, in travel order.
    pub fn trail_to_target(&self, id: LabelId) -> Vec<EdgeRef> {
        let mut t = self.space.edge_trail(id);
        t.reverse();
        t
    }
}

/// Reverse label-setting search from `d` up to the top level.
///
/// A vertex `v` expands over the reverse adjacency of level `T(v)`; labels
/// on top-level vertices are recorded but not expanded. With
/// `dominance_checks` off every label is kept, which terminates because
/// each non-top expansion climbs at least one level.
pub fn backward_mls(
    view: HierarchyView<'_>,
    d: VertexId,
    dominance_checks: bool,
    deadline: Option<Instant>,
) -> Result<BackwardRoutes, QueryError> {
    super::check_vertex(view.base(), d)?;
    let q = view.criteria();
    let mut space = SearchSpace::new(view.vertex_count(), Direction::Backward);
    let skipped = view.is_top(d);
    space.push_root(d, q);
    let dominance = if dominance_checks { Dominance::Full } else { Dominance::Off };

    let mut settled: Vec<(VertexId, CostVector, LabelId)> = Vec::new();
    space.run(
        dominance,
        deadline,
        |v| {
            if view.is_top(v) {
                return None;
            }
            let t = view.top_level(v);
            let g = view.graph(t);
            Some(Expansion { graph: g, level: t, edges: g.in_edges(v) })
        },
        |sp, id| {
            let l = sp.label(id);
            settled.push((l.vertex, l.cost, id));
            Ok(())
        },
        |_, _| false,
    )?;

    let mut meeting: HashMap<VertexId, Vec<(CostVector, LabelId)>> = HashMap::new();
    for (v, c, id) in settled {
        meeting.entry(v).or_default().push((c, id));
    }
    let mut hits: Vec<VertexId> = meeting.keys().copied().filter(|&v| view.is_top(v)).collect();
    hits.sort_unstable();
    Ok(BackwardRoutes { space, target: d, meeting, hits, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_hierarchy;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    #[test]
    fn g5_backward_hits_w() {
        let (h, _) = build_hierarchy(g5(), 1);
        let b = backward_mls(h.view(), B, true, None).unwrap();
        assert!(!b.skipped());
        assert_eq!(b.hits(), &[W]);
        assert_eq!(b.costs_at(W), vec![cv(&[1, 1])]);
        let id = b.labels_at(W).unwrap()[0].1;
        assert_eq!(b.trail_to_target(id), vec![EdgeRef { level: 0, edge: 3 }]);
    }

    #[test]
    fn top_level_target_skips_the_search() {
        let (h, _) = build_hierarchy(g5(), 1);
        let b = backward_mls(h.view(), U, true, None).unwrap();
        assert!(b.skipped());
        assert_eq!(b.hits(), &[U]);
        assert_eq!(b.costs_at(U), vec![cv(&[0, 0])]);
        assert_eq!(b.counters().created, 0);
    }

    #[test]
    fn target_cut_off_from_the_top_level() {
        // 0→1 and 2→3; the top level of a 1-level build holds 1 and 3 only
        let g = Graph::new(4, 2, vec![edge(0, 1, &[1, 1]), edge(2, 3, &[1, 1])]).unwrap();
        let (h, _) = build_hierarchy(g, 1);
        let b = backward_mls(h.view(), 0, true, None).unwrap();
        assert!(b.hits().is_empty());
    }

    #[test]
    fn without_dominance_checks_keeps_every_path() {
        // parallel edges 1→0; vertex 1 forms the top level
        let g = Graph::new(2, 2, vec![edge(1, 0, &[1, 1]), edge(1, 0, &[2, 2])]).unwrap();
        let (h, _) = build_hierarchy(g, 1);
        assert_eq!(h.top_level(1), 1);
        let with = backward_mls(h.view(), 0, true, None).unwrap();
        let without = backward_mls(h.view(), 0, false, None).unwrap();
        assert_eq!(with.costs_at(1), vec![cv(&[1, 1])]);
        assert_eq!(without.costs_at(1), vec![cv(&[1, 1]), cv(&[2, 2])]);
    }
}
