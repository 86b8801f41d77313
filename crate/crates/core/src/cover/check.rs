use std::collections::HashMap;
use std::fmt;

use crate::cost::weakly_dominates;
use crate::graph::{EdgeId, VertexId};

use super::{path_cost, HierarchicalCover};

/// A broken structural invariant of a hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    /// Edge of level `level` joins two vertices that are both missing from
    /// level `level + 1`.
    IndependentSet { level: usize, edge: EdgeId },
    /// Vertex of level `level` that is not a member of level `level - 1`.
    Nesting { level: usize, vertex: VertexId },
    /// Edge with an endpoint outside its level's member set.
    EndpointNotMember { level: usize, edge: EdgeId },
    /// Two edges of the same ordered pair where one weakly dominates the other.
    DominatedPair { level: usize, from: VertexId, to: VertexId },
    /// Unpacked base path does not form a walk between the edge's endpoints.
    UnpackNotContiguous { level: usize, edge: EdgeId },
    /// Unpacked base path cost differs from the stored cover edge cost.
    UnpackCost { level: usize, edge: EdgeId },
    /// Stored top level disagrees with membership.
    TopLevel { vertex: VertexId },
}

impl CoverViolation {
    pub fn invariant(&self) -> &'static str {
        match self {
            CoverViolation::IndependentSet { .. } => "independent-set",
            CoverViolation::Nesting { .. } => "nesting",
            CoverViolation::EndpointNotMember { .. } => "endpoint-membership",
            CoverViolation::DominatedPair { .. } => "pair-non-dominance",
            CoverViolation::UnpackNotContiguous { .. } => "unpack-contiguity",
            CoverViolation::UnpackCost { .. } => "unpack-cost-sum",
            CoverViolation::TopLevel { .. } => "top-level",
        }
    }
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.invariant(), self)
    }
}

/// Scans every level of `h` for structural violations.
pub fn check_cover_invariants(h: &HierarchicalCover) -> Vec<CoverViolation> {
    let mut out = Vec::new();
    let levels = h.level_count();

    for t in 0..levels {
        let g = h.graph(t);
        for (i, e) in g.edges().iter().enumerate() {
            if !h.is_member(t + 1, e.from) && !h.is_member(t + 1, e.to) {
                out.push(CoverViolation::IndependentSet { level: t, edge: i as EdgeId });
            }
        }
    }

    for t in 1..=levels {
        let level = h.cover_level(t);
        for v in level.members().ones() {
            if !h.is_member(t - 1, v as VertexId) {
                out.push(CoverViolation::Nesting { level: t, vertex: v as VertexId });
            }
        }
        let g = level.graph();
        let mut buckets: HashMap<(VertexId, VertexId), Vec<EdgeId>> = HashMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            let id = i as EdgeId;
            if !h.is_member(t, e.from) || !h.is_member(t, e.to) {
                out.push(CoverViolation::EndpointNotMember { level: t, edge: id });
            }
            buckets.entry((e.from, e.to)).or_default().push(id);

            let path = h.unpack_edge(t, id);
            let base = h.base();
            let contiguous = !path.is_empty()
                && base.edge(path[0]).from == e.from
                && base.edge(*path.last().unwrap()).to == e.to
                && path.windows(2).all(|w| base.edge(w[0]).to == base.edge(w[1]).from);
            if !contiguous {
                out.push(CoverViolation::UnpackNotContiguous { level: t, edge: id });
            } else if path_cost(base, &path) != Some(e.cost) {
                out.push(CoverViolation::UnpackCost { level: t, edge: id });
            }
        }
        let mut pairs: Vec<_> = buckets.into_iter().collect();
        pairs.sort_unstable_by_key(|(k, _)| *k);
        for ((from, to), ids) in pairs {
            let dominated = ids.iter().enumerate().any(|(i, &a)| {
                ids[i + 1..].iter().any(|&b| {
                    let (ca, cb) = (&g.edge(a).cost, &g.edge(b).cost);
                    weakly_dominates(ca, cb) || weakly_dominates(cb, ca)
                })
            });
            if dominated {
                out.push(CoverViolation::DominatedPair { level: t, from, to });
            }
        }
    }

    for v in 0..h.base().vertex_count() as VertexId {
        let expected = (0..=levels).rev().find(|&t| h.is_member(t, v)).unwrap_or(0);
        if h.top_level(v) != expected {
            out.push(CoverViolation::TopLevel { vertex: v });
        }
    }
    out
}
