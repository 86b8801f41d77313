use fixedbitset::FixedBitSet;

use crate::cost::{weakly_dominates, CostVector};
use crate::graph::{Edge, EdgeId, Graph, VertexId};

use super::Provenance;

/// Edges of the next cover level together with their provenance.
#[derive(Debug, Clone, Default)]
pub struct CoverEdges {
    pub edges: Vec<Edge>,
    pub provenance: Vec<Provenance>,
}

struct Candidate {
    from: VertexId,
    to: VertexId,
    cost: CostVector,
    provenance: Provenance,
}

/// Builds the cover-graph edges over `cover` from the level graph `g`.
///
/// Candidates are the edges of `g` between two cover vertices, followed by
/// every composition `u→x→w` through a non-cover vertex `x` (ascending `x`,
/// then in-edge id, then out-edge id). Compositions with `u == w` are
/// dropped. Per ordered pair only mutually non-weakly-dominated candidates
/// survive; among equal costs the earliest candidate wins.
pub fn build_cover_edges(g: &Graph, members: &FixedBitSet, cover: &FixedBitSet) -> CoverEdges {
    build_cover_edges_filtered(g, members, cover, |_, _| true)
}

/// As [`build_cover_edges`], with a predicate deciding whether the pair
/// `(incoming, outgoing)` may be traversed in sequence through the
/// eliminated vertex.
pub fn build_cover_edges_filtered<F>(
    g: &Graph,
    members: &FixedBitSet,
    cover: &FixedBitSet,
    admissible: F,
) -> CoverEdges
where
    F: Fn(EdgeId, EdgeId) -> bool,
{
    let mut candidates = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if cover.contains(e.from as usize) && cover.contains(e.to as usize) {
            candidates.push(Candidate {
                from: e.from,
                to: e.to,
                cost: e.cost,
                provenance: Provenance::Base(id as EdgeId),
            });
        }
    }
    for x in members.ones() {
        if cover.contains(x) {
            continue;
        }
        let x = x as VertexId;
        for &ein in g.in_edges(x) {
            let incoming = g.edge(ein);
            for &eout in g.out_edges(x) {
                let outgoing = g.edge(eout);
                if incoming.from == outgoing.to || !admissible(ein, eout) {
                    continue;
                }
                // cannot overflow: a level-t edge spans at most 2^t base edges
                // of at most u32::MAX each, and the level count is capped
                let cost = incoming.cost.checked_add(&outgoing.cost).expect("cover cost overflow");
                candidates.push(Candidate {
                    from: incoming.from,
                    to: outgoing.to,
                    cost,
                    provenance: Provenance::Composed(ein, eout),
                });
            }
        }
    }

    candidates.sort_by_key(|c| (c.from, c.to));

    let mut out = CoverEdges::default();
    let mut kept: Vec<usize> = Vec::new();
    let mut start = 0;
    while start < candidates.len() {
        let key = (candidates[start].from, candidates[start].to);
        let mut end = start;
        while end < candidates.len() && (candidates[end].from, candidates[end].to) == key {
            end += 1;
        }
        kept.clear();
        for i in start..end {
            let cost = &candidates[i].cost;
            if kept.iter().any(|&k| weakly_dominates(&candidates[k].cost, cost)) {
                continue;
            }
            kept.retain(|&k| !weakly_dominates(cost, &candidates[k].cost));
            kept.push(i);
        }
        for &k in &kept {
            let c = &candidates[k];
            out.edges.push(Edge { from: c.from, to: c.to, cost: c.cost });
            out.provenance.push(c.provenance);
        }
        start = end;
    }
    out
}
