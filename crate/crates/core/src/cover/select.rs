use fixedbitset::FixedBitSet;

use crate::graph::{Graph, VertexId};

/// LR-deg 2-path-cover vertex selection.
///
/// Members of `g` are visited by ascending degree (in + out, ties by id).
/// Every visited vertex that is not yet in the cover pulls all of its in-
/// and out-neighbors into it. Afterwards no edge of `g` joins two vertices
/// outside the cover.
pub fn lr_deg_select(g: &Graph, members: &FixedBitSet) -> FixedBitSet {
    let n = g.vertex_count();
    let mut order: Vec<VertexId> = members.ones().map(|v| v as VertexId).collect();
    // stable: equal degrees stay in ascending id order
    order.sort_by_key(|&v| g.degree(v));

    let mut cover = FixedBitSet::with_capacity(n);
    for v in order {
        if cover.contains(v as usize) {
            continue;
        }
        for &e in g.out_edges(v) {
            cover.insert(g.edge(e).to as usize);
        }
        for &e in g.in_edges(v) {
            cover.insert(g.edge(e).from as usize);
        }
    }
    cover
}

/// Bitset with every vertex of `g` set.
pub fn all_vertices(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}
