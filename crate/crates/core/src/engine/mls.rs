use std::time::Instant;

use crate::cost::CostVector;
use crate::error::QueryError;
use crate::graph::{Graph, VertexId};

use super::route::{Route, RouteSet};
use super::search::{Direction, Dominance, Expansion, SearchCounters, SearchSpace};
use super::{check_vertex, QueryOutput, QueryStats};

/// Classic multicriteria label-setting search on a single graph.
///
/// Candidates are checked by weak dominance against `temp ∪ perm` of their
/// vertex; the loop runs until the queue is empty.
pub fn classic_mls(g: &Graph, s: VertexId, d: VertexId) -> Result<QueryOutput, QueryError> {
    classic_mls_with_deadline(g, s, d, None)
}

pub fn classic_mls_with_deadline(
    g: &Graph,
    s: VertexId,
    d: VertexId,
    deadline: Option<Instant>,
) -> Result<QueryOutput, QueryError> {
    let started = Instant::now();
    check_vertex(g, s)?;
    check_vertex(g, d)?;
    let q = g.criteria();
    if s == d {
        return Ok(QueryOutput::trivial(q, started));
    }
    let mut space = SearchSpace::new(g.vertex_count(), Direction::Forward);
    space.push_root(s, q);
    space.run(
        Dominance::Full,
        deadline,
        |v| Some(Expansion { graph: g, level: 0, edges: g.out_edges(v) }),
        |_, _| Ok(()),
        |_, _| false,
    )?;

    let routes = space
        .perm(d)
        .iter()
        .map(|&(cost, id)| Route { cost, edges: space.edge_trail(id).into_iter().map(|r| r.edge).collect() })
        .collect();
    let stats = QueryStats {
        labels_created: space.counters.created,
        labels_inserted: space.counters.inserted,
        forward: space.counters,
        elapsed: started.elapsed(),
        ..QueryStats::default()
    };
    Ok(QueryOutput { routes: RouteSet::from_routes(routes), stats })
}

/// Pareto cost sets from `s` to every vertex of `g` (one-to-all classic MLS).
pub fn pareto_profile(g: &Graph, s: VertexId) -> Result<Vec<Vec<CostVector>>, QueryError> {
    pareto_profile_counted(g, s).map(|(costs, _)| costs)
}

/// As [`pareto_profile`], also returning the search counters.
pub fn pareto_profile_counted(
    g: &Graph,
    s: VertexId,
) -> Result<(Vec<Vec<CostVector>>, SearchCounters), QueryError> {
    check_vertex(g, s)?;
    let mut space = SearchSpace::new(g.vertex_count(), Direction::Forward);
    space.push_root(s, g.criteria());
    space.run(
        Dominance::Full,
        None,
        |v| Some(Expansion { graph: g, level: 0, edges: g.out_edges(v) }),
        |_, _| Ok(()),
        |_, _| false,
    )?;
    let costs = (0..g.vertex_count() as VertexId)
        .map(|v| {
            let mut c: Vec<_> = space.perm(v).iter().map(|(c, _)| *c).collect();
            c.sort_unstable();
            c
        })
        .collect();
    Ok((costs, space.counters))
}
