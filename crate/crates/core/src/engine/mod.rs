//! Multicriteria label-setting queries: classic MLS on one graph and the
//! two-stage hierarchical variant with optional t-discarding and bounds
//! pruning.

mod backward;
mod bounds;
mod forward;
mod mls;
mod route;
mod search;
mod tset;

use std::time::{Duration, Instant};

use crate::cost::CostVector;
use crate::error::QueryError;
use crate::graph::{Graph, VertexId};

pub use backward::{backward_mls, BackwardRoutes};
pub use bounds::{bound_prune, compute_bounds, BoundsTable};
pub use forward::{connect_routes, hierarchical_mls, CompositeRoutes};
pub use mls::{classic_mls, classic_mls_with_deadline, pareto_profile, pareto_profile_counted};
pub use route::{Route, RouteSet};
pub use search::{Direction, Dominance, EdgeRef, Label, LabelId, SearchCounters};
pub use tset::{t_discards, tset_update, TSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryOptions {
    /// Replace permanent-set dominance checks with t-discarding.
    pub t_discard: bool,
    /// Prune with per-criterion lower / upper bounds.
    pub bounds: bool,
    /// Apply dominance checks in the backward stage.
    pub backward_dominance: bool,
    pub time_limit: Option<Duration>,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions { t_discard: true, bounds: false, backward_dominance: true, time_limit: None }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Labels created by both stages, counted before any discard.
    pub labels_created: u64,
    /// Labels of both stages that entered a temporary set.
    pub labels_inserted: u64,
    pub forward: SearchCounters,
    pub backward: SearchCounters,
    pub hits: usize,
    pub backward_skipped: bool,
    pub elapsed: Duration,
}

impl QueryStats {
    pub fn lex_violations(&self) -> u64 {
        self.forward.lex_violations + self.backward.lex_violations
    }
}

#[derive(Debug, Clone)]
pub struct QueryOutput {
    pub routes: RouteSet,
    pub stats: QueryStats,
}

impl QueryOutput {
    fn trivial(q: usize, started: Instant) -> Self {
        let route = Route { cost: CostVector::zero(q), edges: Vec::new() };
        QueryOutput {
            routes: RouteSet::from_routes(vec![route]),
            stats: QueryStats { elapsed: started.elapsed(), ..QueryStats::default() },
        }
    }
}

fn check_vertex(g: &Graph, v: VertexId) -> Result<(), QueryError> {
    if (v as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(QueryError::InvalidVertex { vertex: v, vertex_count: g.vertex_count() })
    }
}
