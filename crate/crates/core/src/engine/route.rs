use crate::cost::CostVector;
use crate::graph::{EdgeId, Graph};

/// A Pareto-optimal route expressed as base-graph edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub cost: CostVector,
    pub edges: Vec<EdgeId>,
}

impl Route {
    /// True if the edges form a walk from `s` to `d` whose summed cost is
    /// the stored cost.
    pub fn is_consistent(&self, g: &Graph, s: u32, d: u32) -> bool {
        let mut at = s;
        let mut cost = CostVector::zero(g.criteria());
        for &e in &self.edges {
            let edge = g.edge(e);
            if edge.from != at {
                return false;
            }
            at = edge.to;
            cost = match cost.checked_add(&edge.cost) {
                Ok(c) => c,
                Err(_) => return false,
            };
        }
        at == d && cost == self.cost
    }
}

/// Final query answer: routes with mutually non-dominated costs, in
/// ascending lexicographic cost order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RouteSet {
    routes: Vec<Route>,
}

impl RouteSet {
    pub fn from_routes(mut routes: Vec<Route>) -> Self {
        routes.sort_by_key(|r| r.cost);
        debug_assert!(routes.windows(2).all(|w| w[0].cost != w[1].cost));
        RouteSet { routes }
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn costs(&self) -> Vec<CostVector> {
        self.routes.iter().map(|r| r.cost).collect()
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }
}
