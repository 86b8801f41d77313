//! Hierarchical multicriteria shortest-path search.
//!
//! [`cover`] builds nested 2-path-cover graphs over a base [`Graph`];
//! [`engine`] answers one-to-one Pareto queries on them, returning every
//! non-dominated cost vector with one witness route of base edges.

pub mod cost;
pub mod cover;
pub mod engine;
pub mod error;
pub mod graph;
pub mod pareto;

pub use cost::{add_cost, dominates, lex_precedes, truncate, weakly_dominates, CostVector, MAX_CRITERIA};
pub use cover::{build_hierarchy, CoverStats, HierarchicalCover, HierarchyView};
pub use engine::{classic_mls, hierarchical_mls, QueryOptions, QueryOutput, QueryStats, Route, RouteSet};
pub use error::{CostOverflow, FormatError, GraphError, QueryError};
pub use graph::{Edge, EdgeId, Graph, Sense, VertexId};
pub use pareto::{pareto_insert, ParetoSet};
