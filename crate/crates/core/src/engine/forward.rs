use std::time::Instant;

use crate::cost::CostVector;
use crate::cover::HierarchyView;
use crate::error::{CostOverflow, QueryError};
use crate::graph::{EdgeId, VertexId};
use crate::pareto::ParetoSet;

use super::backward::{backward_mls, BackwardRoutes};
use super::bounds::{bound_prune, compute_bounds};
use super::route::{Route, RouteSet};
use super::search::{Direction, Dominance, EdgeRef, Expansion, LabelId, SearchSpace};
use super::{check_vertex, QueryOptions, QueryOutput, QueryStats};

/// Composite routes: forward label joined with a backward label.
pub type CompositeRoutes = ParetoSet<(LabelId, LabelId)>;

/// Joins a settled forward label with every backward label at its vertex.
/// Returns how many composites entered `routes`.
pub fn connect_routes(
    forward: (CostVector, LabelId),
    backward: &[(CostVector, LabelId)],
    routes: &mut CompositeRoutes,
) -> Result<usize, CostOverflow> {
    let mut inserted = 0;
    for &(bcost, bid) in backward {
        let cost = forward.0.checked_add(&bcost)?;
        if routes.insert(cost, (forward.1, bid)) {
            inserted += 1;
        }
    }
    Ok(inserted)
}

/// Two-stage hierarchical multicriteria label-setting query.
///
/// Stage one runs [`backward_mls`] from `d`. Stage two is a forward
/// label-setting search from `s` in which every vertex `v` expands on
/// level `T(v)` only. Each settled forward label is joined with the
/// backward labels at its vertex, if any, and the joins are Pareto-filtered
/// into the answer.
pub fn hierarchical_mls(
    view: HierarchyView<'_>,
    s: VertexId,
    d: VertexId,
    options: &QueryOptions,
) -> Result<QueryOutput, QueryError> {
    let started = Instant::now();
    let deadline = options.time_limit.map(|t| started + t);
    check_vertex(view.base(), s)?;
    check_vertex(view.base(), d)?;
    let q = view.criteria();
    if s == d {
        return Ok(QueryOutput::trivial(q, started));
    }

    let backward = backward_mls(view, d, options.backward_dominance, deadline)?;
    let bounds = if options.bounds { Some(compute_bounds(view, s, d)?) } else { None };
    let bounds = bounds.filter(|b| !b.is_empty());

    let mut space = SearchSpace::new(view.vertex_count(), Direction::Forward);
    space.push_root(s, q);
    let dominance = if options.t_discard { Dominance::TDiscard } else { Dominance::Full };
    let mut composite = CompositeRoutes::new();
    space.run(
        dominance,
        deadline,
        |v| {
            let t = view.top_level(v);
            let g = view.graph(t);
            Some(Expansion { graph: g, level: t, edges: g.out_edges(v) })
        },
        |sp, id| {
            let l = sp.label(id);
            if let Some(bl) = backward.labels_at(l.vertex) {
                connect_routes((l.cost, id), bl, &mut composite)?;
            }
            Ok(())
        },
        |v, cost| bounds.as_ref().is_some_and(|b| bound_prune(b, v, cost)),
    )?;

    let routes = composite
        .into_entries()
        .into_iter()
        .map(|(cost, (fid, bid))| Route { cost, edges: unpack_route(view, &space, &backward, fid, bid) })
        .collect();
    let b = backward.counters();
    let f = space.counters;
    let stats = QueryStats {
        labels_created: f.created + b.created,
        labels_inserted: f.inserted + b.inserted,
        forward: f,
        backward: b,
        hits: backward.hits().len(),
        backward_skipped: backward.skipped(),
        elapsed: started.elapsed(),
    };
    Ok(QueryOutput { routes: RouteSet::from_routes(routes), stats })
}

fn unpack_route(
    view: HierarchyView<'_>,
    forward: &SearchSpace,
    backward: &BackwardRoutes,
    fid: LabelId,
    bid: LabelId,
) -> Vec<EdgeId> {
    let mut out = Vec::new();
    let mut push = |r: EdgeRef| view.cover().unpack_into(r.level as usize, r.edge, &mut out);
    forward.edge_trail(fid).into_iter().for_each(&mut push);
    backward.trail_to_target(bid).into_iter().for_each(&mut push);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_hierarchy;
    use crate::engine::classic_mls;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    fn all_options() -> Vec<QueryOptions> {
        let mut v = Vec::new();
        for t_discard in [false, true] {
            for bounds in [false, true] {
                for backward_dominance in [false, true] {
                    v.push(QueryOptions { t_discard, bounds, backward_dominance, time_limit: None });
                }
            }
        }
        v
    }

    #[test]
    fn g5_walkthrough() {
        let (h, _) = build_hierarchy(g5(), 1);
        for opts in all_options() {
            let out = hierarchical_mls(h.view(), A, B, &opts).unwrap();
            assert_eq!(out.routes.costs(), vec![cv(&[5, 5])]);
            // a→u, u→x, x→w, w→b
            assert_eq!(out.routes.routes()[0].edges, vec![0, 1, 2, 3]);
            assert!(out.routes.routes()[0].is_consistent(h.base(), A, B));
        }
        let classic = classic_mls(h.base(), A, B).unwrap();
        assert_eq!(classic.routes.costs(), vec![cv(&[5, 5])]);
    }

    #[test]
    fn diamond_matches_classic_at_every_level() {
        let expected = vec![cv(&[2, 4]), cv(&[3, 3])];
        assert_eq!(classic_mls(&d4(), S, D).unwrap().routes.costs(), expected);
        for levels in 0..=3 {
            let (h, _) = build_hierarchy(d4(), levels);
            for opts in all_options() {
                let out = hierarchical_mls(h.view(), S, D, &opts).unwrap();
                assert_eq!(out.routes.costs(), expected, "levels {levels} {opts:?}");
                for r in out.routes.routes() {
                    assert!(r.is_consistent(h.base(), S, D));
                }
            }
        }
    }

    #[test]
    fn zero_levels_equals_classic() {
        let (h, _) = build_hierarchy(g5(), 0);
        for s in 0..5 {
            for d in 0..5 {
                let a = classic_mls(h.base(), s, d).unwrap().routes;
                let b = hierarchical_mls(h.view(), s, d, &QueryOptions::default()).unwrap().routes;
                assert_eq!(a.costs(), b.costs());
            }
        }
    }

    #[test]
    fn trivial_and_unreachable_queries() {
        let (h, _) = build_hierarchy(d4(), 1);
        let out = hierarchical_mls(h.view(), DA, DA, &QueryOptions::default()).unwrap();
        assert_eq!(out.routes.costs(), vec![cv(&[0, 0])]);
        let out = hierarchical_mls(h.view(), D, S, &QueryOptions::default()).unwrap();
        assert!(out.routes.is_empty());
    }

    #[test]
    fn meeting_below_the_top_level() {
        // s→m→d where m is a level-1 vertex isolated on level 1, so the top
        // level (2) is empty and the two searches meet at m
        let g = Graph::new(3, 2, vec![edge(0, 1, &[1, 2]), edge(1, 2, &[2, 1])]).unwrap();
        let (h, _) = build_hierarchy(g, 2);
        assert_eq!(h.top_level(1), 1);
        assert_eq!(h.cover_level(2).vertex_count(), 0);
        for opts in all_options() {
            let out = hierarchical_mls(h.view(), 0, 2, &opts).unwrap();
            assert_eq!(out.routes.costs(), vec![cv(&[3, 3])], "{opts:?}");
        }
    }

    #[test]
    fn connect_examples() {
        let mut routes = CompositeRoutes::new();
        assert_eq!(connect_routes((cv(&[4, 4]), 0), &[(cv(&[1, 1]), 0)], &mut routes).unwrap(), 1);
        assert_eq!(routes.sorted_costs(), vec![cv(&[5, 5])]);
        assert_eq!(connect_routes((cv(&[4, 4]), 1), &[(cv(&[1, 1]), 0)], &mut routes).unwrap(), 0);

        let mut routes = CompositeRoutes::new();
        let n = connect_routes((cv(&[2, 2]), 0), &[(cv(&[1, 4]), 0), (cv(&[4, 1]), 1)], &mut routes).unwrap();
        assert_eq!(n, 2);
        assert_eq!(routes.sorted_costs(), vec![cv(&[3, 6]), cv(&[6, 3])]);
    }

    #[test]
    fn time_limit_is_enforced() {
        let (h, _) = build_hierarchy(d4(), 0);
        let opts = QueryOptions { time_limit: Some(std::time::Duration::ZERO), ..QueryOptions::default() };
        // tiny queries finish before the first deadline check
        assert!(hierarchical_mls(h.view(), S, D, &opts).is_ok());
    }
}
