//! Randomized verification: oracle equivalence, cover invariants and
//! Pareto-distance preservation on generated graphs.

use std::fmt;

use hmls_core::cover::{check_cover_invariants, path_cost, CoverViolation};
use hmls_core::engine::pareto_profile_counted;
use hmls_core::{
    build_hierarchy, classic_mls, hierarchical_mls, Graph, HierarchicalCover, QueryOptions, RouteSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generate::generate_random_graph;
use crate::oracle::pareto_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Cover,
    Equivalence,
    Preservation,
}

impl Suite {
    fn runs(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub graphs: usize,
    pub pairs: usize,
    /// Hierarchies are built with this many levels; queries run at every
    /// truncation `0..=max_level`.
    pub max_level: usize,
    /// Graphs used by the preservation suite (a prefix of the same sequence).
    pub preservation_graphs: usize,
    /// Preservation compares `G_t` with `G_{t+1}` for `t < preservation_levels`.
    pub preservation_levels: usize,
    pub max_vertices: usize,
    pub max_cost: u64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            graphs: 50,
            pairs: 20,
            max_level: 5,
            preservation_graphs: 20,
            preservation_levels: 3,
            max_vertices: 300,
            max_cost: 20,
            seed: 0,
        }
    }
}

/// Everything needed to regenerate one test graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphSpec {
    pub seed: u64,
    pub vertices: usize,
    pub arcs: usize,
    pub criteria: usize,
    pub max_cost: u64,
}

impl GraphSpec {
    pub fn generate(&self) -> Graph {
        generate_random_graph(self.vertices, self.arcs, self.criteria, self.max_cost, self.seed)
            .expect("generator parameters are valid")
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph(seed={}, n={}, m={}, q={}, max_cost={})",
            self.seed, self.vertices, self.arcs, self.criteria, self.max_cost
        )
    }
}

/// The `i`-th graph of a configuration.
pub fn graph_specs(config: &VerifyConfig) -> Vec<GraphSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.graphs.max(config.preservation_graphs))
        .map(|i| {
            let vertices = rng.gen_range(2..=config.max_vertices.max(2));
            let arcs = rng.gen_range(vertices - 1..=3 * vertices);
            GraphSpec { seed: rng.gen(), vertices, arcs, criteria: 2 + i % 2, max_cost: config.max_cost }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub graph: GraphSpec,
    /// 0-based vertex ids.
    pub source: u32,
    pub target: u32,
    /// Hierarchy truncation level, `None` for classic MLS.
    pub level: Option<usize>,
    pub t_discard: bool,
    pub bounds: bool,
    pub expected: Vec<Vec<u64>>,
    pub got: Vec<Vec<u64>>,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.level {
            None => "classic".to_string(),
            Some(l) => format!("level={l} tdiscard={} bounds={}", self.t_discard, self.bounds),
        };
        write!(
            f,
            "{} pair=({},{}) {what}: {} (expected {:?}, got {:?})",
            self.graph, self.source, self.target, self.detail, self.expected, self.got
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationMismatch {
    pub graph: GraphSpec,
    pub level: usize,
    pub source: u32,
    pub target: u32,
    pub lower: Vec<Vec<u64>>,
    pub upper: Vec<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct CoverFailure {
    pub graph: Option<GraphSpec>,
    pub violation: CoverViolation,
}

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub graphs_checked: usize,
    pub queries_checked: usize,
    pub levels_checked: usize,
    pub pairs_compared: usize,
    pub cover_failures: Vec<CoverFailure>,
    /// One entry per failing (graph, pair): the lowest failing level with
    /// the fewest flags set.
    pub mismatches: Vec<Mismatch>,
    pub preservation: Vec<PreservationMismatch>,
    pub lex_violations: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cover_failures.is_empty()
            && self.mismatches.is_empty()
            && self.preservation.is_empty()
            && self.lex_violations == 0
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.cover_failures {
            match &c.graph {
                Some(g) => s += &format!("cover {g}: {}\n", c.violation),
                None => s += &format!("cover: {}\n", c.violation),
            }
        }
        for m in &self.mismatches {
            s += &format!("mismatch {m}\n");
        }
        for p in &self.preservation {
            s += &format!(
                "preservation {} level={} pair=({},{}): G_t {:?} vs G_t+1 {:?}\n",
                p.graph, p.level, p.source, p.target, p.lower, p.upper
            );
        }
        if self.lex_violations > 0 {
            s += &format!("lexicographic settle violations: {}\n", self.lex_violations);
        }
        s += &format!(
            "graphs={} queries={} levels={} preserved_pairs={}\n",
            self.graphs_checked, self.queries_checked, self.levels_checked, self.pairs_compared
        );
        s += if self.passed() { "PASS\n" } else { "FAIL\n" };
        s
    }
}

fn plain(costs: Vec<hmls_core::CostVector>) -> Vec<Vec<u64>> {
    costs.iter().map(|c| c.as_slice().to_vec()).collect()
}

/// Checks that every route is a real `s -> d` walk whose summed cost is
/// the reported cost.
fn route_problem(g: &Graph, routes: &RouteSet, s: u32, d: u32) -> Option<String> {
    for r in routes.routes() {
        if !r.is_consistent(g, s, d) {
            return Some(format!("route {:?} is not an s-d walk", r.edges));
        }
        if path_cost(g, &r.edges) != Some(r.cost) && !(s == d && r.edges.is_empty()) {
            return Some(format!("route {:?} cost differs from its edges", r.edges));
        }
    }
    None
}

/// Runs the cover-invariant suite on one hierarchy.
pub fn verify_cover(h: &HierarchicalCover) -> Vec<CoverViolation> {
    check_cover_invariants(h)
}

pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::default();
    let specs = graph_specs(config);
    for (i, spec) in specs.iter().enumerate() {
        let wants_main = i < config.graphs;
        let wants_pres = i < config.preservation_graphs && config.suite.runs(Suite::Preservation);
        if !(wants_main && (config.suite.runs(Suite::Cover) || config.suite.runs(Suite::Equivalence)))
            && !wants_pres
        {
            continue;
        }
        report.graphs_checked += 1;
        let levels =
            if wants_pres { config.max_level.max(config.preservation_levels) } else { config.max_level };
        let (h, _) = build_hierarchy(spec.generate(), levels);
        report.levels_checked += h.level_count();

        if wants_main && config.suite.runs(Suite::Cover) {
            report.cover_failures.extend(
                check_cover_invariants(&h)
                    .into_iter()
                    .map(|violation| CoverFailure { graph: Some(*spec), violation }),
            );
        }
        if wants_main && config.suite.runs(Suite::Equivalence) {
            equivalence(&h, spec, config, &mut report);
        }
        if wants_pres {
            preservation(&h, spec, config.preservation_levels, &mut report);
        }
    }
    report
}

fn equivalence(h: &HierarchicalCover, spec: &GraphSpec, config: &VerifyConfig, report: &mut VerifyReport) {
    let g = h.base();
    let n = g.vertex_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed);
    for _ in 0..config.pairs {
        let (s, d) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let expected = pareto_oracle(g, s, d);
        let mismatch = |level, t_discard, bounds, got, detail: &str| Mismatch {
            graph: *spec,
            source: s,
            target: d,
            level,
            t_discard,
            bounds,
            expected: expected.clone(),
            got,
            detail: detail.to_string(),
        };

        let classic = classic_mls(g, s, d).expect("valid query");
        report.queries_checked += 1;
        report.lex_violations += classic.stats.lex_violations();
        let got = plain(classic.routes.costs());
        if got != expected {
            report.mismatches.push(mismatch(None, false, false, got, "cost set differs from oracle"));
            continue;
        }
        if let Some(p) = route_problem(g, &classic.routes, s, d) {
            report.mismatches.push(mismatch(None, false, false, got, &p));
            continue;
        }

        'levels: for level in 0..=config.max_level.min(h.level_count()) {
            for (t_discard, bounds) in [(true, false), (false, false), (true, true), (false, true)] {
                let opts = QueryOptions { t_discard, bounds, ..QueryOptions::default() };
                let out = hierarchical_mls(h.truncated(level), s, d, &opts).expect("valid query");
                report.queries_checked += 1;
                report.lex_violations += out.stats.lex_violations();
                let got = plain(out.routes.costs());
                let problem = if got != expected {
                    Some("cost set differs from oracle".to_string())
                } else {
                    route_problem(g, &out.routes, s, d)
                };
                if let Some(p) = problem {
                    report.mismatches.push(mismatch(Some(level), t_discard, bounds, got, &p));
                    break 'levels;
                }
            }
        }
    }
}

fn preservation(h: &HierarchicalCover, spec: &GraphSpec, levels: usize, report: &mut VerifyReport) {
    for t in 0..levels.min(h.level_count()) {
        let upper = h.cover_level(t + 1).members();
        for u in upper.ones() {
            let u = u as u32;
            let (lo, lc) = pareto_profile_counted(h.graph(t), u).expect("valid vertex");
            let (hi, hc) = pareto_profile_counted(h.graph(t + 1), u).expect("valid vertex");
            report.lex_violations += lc.lex_violations + hc.lex_violations;
            for w in upper.ones() {
                if w as u32 == u {
                    continue;
                }
                report.pairs_compared += 1;
                if lo[w] != hi[w] {
                    report.preservation.push(PreservationMismatch {
                        graph: *spec,
                        level: t,
                        source: u,
                        target: w as u32,
                        lower: plain(lo[w].clone()),
                        upper: plain(hi[w].clone()),
                    });
                }
            }
        }
    }
}
