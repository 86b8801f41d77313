//! Behaviour on a synthetic road-like network: exact answers at every
//! level and the expected shape of the per-level statistics.

use hmls_core::{build_hierarchy, classic_mls, hierarchical_mls, QueryOptions};
use hmls_toolkit::bench::{run_bench, BenchConfig};
use hmls_toolkit::generate::generate_grid;

#[test]
fn road_grid_levels_are_exact_and_shrink_search_spaces() {
    let g = generate_grid(30, 30, 8, 5).unwrap();
    let (h, stats) = build_hierarchy(g, 10);

    let vertices: Vec<usize> = stats.rows.iter().map(|r| r.vertices).collect();
    assert!(vertices.windows(2).all(|w| w[1] < w[0]), "{vertices:?}");
    let edges: Vec<usize> = stats.rows.iter().map(|r| r.edges).collect();
    // edges first shrink with the vertex set, then grow again at high levels
    let low = *edges.iter().min().unwrap();
    assert!(low < edges[0] && edges[10] > low, "{edges:?}");

    let cfg = BenchConfig { pairs: 6, seed: 3, levels: vec![0, 3, 10], ..BenchConfig::default() };
    let report = run_bench(&h, &cfg).unwrap();
    assert_eq!(report.lex_violations, 0);
    let pairs: Vec<_> =
        report.records.iter().filter(|r| r.level == 0).map(|r| (r.source, r.target)).collect();
    for &(s, d) in &pairs {
        let expected = classic_mls(h.base(), s, d).unwrap().routes.costs();
        assert!(expected.len() > 1, "pair ({s},{d}) should have several Pareto routes");
        for level in [3, 10] {
            let out = hierarchical_mls(h.truncated(level), s, d, &QueryOptions::default()).unwrap();
            assert_eq!(out.routes.costs(), expected, "level {level} pair ({s},{d})");
        }
    }

    let inserted = |level| {
        let r: Vec<_> = report.records.iter().filter(|r| r.level == level).collect();
        r.iter().map(|r| r.labels_inserted as f64).sum::<f64>() / r.len() as f64
    };
    assert!(inserted(3) * 1.5 < inserted(0), "{} vs {}", inserted(3), inserted(0));
    assert!(inserted(10) < inserted(0));
}
