//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criteria 4, 5, 6 and 8 need the DIMACS NY distance and time graphs:
//! `USA-road-d.NY.gr[.gz]` and `USA-road-t.NY.gr[.gz]` in `$HMLS_NY_DIR`
//! (default `<workspace>/data/ny`).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use hmls_core::{build_hierarchy, CoverStats, HierarchicalCover};
use hmls_toolkit::bench::{run_bench, write_rows_csv, BenchConfig, BenchReport};
use hmls_toolkit::dimacs::{load_dimacs, DimacsSource};
use hmls_toolkit::verify::{run_verify, Suite, VerifyConfig, VerifyReport};

const NY_VERTICES: usize = 264_346;
const NY_EDGES: usize = 733_846;
const NY_LEVELS: usize = 10;
const NY_PAIRS: usize = 25;
const NY_SEED: u64 = 2024;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn line(o: &Outcome) {
    println!("{} criterion {} ({}): {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.name, o.detail);
}

fn verify(suite: Suite) -> (VerifyReport, f64) {
    let started = Instant::now();
    let report = run_verify(&VerifyConfig { suite, ..VerifyConfig::default() });
    (report, started.elapsed().as_secs_f64())
}

fn summary(report: &VerifyReport) -> String {
    let mut s = report.render();
    s.pop();
    s.replace('\n', "; ")
}

fn ny_dir() -> PathBuf {
    std::env::var_os("HMLS_NY_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/ny"))
}

fn ny_files(dir: &Path) -> Option<Vec<PathBuf>> {
    ["USA-road-d.NY.gr", "USA-road-t.NY.gr"]
        .iter()
        .map(|name| {
            let plain = dir.join(name);
            let gz = dir.join(format!("{name}.gz"));
            [plain, gz].into_iter().find(|p| p.is_file())
        })
        .collect()
}

struct NyRun {
    hierarchy: HierarchicalCover,
    stats: CoverStats,
    build_seconds: f64,
    bench: BenchReport,
}

fn ny_bench(h: &HierarchicalCover) -> BenchReport {
    let cfg = BenchConfig {
        pairs: NY_PAIRS,
        seed: NY_SEED,
        levels: (0..=NY_LEVELS).collect(),
        ..BenchConfig::default()
    };
    run_bench(h, &cfg).expect("bench configuration is valid")
}

fn ny_run() -> Result<NyRun, String> {
    let dir = ny_dir();
    let files = ny_files(&dir).ok_or_else(|| {
        format!("DIMACS NY graphs not found in {} (set HMLS_NY_DIR); criterion not evaluated", dir.display())
    })?;
    let g = load_dimacs(&DimacsSource::new(&files)).map_err(|e| e.to_string())?.graph;
    if (g.vertex_count(), g.edge_count()) != (NY_VERTICES, NY_EDGES) {
        return Err(format!(
            "NY graph has {} vertices / {} edges, expected {NY_VERTICES} / {NY_EDGES}",
            g.vertex_count(),
            g.edge_count()
        ));
    }
    let started = Instant::now();
    let (hierarchy, stats) = build_hierarchy(g, NY_LEVELS);
    let build_seconds = started.elapsed().as_secs_f64();
    let bench = ny_bench(&hierarchy);
    Ok(NyRun { hierarchy, stats, build_seconds, bench })
}

fn rows_without_timing(r: &BenchReport) -> String {
    let mut buf = Vec::new();
    write_rows_csv(&r.rows, &mut buf).unwrap();
    String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            // drop mean_s, max_s
            format!("{},{}", f[0], f[3..].join(","))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Least-squares slope of `ys` against their index.
fn slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let mx = (n - 1.0) / 2.0;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = ys.iter().enumerate().map(|(i, y)| (i as f64 - mx) * (y - my)).sum();
    let den: f64 = (0..ys.len()).map(|i| (i as f64 - mx).powi(2)).sum();
    num / den
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();
    let mut lex = 0u64;

    let (r1, s1) = verify(Suite::Equivalence);
    lex += r1.lex_violations;
    outcomes.push(Outcome {
        id: 1,
        name: "oracle equivalence",
        pass: r1.mismatches.is_empty() && r1.queries_checked > 0 && s1 < 300.0,
        detail: format!("{} in {s1:.1} s", summary(&r1)),
    });
    line(outcomes.last().unwrap());

    let (r2, s2) = verify(Suite::Cover);
    outcomes.push(Outcome {
        id: 2,
        name: "cover invariants",
        pass: r2.cover_failures.is_empty() && r2.levels_checked > 0,
        detail: format!("{} violations; {} in {s2:.1} s", r2.cover_failures.len(), summary(&r2)),
    });
    line(outcomes.last().unwrap());

    let (r3, s3) = verify(Suite::Preservation);
    lex += r3.lex_violations;
    outcomes.push(Outcome {
        id: 3,
        name: "Pareto-distance preservation",
        pass: r3.preservation.is_empty() && r3.pairs_compared > 0 && s3 < 600.0,
        detail: format!("{} mismatches; {} in {s3:.1} s", r3.preservation.len(), summary(&r3)),
    });
    line(outcomes.last().unwrap());

    let ny = ny_run();
    let ny_ok = ny.is_ok();
    match &ny {
        Err(why) => {
            for (id, name) in [(4, "label reduction trend"), (5, "speedup trend"), (6, "construction speed")]
            {
                outcomes.push(Outcome { id, name, pass: false, detail: why.clone() });
                line(outcomes.last().unwrap());
            }
        }
        Ok(run) => {
            let rows = &run.bench.rows;
            let labels: Vec<f64> = rows.iter().map(|r| r.mean_labels_m).collect();
            let ratio = labels[0] / labels[NY_LEVELS];
            let monotone = labels.windows(2).all(|w| w[1] <= w[0] * 1.05);
            outcomes.push(Outcome {
                id: 4,
                name: "label reduction trend",
                pass: ratio >= 5.0 && monotone && rows.iter().all(|r| r.timeouts == 0),
                detail: format!(
                    "mean labels created (M) per level {labels:.3?}; level 0 / level 10 = {ratio:.2}"
                ),
            });
            line(outcomes.last().unwrap());

            let times: Vec<f64> = rows.iter().map(|r| r.mean_s).collect();
            let best = times[1..].iter().copied().fold(f64::INFINITY, f64::min);
            let speedup = times[0] / best;
            outcomes.push(Outcome {
                id: 5,
                name: "speedup trend",
                pass: speedup >= 2.0,
                detail: format!("mean query s per level {times:.4?}; best speedup {speedup:.2}x"),
            });
            line(outcomes.last().unwrap());

            let cumulative: Vec<f64> = run.stats.rows.iter().map(|r| r.cumulative_seconds).collect();
            let per_level: Vec<f64> = run.stats.rows.iter().map(|r| r.seconds).collect();
            let non_decreasing = cumulative.windows(2).all(|w| w[1] >= w[0]);
            let trend = slope(&per_level[3..]);
            outcomes.push(Outcome {
                id: 6,
                name: "construction speed",
                pass: run.build_seconds < 60.0 && non_decreasing && trend <= 0.0,
                detail: format!(
                    "build {:.2} s; per-level s {per_level:.3?}; slope over levels 3..10 {trend:.4}",
                    run.build_seconds
                ),
            });
            line(outcomes.last().unwrap());
        }
    }

    let ny_lex: u64 = ny.as_ref().map_or(0, |r| r.bench.lex_violations);
    outcomes.push(Outcome {
        id: 7,
        name: "lexicographic settling",
        pass: lex + ny_lex == 0,
        detail: format!(
            "{} violations over criteria 1-3{}",
            lex + ny_lex,
            if ny_ok { " and 4-5" } else { " (NY runs of criteria 4-5 not available)" }
        ),
    });
    line(outcomes.last().unwrap());

    match &ny {
        Err(why) => outcomes.push(Outcome { id: 8, name: "determinism", pass: false, detail: why.clone() }),
        Ok(run) => {
            let again = ny_bench(&run.hierarchy);
            let labels = |r: &BenchReport| r.records.iter().map(|q| q.labels_created).collect::<Vec<_>>();
            let same = labels(&run.bench) == labels(&again)
                && run.bench.sampled == again.sampled
                && rows_without_timing(&run.bench) == rows_without_timing(&again);
            outcomes.push(Outcome {
                id: 8,
                name: "determinism",
                pass: same,
                detail: format!("{} queries repeated; identical: {same}", again.records.len()),
            });
        }
    }
    line(outcomes.last().unwrap());

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), outcomes.len());
        ExitCode::FAILURE
    }
}
