//! Query benchmarks over truncated hierarchies.

use std::collections::VecDeque;
use std::io::{self, Write};
use std::time::Duration;

use hmls_core::{hierarchical_mls, Graph, HierarchicalCover, QueryError, QueryOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub pairs: usize,
    pub seed: u64,
    pub levels: Vec<usize>,
    pub t_discard: bool,
    pub bounds: bool,
    pub time_limit: Option<Duration>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { pairs: 100, seed: 1, levels: vec![0], t_discard: true, bounds: false, time_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRow {
    pub level: usize,
    pub mean_s: f64,
    pub max_s: f64,
    pub mean_labels_m: f64,
    pub max_labels_m: f64,
    /// Queries that completed (timeouts excluded).
    pub pairs: usize,
    pub timeouts: usize,
}

impl StatsRow {
    pub const CSV_HEADER: &'static str = "level,mean_s,max_s,mean_labels_M,max_labels_M,pairs,timeouts";

    fn from_records(level: usize, records: &[&QueryRecord]) -> Self {
        let done: Vec<_> = records.iter().filter(|r| !r.timed_out).collect();
        let timeouts = records.len() - done.len();
        let k = done.len().max(1) as f64;
        let labels_m = |r: &&&QueryRecord| r.labels_created as f64 / 1e6;
        StatsRow {
            level,
            mean_s: done.iter().map(|r| r.seconds).sum::<f64>() / k,
            max_s: done.iter().map(|r| r.seconds).fold(0.0, f64::max),
            mean_labels_m: done.iter().map(labels_m).sum::<f64>() / k,
            max_labels_m: done.iter().map(labels_m).fold(0.0, f64::max),
            pairs: done.len(),
            timeouts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRecord {
    pub pair: usize,
    pub level: usize,
    /// 0-based vertex ids.
    pub source: u32,
    pub target: u32,
    pub seconds: f64,
    pub labels_created: u64,
    pub labels_inserted: u64,
    pub routes: usize,
    pub timed_out: bool,
}

impl QueryRecord {
    pub const CSV_HEADER: &'static str =
        "pair,level,source,target,seconds,labels_created,labels_inserted,routes,status";
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<StatsRow>,
    pub records: Vec<QueryRecord>,
    /// Sampled pairs with no `s -> d` path in the base graph (1-based
    /// DIMACS ids would be these plus one). They are not queried.
    pub unreachable: Vec<(u32, u32)>,
    pub sampled: Vec<(u32, u32)>,
    /// Settled labels that were lexicographically smaller than their
    /// predecessor, summed over all queries. Always 0 for a correct engine.
    pub lex_violations: u64,
}

/// `count` pairs drawn uniformly and independently from `0..n`.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32))).collect()
}

fn reachable(g: &Graph, s: u32, d: u32) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([s]);
    seen[s as usize] = true;
    while let Some(v) = queue.pop_front() {
        if v == d {
            return true;
        }
        for &e in g.out_edges(v) {
            let w = g.edge(e).to;
            if !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("pair count must be at least 1")]
    NoPairs,
    #[error("level {level} exceeds the hierarchy's {available} levels")]
    Level { level: usize, available: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error(transparent)]
    Query(#[from] QueryError),
}

/// Samples the pairs once and queries each at every requested level.
pub fn run_bench(h: &HierarchicalCover, config: &BenchConfig) -> Result<BenchReport, BenchError> {
    if config.pairs == 0 {
        return Err(BenchError::NoPairs);
    }
    if let Some(&level) = config.levels.iter().find(|&&l| l > h.level_count()) {
        return Err(BenchError::Level { level, available: h.level_count() });
    }
    let g = h.base();
    if g.vertex_count() == 0 {
        return Err(BenchError::Empty);
    }
    let sampled = sample_pairs(g.vertex_count(), config.pairs, config.seed);
    let (pairs, unreachable): (Vec<_>, Vec<_>) =
        sampled.iter().copied().enumerate().partition(|&(_, (s, d))| reachable(g, s, d));
    let opts = QueryOptions {
        t_discard: config.t_discard,
        bounds: config.bounds,
        time_limit: config.time_limit,
        ..QueryOptions::default()
    };

    let mut records = Vec::new();
    let mut rows = Vec::new();
    let mut lex_violations = 0;
    for &level in &config.levels {
        let view = h.truncated(level);
        let first = records.len();
        for &(pair, (s, d)) in &pairs {
            let record = match hierarchical_mls(view, s, d, &opts) {
                Ok(out) => {
                    lex_violations += out.stats.lex_violations();
                    QueryRecord {
                        pair,
                        level,
                        source: s,
                        target: d,
                        seconds: out.stats.elapsed.as_secs_f64(),
                        labels_created: out.stats.labels_created,
                        labels_inserted: out.stats.labels_inserted,
                        routes: out.routes.len(),
                        timed_out: false,
                    }
                }
                Err(QueryError::TimeLimit) => QueryRecord {
                    pair,
                    level,
                    source: s,
                    target: d,
                    seconds: config.time_limit.unwrap_or_default().as_secs_f64(),
                    labels_created: 0,
                    labels_inserted: 0,
                    routes: 0,
                    timed_out: true,
                },
                Err(e) => return Err(e.into()),
            };
            log::debug!("level {level} pair {pair}: {record:?}");
            records.push(record);
        }
        let refs: Vec<_> = records[first..].iter().collect();
        rows.push(StatsRow::from_records(level, &refs));
    }
    Ok(BenchReport {
        rows,
        records,
        unreachable: unreachable.into_iter().map(|(_, p)| p).collect(),
        sampled,
        lex_violations,
    })
}

pub fn write_rows_csv<W: Write>(rows: &[StatsRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{}", StatsRow::CSV_HEADER)?;
    for r in rows {
        writeln!(
            w,
            "{},{:.6},{:.6},{:.6},{:.6},{},{}",
            r.level, r.mean_s, r.max_s, r.mean_labels_m, r.max_labels_m, r.pairs, r.timeouts
        )?;
    }
    Ok(())
}

pub fn write_records_csv<W: Write>(records: &[QueryRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{}", QueryRecord::CSV_HEADER)?;
    for r in records {
        let status = if r.timed_out { "timeout" } else { "ok" };
        writeln!(
            w,
            "{},{},{},{},{:.6},{},{},{},{status}",
            r.pair, r.level, r.source, r.target, r.seconds, r.labels_created, r.labels_inserted, r.routes
        )?;
    }
    Ok(())
}
