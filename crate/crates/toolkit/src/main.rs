use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hmls_core::{build_hierarchy, hierarchical_mls, CoverStats, HierarchicalCover, QueryOptions};
use hmls_toolkit::bench::{run_bench, write_records_csv, write_rows_csv, BenchConfig};
use hmls_toolkit::dimacs::{load_dimacs, write_dimacs, DimacsSource};
use hmls_toolkit::generate::{generate_grid, generate_random_graph};
use hmls_toolkit::verify::{run_verify, verify_cover, Suite, VerifyConfig};
use hmls_toolkit::{load_hierarchy, parse_levels, save_hierarchy};
use serde_json::json;

/// Hierarchical multicriteria route planning.
///
/// Vertex ids on the command line and in printed paths are 1-based, as in
/// DIMACS files.
#[derive(Parser)]
#[command(name = "hmls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Cover,
    Equivalence,
    Preservation,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cover hierarchy from DIMACS .gr files (one per criterion).
    Build {
        #[arg(long, num_args = 1.., required = true)]
        gr: Vec<PathBuf>,
        /// Number of cover levels above the base graph.
        #[arg(long, default_value_t = 10)]
        levels: usize,
        /// Hierarchy output file.
        #[arg(long)]
        out: PathBuf,
        /// Per-level CSV (default: stdout).
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Per-level JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Pareto routes between two vertices.
    Query {
        hierarchy: PathBuf,
        #[arg(short, long)]
        source: u64,
        #[arg(short, long)]
        target: u64,
        /// Query on the hierarchy truncated to this many levels.
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        no_tdiscard: bool,
        #[arg(long)]
        bounds: bool,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Print costs only.
        #[arg(long)]
        no_path: bool,
        #[arg(long)]
        json: bool,
    },
    /// Query random pairs at several truncation levels.
    Bench {
        hierarchy: PathBuf,
        /// `N`, `A..B` or `A,B,C`.
        #[arg(long, default_value = "0")]
        levels: String,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        no_tdiscard: bool,
        #[arg(long)]
        bounds: bool,
        /// Per-query limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Row CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-query CSV.
        #[arg(long)]
        per_query: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Randomized oracle-equivalence and cover-invariant checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 50)]
        graphs: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        /// Highest truncation level queried.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        max_vertices: usize,
        /// Check the cover invariants of this hierarchy file instead.
        #[arg(long)]
        hierarchy: Option<PathBuf>,
    },
    /// Write a synthetic graph as DIMACS files `<out>.<criterion>.gr`.
    Generate {
        #[arg(long, default_value_t = 100)]
        vertices: usize,
        #[arg(long, default_value_t = 300)]
        arcs: usize,
        #[arg(long, default_value_t = 2)]
        criteria: usize,
        #[arg(long, default_value_t = 20)]
        max_cost: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `WxH` road-like grid instead of a random graph (2 criteria).
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>> {
    s.map(|x| Duration::try_from_secs_f64(x).context("invalid --time-limit")).transpose()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn usage_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn build(
    gr: &[PathBuf],
    levels: usize,
    out: &Path,
    stats: Option<&Path>,
    json_out: Option<&Path>,
) -> Result<()> {
    let loaded = load_dimacs(&DimacsSource::new(gr))?;
    let g = loaded.graph;
    log::info!("loaded {} vertices, {} edges, {} criteria", g.vertex_count(), g.edge_count(), g.criteria());
    let (h, st) = build_hierarchy(g, levels);
    save_hierarchy(&h, out).with_context(|| format!("cannot write {}", out.display()))?;
    let mut w = output(stats)?;
    st.write_csv(&mut w)?;
    w.flush()?;
    if let Some(p) = json_out {
        std::fs::write(p, serde_json::to_string_pretty(&stats_json(&st))?)?;
    }
    Ok(())
}

fn stats_json(st: &CoverStats) -> serde_json::Value {
    st.rows
        .iter()
        .map(|r| {
            json!({"level": r.level, "k": r.k, "vertices": r.vertices, "edges": r.edges,
                   "seconds": r.seconds, "cumulative_seconds": r.cumulative_seconds})
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn query(
    h: &HierarchicalCover,
    s: u32,
    d: u32,
    levels: Option<usize>,
    opts: &QueryOptions,
    no_path: bool,
    as_json: bool,
) -> Result<()> {
    let view = h.truncated(levels.unwrap_or(h.level_count()));
    let out = hierarchical_mls(view, s, d, opts)?;
    let g = h.base();
    let vertices = |edges: &[u32]| -> Vec<u64> {
        let mut v = vec![s as u64 + 1];
        v.extend(edges.iter().map(|&e| g.edge(e).to as u64 + 1));
        v
    };
    let mut w = io::stdout().lock();
    if as_json {
        let routes: Vec<_> = out
            .routes
            .routes()
            .iter()
            .map(|r| {
                let mut o = json!({"cost": r.cost.as_slice()});
                if !no_path {
                    o["path"] = json!(vertices(&r.edges));
                }
                o
            })
            .collect();
        let doc = json!({
            "source": s + 1, "target": d + 1, "routes": routes,
            "labels_created": out.stats.labels_created, "labels_inserted": out.stats.labels_inserted,
            "elapsed_s": out.stats.elapsed.as_secs_f64(),
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(());
    }
    let n = out.routes.len();
    writeln!(w, "{n} route{}", if n == 1 { "" } else { "s" })?;
    for r in out.routes.routes() {
        let cost: Vec<String> = r.cost.as_slice().iter().map(u64::to_string).collect();
        if no_path {
            writeln!(w, "({})", cost.join(","))?;
        } else {
            let path: Vec<String> = vertices(&r.edges).iter().map(u64::to_string).collect();
            writeln!(w, "({}) {}", cost.join(","), path.join(" "))?;
        }
    }
    writeln!(w, "labels created: {} (inserted {})", out.stats.labels_created, out.stats.labels_inserted)?;
    writeln!(w, "elapsed: {:.6} s", out.stats.elapsed.as_secs_f64())?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { gr, levels, out, stats, json } => {
            if levels > hmls_core::cover::MAX_LEVELS {
                return Ok(usage_error(format!("--levels must be at most {}", hmls_core::cover::MAX_LEVELS)));
            }
            build(&gr, levels, &out, stats.as_deref(), json.as_deref())?;
        }
        Command::Query {
            hierarchy,
            source,
            target,
            levels,
            no_tdiscard,
            bounds,
            time_limit,
            no_path,
            json,
        } => {
            let h =
                load_hierarchy(&hierarchy).with_context(|| format!("cannot read {}", hierarchy.display()))?;
            let n = h.base().vertex_count() as u64;
            for v in [source, target] {
                if v == 0 || v > n {
                    return Ok(usage_error(format!("unknown vertex {v} (valid ids are 1..={n})")));
                }
            }
            if levels.is_some_and(|l| l > h.level_count()) {
                return Ok(usage_error(format!("hierarchy has only {} levels", h.level_count())));
            }
            let opts = QueryOptions {
                t_discard: !no_tdiscard,
                bounds,
                time_limit: seconds(time_limit)?,
                ..QueryOptions::default()
            };
            query(&h, (source - 1) as u32, (target - 1) as u32, levels, &opts, no_path, json)?;
        }
        Command::Bench {
            hierarchy,
            levels,
            pairs,
            seed,
            no_tdiscard,
            bounds,
            time_limit,
            out,
            per_query,
            json,
        } => {
            let levels = match parse_levels(&levels) {
                Ok(l) => l,
                Err(e) => return Ok(usage_error(e)),
            };
            let h =
                load_hierarchy(&hierarchy).with_context(|| format!("cannot read {}", hierarchy.display()))?;
            let cfg = BenchConfig {
                pairs,
                seed,
                levels,
                t_discard: !no_tdiscard,
                bounds,
                time_limit: seconds(time_limit)?,
            };
            let report = run_bench(&h, &cfg)?;
            if !report.unreachable.is_empty() {
                eprintln!("{} of {} sampled pairs unreachable, not queried", report.unreachable.len(), pairs);
            }
            let mut w = output(out.as_deref())?;
            write_rows_csv(&report.rows, &mut w)?;
            w.flush()?;
            if let Some(p) = per_query {
                let mut w = output(Some(&p))?;
                write_records_csv(&report.records, &mut w)?;
                w.flush()?;
            }
            if let Some(p) = json {
                std::fs::write(p, serde_json::to_string_pretty(&report)?)?;
            }
        }
        Command::Verify { suite, graphs, pairs, levels, seed, max_vertices, hierarchy } => {
            if let Some(path) = hierarchy {
                let h = load_hierarchy(&path).with_context(|| format!("cannot read {}", path.display()))?;
                let violations = verify_cover(&h);
                for v in &violations {
                    println!("cover: {v}");
                }
                println!("{}", if violations.is_empty() { "PASS" } else { "FAIL" });
                return Ok(if violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
            }
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Cover => Suite::Cover,
                SuiteArg::Equivalence => Suite::Equivalence,
                SuiteArg::Preservation => Suite::Preservation,
            };
            let cfg = VerifyConfig {
                suite,
                graphs,
                pairs,
                max_level: levels,
                preservation_graphs: graphs.min(20),
                max_vertices,
                seed,
                ..VerifyConfig::default()
            };
            let report = run_verify(&cfg);
            print!("{}", report.render());
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Generate { vertices, arcs, criteria, max_cost, seed, grid, out } => {
            let g = match grid {
                Some(spec) => {
                    let Some((w, h)) =
                        spec.split_once('x').and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    else {
                        return Ok(usage_error(format!("invalid --grid '{spec}' (expected WxH)")));
                    };
                    generate_grid(w, h, 10, seed)?
                }
                None => generate_random_graph(vertices, arcs, criteria, max_cost, seed)?,
            };
            for p in write_dimacs(&g, &out)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        // downstream pipe closed (e.g. `| head`)
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
