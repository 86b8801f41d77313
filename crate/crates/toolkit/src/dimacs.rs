//! DIMACS shortest-path (`.gr`) reading and writing.
//!
//! A multicriteria graph is stored as one `.gr` file per criterion, all
//! listing the same arcs in the same order (the challenge's `-d` / `-t`
//! convention). Files may be gzip-compressed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;
use hmls_core::{CostVector, Edge, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}: missing 'p sp' header")]
    MissingHeader { path: PathBuf },
    #[error("header mismatch: {first} declares {a:?}, {other} declares {b:?}")]
    HeaderMismatch { first: PathBuf, other: PathBuf, a: (usize, usize), b: (usize, usize) },
    #[error("{path}: arc {index} is ({got_u},{got_v}) but the first file has ({u},{v})")]
    ArcMismatch { path: PathBuf, index: usize, u: u32, v: u32, got_u: u32, got_v: u32 },
    #[error("{path}: header declares {declared} arcs, file has {found}")]
    ArcCount { path: PathBuf, declared: usize, found: usize },
    #[error("no input files")]
    NoFiles,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One `.gr` file per criterion, in criterion order.
#[derive(Debug, Clone)]
pub struct DimacsSource {
    pub files: Vec<PathBuf>,
}

impl DimacsSource {
    pub fn new<P: AsRef<Path>>(files: &[P]) -> Self {
        DimacsSource { files: files.iter().map(|p| p.as_ref().to_path_buf()).collect() }
    }
}

#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Self-loop arcs present in the input and dropped.
    pub dropped_self_loops: usize,
}

struct GrFile {
    vertices: usize,
    arcs: Vec<(u32, u32, i64)>,
}

fn open(path: &Path) -> Result<Box<dyn BufRead>, DimacsError> {
    let io_err = |source| DimacsError::Io { path: path.to_path_buf(), source };
    let mut f = BufReader::new(File::open(path).map_err(io_err)?);
    let gz = f.fill_buf().map_err(io_err)?.starts_with(&[0x1f, 0x8b]);
    Ok(if gz { Box::new(BufReader::new(MultiGzDecoder::new(f))) } else { Box::new(f) })
}

fn parse_gr<R: BufRead>(path: &Path, reader: R) -> Result<GrFile, DimacsError> {
    let perr = |line: usize, msg: String| DimacsError::Parse { path: path.to_path_buf(), line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| DimacsError::Io { path: path.to_path_buf(), source })?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(perr(lineno, "duplicate 'p' line".into()));
                }
                let kind = parts.next();
                let n = parts.next().and_then(|t| t.parse().ok());
                let m = parts.next().and_then(|t| t.parse().ok());
                match (kind, n, m) {
                    (Some("sp"), Some(n), Some(m)) => {
                        header = Some((n, m));
                        arcs.reserve(m);
                    }
                    _ => return Err(perr(lineno, format!("malformed problem line '{line}'"))),
                }
            }
            Some("a") => {
                let Some((n, _)) = header else {
                    return Err(perr(lineno, "arc before 'p' line".into()));
                };
                let mut field = |name: &str| -> Result<i64, DimacsError> {
                    parts
                        .next()
                        .and_then(|t| t.parse::<i64>().ok())
                        .ok_or_else(|| perr(lineno, format!("bad or missing {name}")))
                };
                let (u, v, w) = (field("tail")?, field("head")?, field("weight")?);
                for id in [u, v] {
                    if id < 1 || id as usize > n {
                        return Err(perr(lineno, format!("vertex id {id} out of range 1..={n}")));
                    }
                }
                arcs.push(((u - 1) as u32, (v - 1) as u32, w));
            }
            Some(other) => return Err(perr(lineno, format!("unknown line type '{other}'"))),
        }
    }
    let (vertices, declared) =
        header.ok_or_else(|| DimacsError::MissingHeader { path: path.to_path_buf() })?;
    if declared != arcs.len() {
        return Err(DimacsError::ArcCount { path: path.to_path_buf(), declared, found: arcs.len() });
    }
    Ok(GrFile { vertices, arcs })
}

/// Reads one graph from parallel per-criterion readers.
pub fn load_dimacs_readers<R: Read>(inputs: Vec<(PathBuf, R)>) -> Result<LoadedGraph, DimacsError> {
    let parsed = inputs
        .into_iter()
        .map(|(p, r)| parse_gr(&p, BufReader::new(r)).map(|g| (p, g)))
        .collect::<Result<Vec<_>, _>>()?;
    combine(parsed)
}

pub fn load_dimacs(src: &DimacsSource) -> Result<LoadedGraph, DimacsError> {
    let parsed = src
        .files
        .iter()
        .map(|p| parse_gr(p, open(p)?).map(|g| (p.clone(), g)))
        .collect::<Result<Vec<_>, _>>()?;
    combine(parsed)
}

fn combine(parsed: Vec<(PathBuf, GrFile)>) -> Result<LoadedGraph, DimacsError> {
    let Some((first_path, first)) = parsed.first() else {
        return Err(DimacsError::NoFiles);
    };
    let q = parsed.len();
    let shape = |g: &GrFile| (g.vertices, g.arcs.len());
    for (p, g) in &parsed[1..] {
        if shape(g) != shape(first) {
            return Err(DimacsError::HeaderMismatch {
                first: first_path.clone(),
                other: p.clone(),
                a: shape(first),
                b: shape(g),
            });
        }
        for (index, (a, b)) in first.arcs.iter().zip(&g.arcs).enumerate() {
            if (a.0, a.1) != (b.0, b.1) {
                return Err(DimacsError::ArcMismatch {
                    path: p.clone(),
                    index,
                    u: a.0 + 1,
                    v: a.1 + 1,
                    got_u: b.0 + 1,
                    got_v: b.1 + 1,
                });
            }
        }
    }

    let mut columns = Vec::with_capacity(q);
    for (criterion, (_, g)) in parsed.iter().enumerate() {
        let raw: Vec<i64> = g.arcs.iter().map(|a| a.2).collect();
        columns.push(hmls_core::graph::normalize_criterion(criterion, &raw, hmls_core::Sense::Minimize)?);
    }

    let mut edges = Vec::with_capacity(first.arcs.len());
    let mut dropped = 0;
    let mut values = vec![0u64; q];
    for (k, &(u, v, _)) in first.arcs.iter().enumerate() {
        if u == v {
            dropped += 1;
            continue;
        }
        for (j, col) in columns.iter().enumerate() {
            values[j] = col[k];
        }
        edges.push(Edge { from: u, to: v, cost: CostVector::from_slice(&values) });
    }
    if dropped > 0 {
        log::warn!("dropped {dropped} self-loop arcs");
    }
    let graph = Graph::new(first.vertices, q, edges)?;
    Ok(LoadedGraph { graph, dropped_self_loops: dropped })
}

/// Writes criterion `criterion` of `g` as a `.gr` file.
pub fn write_gr<W: Write>(g: &Graph, criterion: usize, mut w: W) -> io::Result<()> {
    writeln!(w, "c criterion {}", criterion + 1)?;
    writeln!(w, "p sp {} {}", g.vertex_count(), g.edge_count())?;
    for e in g.edges() {
        writeln!(w, "a {} {} {}", e.from + 1, e.to + 1, e.cost.get(criterion))?;
    }
    w.flush()
}

/// Writes `<prefix>.<criterion>.gr` for every criterion; returns the paths.
pub fn write_dimacs(g: &Graph, prefix: &Path) -> io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for c in 0..g.criteria() {
        let mut name = prefix.as_os_str().to_owned();
        name.push(format!(".{}.gr", c + 1));
        let path = PathBuf::from(name);
        write_gr(g, c, BufWriter::new(File::create(&path)?))?;
        paths.push(path);
    }
    Ok(paths)
}
