//! Tooling around `hmls_core`: DIMACS ingestion, synthetic graphs, an
//! independent Pareto oracle, and the benchmark / verification harnesses
//! behind the `hmls` binary.

pub mod bench;
pub mod dimacs;
pub mod generate;
pub mod oracle;
pub mod verify;

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use hmls_core::cover::format::{read_hierarchy, write_hierarchy};
use hmls_core::{FormatError, HierarchicalCover};

pub fn save_hierarchy(h: &HierarchicalCover, path: &Path) -> Result<(), FormatError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_hierarchy(h, &mut w)?;
    std::io::Write::flush(&mut w)?;
    Ok(())
}

pub fn load_hierarchy(path: &Path) -> Result<HierarchicalCover, FormatError> {
    read_hierarchy(BufReader::new(File::open(path)?))
}

/// Parses a level list: `5`, `0..10` (inclusive) or `0,2,4`.
pub fn parse_levels(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid level list '{s}' (expected N, A..B or A,B,C)");
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}
