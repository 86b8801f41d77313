use std::io;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cost overflow in criterion {criterion}")]
pub struct CostOverflow {
    pub criterion: usize,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("criterion count {0} unsupported (expected 2..={max})", max = crate::cost::MAX_CRITERIA)]
    UnsupportedCriteria(usize),
    #[error("edge {edge}: vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { edge: usize, vertex: u32, vertex_count: usize },
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: u32 },
    #[error("edge {edge}: cost arity {found} does not match graph arity {expected}")]
    ArityMismatch { edge: usize, expected: usize, found: usize },
    #[error("criterion {criterion}: value {value} is negative for a minimized criterion")]
    NegativeCost { criterion: usize, value: i64 },
    #[error("criterion {criterion}: value {value} exceeds the 32-bit input range")]
    CostTooLarge { criterion: usize, value: i64 },
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("inconsistent hierarchy: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    InvalidVertex { vertex: u32, vertex_count: usize },
    #[error("query aborted: {0}")]
    Overflow(#[from] CostOverflow),
    #[error("query exceeded its time limit")]
    TimeLimit,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("not a hierarchy file (bad magic)")]
    BadMagic,
    #[error("unsupported hierarchy format version {0}")]
    UnsupportedVersion(u32),
    #[error("corrupt hierarchy file: {0}")]
    Corrupt(String),
    #[error("invalid graph in hierarchy file: {0}")]
    Graph(#[from] GraphError),
}
