//! Directed multigraph with per-edge cost vectors and CSR adjacency in
//! both directions.

use crate::cost::{CostVector, MAX_CRITERIA};
use crate::error::GraphError;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub cost: CostVector,
}

/// Optimization sense of a criterion as it appeared in the source data.
/// Costs inside a [`Graph`] are always minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    criteria: usize,
    senses: Vec<Sense>,
    edges: Vec<Edge>,
    out_offsets: Vec<u32>,
    out_list: Vec<EdgeId>,
    in_offsets: Vec<u32>,
    in_list: Vec<EdgeId>,
}

impl Graph {
    /// Builds a graph from an edge list. Edge ids are positions in `edges`.
    pub fn new(vertex_count: usize, criteria: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if !(2..=MAX_CRITERIA).contains(&criteria) {
            return Err(GraphError::UnsupportedCriteria(criteria));
        }
        if vertex_count > u32::MAX as usize || edges.len() >= u32::MAX as usize {
            return Err(GraphError::TooLarge(format!("{vertex_count} vertices, {} edges", edges.len())));
        }
        for (i, e) in edges.iter().enumerate() {
            for v in [e.from, e.to] {
                if v as usize >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { edge: i, vertex: v, vertex_count });
                }
            }
            if e.from == e.to {
                return Err(GraphError::SelfLoop { edge: i, vertex: e.from });
            }
            if e.cost.arity() != criteria {
                return Err(GraphError::ArityMismatch { edge: i, expected: criteria, found: e.cost.arity() });
            }
        }
        let (out_offsets, out_list) = csr(vertex_count, edges.iter().map(|e| e.from));
        let (in_offsets, in_list) = csr(vertex_count, edges.iter().map(|e| e.to));
        Ok(Graph {
            vertex_count,
            criteria,
            senses: vec![Sense::Minimize; criteria],
            edges,
            out_offsets,
            out_list,
            in_offsets,
            in_list,
        })
    }

    pub fn empty(vertex_count: usize, criteria: usize) -> Result<Self, GraphError> {
        Graph::new(vertex_count, criteria, Vec::new())
    }

    pub fn with_senses(mut self, senses: Vec<Sense>) -> Self {
        assert_eq!(senses.len(), self.criteria);
        self.senses = senses;
        self
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn criteria(&self) -> usize {
        self.criteria
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edge ids of `v` (δ+), in ascending id order.
    #[inline]
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.out_list[self.out_offsets[v] as usize..self.out_offsets[v + 1] as usize]
    }

    /// Incoming edge ids of `v` (δ−), in ascending id order.
    #[inline]
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.in_list[self.in_offsets[v] as usize..self.in_offsets[v + 1] as usize]
    }

    /// In-degree plus out-degree; parallel edges count individually.
    pub fn degree(&self, v: VertexId) -> usize {
        self.out_edges(v).len() + self.in_edges(v).len()
    }
}

fn csr(n: usize, keys: impl Iterator<Item = VertexId> + Clone) -> (Vec<u32>, Vec<EdgeId>) {
    let mut offsets = vec![0u32; n + 1];
    for k in keys.clone() {
        offsets[k as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut list = vec![0; offsets[n] as usize];
    for (id, k) in keys.enumerate() {
        let slot = &mut fill[k as usize];
        list[*slot as usize] = id as EdgeId;
        *slot += 1;
    }
    (offsets, list)
}

/// Maps one criterion's raw values onto non-negative minimized costs.
///
/// Minimized values must already be non-negative. Maximized values are
/// negated and shifted so that the largest raw value maps to zero.
pub fn normalize_criterion(criterion: usize, raw: &[i64], sense: Sense) -> Result<Vec<u64>, GraphError> {
    let out: Vec<i64> = match sense {
        Sense::Minimize => raw.to_vec(),
        Sense::Maximize => {
            let max = raw.iter().copied().max().unwrap_or(0);
            raw.iter().map(|v| max - v).collect()
        }
    };
    out.into_iter()
        .map(|value| {
            if value < 0 {
                Err(GraphError::NegativeCost { criterion, value })
            } else if value > u32::MAX as i64 {
                Err(GraphError::CostTooLarge { criterion, value })
            } else {
                Ok(value as u64)
            }
        })
        .collect()
}
