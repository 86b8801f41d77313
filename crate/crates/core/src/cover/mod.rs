//! Nested 2-path-cover hierarchy.
//!
//! Level 0 is the input graph. Level `t + 1` keeps the LR-deg cover of
//! level `t` and replaces every eliminated vertex by pairwise compositions
//! of its incoming and outgoing edges, so level `t` is a `2^t`-path cover
//! of the base graph. Vertex ids are global on every level; vertices that
//! are not members of a level simply have no edges there.

mod check;
mod compose;
pub mod format;
mod select;

use std::io;
use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::cost::CostVector;
use crate::error::GraphError;
use crate::graph::{EdgeId, Graph, VertexId};

pub use check::{check_cover_invariants, CoverViolation};
pub use compose::{build_cover_edges, build_cover_edges_filtered, CoverEdges};
pub use select::{all_vertices, lr_deg_select};

/// Highest level count accepted by [`build_hierarchy`]. Keeps every cover
/// edge cost below 2^62.
pub const MAX_LEVELS: usize = 30;

/// Origin of a cover edge at level `t`, as edge indices into level `t − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Copy of an edge between two cover vertices.
    Base(EdgeId),
    /// Incoming then outgoing edge of an eliminated vertex.
    Composed(EdgeId, EdgeId),
}

#[derive(Debug, Clone)]
pub struct CoverLevel {
    level: usize,
    members: FixedBitSet,
    graph: Graph,
    provenance: Vec<Provenance>,
}

impl CoverLevel {
    /// Assembles a level from parts; only shape is validated.
    pub fn from_parts(
        level: usize,
        members: FixedBitSet,
        graph: Graph,
        provenance: Vec<Provenance>,
    ) -> Result<Self, GraphError> {
        if level == 0 {
            return Err(GraphError::Inconsistent("cover levels start at 1".into()));
        }
        if provenance.len() != graph.edge_count() {
            return Err(GraphError::Inconsistent(format!(
                "level {level}: {} provenance records for {} edges",
                provenance.len(),
                graph.edge_count()
            )));
        }
        if members.len() != graph.vertex_count() {
            return Err(GraphError::Inconsistent(format!("level {level}: membership size mismatch")));
        }
        Ok(CoverLevel { level, members, graph, provenance })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn provenance(&self, edge: EdgeId) -> Provenance {
        self.provenance[edge as usize]
    }

    pub fn provenances(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn vertex_count(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn into_parts(self) -> (usize, FixedBitSet, Graph, Vec<Provenance>) {
        (self.level, self.members, self.graph, self.provenance)
    }
}

#[derive(Debug, Clone)]
pub struct HierarchicalCover {
    base: Graph,
    levels: Vec<CoverLevel>,
    top_level: Vec<u8>,
}

impl HierarchicalCover {
    /// Assembles a hierarchy; `levels[i]` must be level `i + 1`.
    pub fn from_parts(base: Graph, levels: Vec<CoverLevel>) -> Result<Self, GraphError> {
        let n = base.vertex_count();
        for (i, l) in levels.iter().enumerate() {
            if l.level != i + 1 || l.graph.vertex_count() != n || l.graph.criteria() != base.criteria() {
                return Err(GraphError::Inconsistent(format!("level {} does not fit the hierarchy", i + 1)));
            }
        }
        let mut top_level = vec![0u8; n];
        for l in &levels {
            for v in l.members.ones() {
                top_level[v] = top_level[v].max(l.level as u8);
            }
        }
        Ok(HierarchicalCover { base, levels, top_level })
    }

    pub fn into_parts(self) -> (Graph, Vec<CoverLevel>) {
        (self.base, self.levels)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Number of cover levels above the base graph (𝒯).
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[CoverLevel] {
        &self.levels
    }

    /// Graph of level `t`; level 0 is the base graph.
    pub fn graph(&self, t: usize) -> &Graph {
        if t == 0 {
            &self.base
        } else {
            &self.levels[t - 1].graph
        }
    }

    pub fn cover_level(&self, t: usize) -> &CoverLevel {
        &self.levels[t - 1]
    }

    pub fn is_member(&self, t: usize, v: VertexId) -> bool {
        t == 0 || self.levels[t - 1].members.contains(v as usize)
    }

    /// Highest level containing `v`.
    #[inline]
    pub fn top_level(&self, v: VertexId) -> usize {
        self.top_level[v as usize] as usize
    }

    /// View over every built level.
    pub fn view(&self) -> HierarchyView<'_> {
        HierarchyView { cover: self, top: self.level_count() }
    }

    /// View that treats level `min(top, 𝒯)` as the top.
    pub fn truncated(&self, top: usize) -> HierarchyView<'_> {
        HierarchyView { cover: self, top: top.min(self.level_count()) }
    }

    /// Expands a cover edge down to the base edges it stands for.
    pub fn unpack_edge(&self, level: usize, edge: EdgeId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        self.unpack_into(level, edge, &mut out);
        out
    }

    /// Appends the base edges of `(level, edge)` to `out`.
    pub fn unpack_into(&self, level: usize, edge: EdgeId, out: &mut Vec<EdgeId>) {
        // right-to-left stack so edges come out in path order
        let mut stack = vec![(level, edge)];
        while let Some((t, e)) = stack.pop() {
            if t == 0 {
                out.push(e);
                continue;
            }
            match self.levels[t - 1].provenance[e as usize] {
                Provenance::Base(below) => stack.push((t - 1, below)),
                Provenance::Composed(ein, eout) => {
                    stack.push((t - 1, eout));
                    stack.push((t - 1, ein));
                }
            }
        }
    }
}

/// Top-level lookup for a free-standing call.
pub fn top_level(h: &HierarchicalCover, v: VertexId) -> usize {
    h.top_level(v)
}

pub fn unpack_edge(h: &HierarchicalCover, level: usize, edge: EdgeId) -> Vec<EdgeId> {
    h.unpack_edge(level, edge)
}

/// A hierarchy seen with its top level capped, without rebuilding.
#[derive(Debug, Clone, Copy)]
pub struct HierarchyView<'a> {
    cover: &'a HierarchicalCover,
    top: usize,
}

impl<'a> HierarchyView<'a> {
    pub fn cover(&self) -> &'a HierarchicalCover {
        self.cover
    }

    pub fn base(&self) -> &'a Graph {
        &self.cover.base
    }

    /// Effective top level 𝒯 of this view.
    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn top_level(&self, v: VertexId) -> usize {
        self.cover.top_level(v).min(self.top)
    }

    #[inline]
    pub fn graph(&self, t: usize) -> &'a Graph {
        self.cover.graph(t)
    }

    #[inline]
    pub fn is_top(&self, v: VertexId) -> bool {
        self.top_level(v) == self.top
    }

    pub fn vertex_count(&self) -> usize {
        self.cover.base.vertex_count()
    }

    pub fn criteria(&self) -> usize {
        self.cover.base.criteria()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelStats {
    pub level: usize,
    pub k: u64,
    pub vertices: usize,
    pub edges: usize,
    pub seconds: f64,
    pub cumulative_seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoverStats {
    pub rows: Vec<LevelStats>,
}

impl CoverStats {
    pub const CSV_HEADER: &'static str = "level,k,vertices,edges,seconds,cumulative_seconds";

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::CSV_HEADER)?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{:.6},{:.6}",
                r.level, r.k, r.vertices, r.edges, r.seconds, r.cumulative_seconds
            )?;
        }
        Ok(())
    }

    pub fn total_seconds(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.cumulative_seconds)
    }
}

/// Builds `levels` cover levels above `base`, bottom-up.
pub fn build_hierarchy(base: Graph, levels: usize) -> (HierarchicalCover, CoverStats) {
    build_hierarchy_filtered(base, levels, |_, _, _| true)
}

/// As [`build_hierarchy`], with a pair-admissibility predicate
/// `(level below, incoming edge, outgoing edge)` applied during composition.
pub fn build_hierarchy_filtered<F>(
    base: Graph,
    levels: usize,
    admissible: F,
) -> (HierarchicalCover, CoverStats)
where
    F: Fn(usize, EdgeId, EdgeId) -> bool,
{
    assert!(levels <= MAX_LEVELS, "at most {MAX_LEVELS} levels are supported");
    let n = base.vertex_count();
    let q = base.criteria();
    let mut stats = CoverStats::default();
    stats.rows.push(LevelStats {
        level: 0,
        k: 1,
        vertices: n,
        edges: base.edge_count(),
        seconds: 0.0,
        cumulative_seconds: 0.0,
    });

    let mut built: Vec<CoverLevel> = Vec::with_capacity(levels);
    let mut cumulative = 0.0;
    let all = all_vertices(n);
    for t in 1..=levels {
        let started = Instant::now();
        let (below, below_members) = match built.last() {
            Some(l) => (&l.graph, &l.members),
            None => (&base, &all),
        };
        let cover = lr_deg_select(below, below_members);
        let ce = build_cover_edges_filtered(below, below_members, &cover, |a, b| admissible(t - 1, a, b));
        let graph = Graph::new(n, q, ce.edges).expect("cover edges are valid by construction");
        let level = CoverLevel { level: t, members: cover, graph, provenance: ce.provenance };
        let seconds = started.elapsed().as_secs_f64();
        cumulative += seconds;
        stats.rows.push(LevelStats {
            level: t,
            k: 1u64 << t,
            vertices: level.vertex_count(),
            edges: level.graph.edge_count(),
            seconds,
            cumulative_seconds: cumulative,
        });
        built.push(level);
    }
    let h = HierarchicalCover::from_parts(base, built).expect("levels built in order");
    (h, stats)
}

/// Sum of base edge costs along `edges`.
pub fn path_cost(g: &Graph, edges: &[EdgeId]) -> Option<CostVector> {
    let mut c = CostVector::zero(g.criteria());
    for &e in edges {
        c = c.checked_add(&g.edge(e).cost).ok()?;
    }
    Some(c)
}
