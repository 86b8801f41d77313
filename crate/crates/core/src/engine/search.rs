//! Label-setting loop shared by every search variant.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::cost::{weakly_dominates, CostVector};
use crate::error::QueryError;
use crate::graph::{EdgeId, Graph, VertexId};

use super::tset::TSet;

pub type LabelId = u32;

const NO_PARENT: LabelId = LabelId::MAX;

/// Edge of a hierarchy level traversed to create a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub level: u8,
    pub edge: EdgeId,
}

/// A partial path: owning vertex, accumulated cost and the link to the
/// label it was expanded from.
#[derive(Debug, Clone, Copy)]
pub struct Label {
    pub vertex: VertexId,
    pub cost: CostVector,
    parent: LabelId,
    via: EdgeRef,
    alive: bool,
}

impl Label {
    pub fn parent(&self) -> Option<LabelId> {
        (self.parent != NO_PARENT).then_some(self.parent)
    }

    pub fn via(&self) -> Option<EdgeRef> {
        (self.parent != NO_PARENT).then_some(self.via)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// How candidates are checked against labels already at their vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Weak dominance against `temp ∪ perm`.
    Full,
    /// t-discarding against the tset, then weak dominance against `temp`.
    TDiscard,
    /// No checks; every candidate is kept.
    Off,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchCounters {
    /// Labels produced by edge expansion, before any discard.
    pub created: u64,
    /// Labels that survived every check and entered a temporary set.
    pub inserted: u64,
    pub settled: u64,
    pub t_discarded: u64,
    pub bound_pruned: u64,
    /// Popped labels whose cost preceded the previously settled one.
    pub lex_violations: u64,
}

/// Per-query label storage: arena, temporary / permanent sets, tsets and
/// the lexicographic queue. Labels are never freed individually.
pub struct SearchSpace {
    pub direction: Direction,
    labels: Vec<Label>,
    temp: Vec<Vec<(CostVector, LabelId)>>,
    perm: Vec<Vec<(CostVector, LabelId)>>,
    tsets: Vec<TSet>,
    queue: BinaryHeap<Reverse<(CostVector, LabelId)>>,
    pub counters: SearchCounters,
    last_settled: Option<CostVector>,
}

/// Where a vertex expands to: graph, level tag and edge list.
pub struct Expansion<'a> {
    pub graph: &'a Graph,
    pub level: usize,
    pub edges: &'a [EdgeId],
}

impl SearchSpace {
    pub fn new(vertex_count: usize, direction: Direction) -> Self {
        SearchSpace {
            direction,
            labels: Vec::new(),
            temp: vec![Vec::new(); vertex_count],
            perm: vec![Vec::new(); vertex_count],
            tsets: vec![TSet::default(); vertex_count],
            queue: BinaryHeap::new(),
            counters: SearchCounters::default(),
            last_settled: None,
        }
    }

    #[inline]
    pub fn label(&self, id: LabelId) -> &Label {
        &self.labels[id as usize]
    }

    #[cfg(test)]
    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    /// Settled labels of `v`.
    pub fn perm(&self, v: VertexId) -> &[(CostVector, LabelId)] {
        &self.perm[v as usize]
    }

    #[cfg(test)]
    pub fn temp(&self, v: VertexId) -> &[(CostVector, LabelId)] {
        &self.temp[v as usize]
    }

    #[cfg(test)]
    pub fn tset(&self, v: VertexId) -> &TSet {
        &self.tsets[v as usize]
    }

    /// Seeds the search with a zero-cost root label at `v`.
    pub fn push_root(&mut self, v: VertexId, criteria: usize) -> LabelId {
        let cost = CostVector::zero(criteria);
        let id = self.alloc(v, cost, NO_PARENT, EdgeRef { level: 0, edge: 0 });
        self.temp[v as usize].push((cost, id));
        self.queue.push(Reverse((cost, id)));
        id
    }

    fn alloc(&mut self, vertex: VertexId, cost: CostVector, parent: LabelId, via: EdgeRef) -> LabelId {
        let id = self.labels.len() as LabelId;
        self.labels.push(Label { vertex, cost, parent, via, alive: true });
        id
    }

    /// Runs the label-setting loop until the queue is empty.
    ///
    /// `expand(v)` names the edges to relax from `v` (or `None` to settle
    /// without expanding); `on_settle` sees every label moved to `perm`;
    /// `prune` may reject a candidate `(vertex, cost)` before insertion.
    pub fn run<'a, X, S, P>(
        &mut self,
        dominance: Dominance,
        deadline: Option<Instant>,
        mut expand: X,
        mut on_settle: S,
        mut prune: P,
    ) -> Result<(), QueryError>
    where
        X: FnMut(VertexId) -> Option<Expansion<'a>>,
        S: FnMut(&SearchSpace, LabelId) -> Result<(), QueryError>,
        P: FnMut(VertexId, &CostVector) -> bool,
    {
        let forward = self.direction == Direction::Forward;
        let mut pops: u32 = 0;
        while let Some(Reverse((cost, id))) = self.queue.pop() {
            if !self.labels[id as usize].alive {
                continue;
            }
            pops = pops.wrapping_add(1);
            if pops.is_multiple_of(1024) {
                if let Some(deadline) = deadline {
                    if Instant::now() >= deadline {
                        return Err(QueryError::TimeLimit);
                    }
                }
            }
            if let Some(prev) = self.last_settled {
                if cost < prev {
                    self.counters.lex_violations += 1;
                    debug_assert!(false, "label {cost:?} settled after {prev:?}");
                }
            }
            self.last_settled = Some(cost);

            let v = self.labels[id as usize].vertex;
            let temp = &mut self.temp[v as usize];
            if let Some(pos) = temp.iter().position(|&(_, l)| l == id) {
                temp.swap_remove(pos);
            }
            self.perm[v as usize].push((cost, id));
            if dominance == Dominance::TDiscard {
                self.tsets[v as usize].update(&cost);
            }
            self.counters.settled += 1;
            on_settle(self, id)?;

            let Some(exp) = expand(v) else { continue };
            for &e in exp.edges {
                let edge = exp.graph.edge(e);
                let head = if forward { edge.to } else { edge.from };
                let new_cost = cost.checked_add(&edge.cost)?;
                self.counters.created += 1;

                if dominance == Dominance::TDiscard && self.tsets[head as usize].t_discards(&new_cost) {
                    self.counters.t_discarded += 1;
                    continue;
                }
                if prune(head, &new_cost) {
                    self.counters.bound_pruned += 1;
                    continue;
                }
                let h = head as usize;
                match dominance {
                    Dominance::Off => {}
                    Dominance::Full | Dominance::TDiscard => {
                        if self.temp[h].iter().any(|(c, _)| weakly_dominates(c, &new_cost)) {
                            continue;
                        }
                        if dominance == Dominance::Full
                            && self.perm[h].iter().any(|(c, _)| weakly_dominates(c, &new_cost))
                        {
                            continue;
                        }
                        let labels = &mut self.labels;
                        self.temp[h].retain(|(c, l)| {
                            let keep = !weakly_dominates(&new_cost, c);
                            if !keep {
                                labels[*l as usize].alive = false;
                            }
                            keep
                        });
                    }
                }
                let via = EdgeRef { level: exp.level as u8, edge: e };
                let nid = self.alloc(head, new_cost, id, via);
                self.temp[h].push((new_cost, nid));
                self.queue.push(Reverse((new_cost, nid)));
                self.counters.inserted += 1;
            }
        }
        Ok(())
    }

    /// Traversed edges from the root to `id`, root side first.
    pub fn edge_trail(&self, id: LabelId) -> Vec<EdgeRef> {
        let mut trail = Vec::new();
        let mut cur = self.label(id);
        while let Some(via) = cur.via() {
            trail.push(via);
            cur = self.label(cur.parent);
        }
        trail.reverse();
        trail
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::pareto::ParetoSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(seed: u64, n: usize, m: usize, q: usize) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        while edges.len() < m {
            let (a, b) = (rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32);
            if a != b {
                let c: Vec<u64> = (0..q).map(|_| rng.gen_range(1..8)).collect();
                edges.push(Edge { from: a, to: b, cost: CostVector::from_slice(&c) });
            }
        }
        Graph::new(n, q, edges).unwrap()
    }

    fn run(g: &Graph, dominance: Dominance) -> SearchSpace {
        let mut sp = SearchSpace::new(g.vertex_count(), Direction::Forward);
        sp.push_root(0, g.criteria());
        sp.run(
            dominance,
            None,
            |v| Some(Expansion { graph: g, level: 0, edges: g.out_edges(v) }),
            |_, _| Ok(()),
            |_, _| false,
        )
        .unwrap();
        sp
    }

    #[test]
    fn tsets_mirror_settled_labels() {
        for seed in 0..20 {
            let g = random_graph(seed, 40, 160, 2 + (seed as usize % 2));
            let sp = run(&g, Dominance::TDiscard);
            assert_eq!(sp.counters.lex_violations, 0);
            for v in 0..g.vertex_count() as VertexId {
                assert!(sp.temp(v).is_empty());
                let expected: ParetoSet<()> = sp.perm(v).iter().map(|(c, _)| (c.truncate(), ())).collect();
                let mut got = sp.tset(v).entries().to_vec();
                got.sort();
                assert_eq!(got, expected.sorted_costs());
            }
        }
    }

    #[test]
    fn t_discarding_settles_the_same_labels_as_full_checks() {
        for seed in 0..20 {
            let g = random_graph(100 + seed, 40, 160, 3);
            let full = run(&g, Dominance::Full);
            let td = run(&g, Dominance::TDiscard);
            for v in 0..g.vertex_count() as VertexId {
                let costs = |sp: &SearchSpace| {
                    let mut c: Vec<_> = sp.perm(v).iter().map(|(c, _)| *c).collect();
                    c.sort();
                    c
                };
                assert_eq!(costs(&full), costs(&td));
            }
            assert!(td.label_count() >= td.counters.inserted as usize);
        }
    }

    #[test]
    fn parent_links_reproduce_costs() {
        let g = random_graph(7, 30, 120, 2);
        let sp = run(&g, Dominance::Full);
        for v in 0..g.vertex_count() as VertexId {
            for &(cost, id) in sp.perm(v) {
                let mut sum = CostVector::zero(2);
                for r in sp.edge_trail(id) {
                    sum = sum.checked_add(&g.edge(r.edge).cost).unwrap();
                }
                assert_eq!(sum, cost);
            }
        }
    }
}
