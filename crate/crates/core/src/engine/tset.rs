//! t-discarding: dominance checks on cost vectors with the first criterion
//! dropped. Sound only while labels are settled in lexicographic order,
//! since every settled label then has a first component no larger than
//! any later candidate's.

use crate::cost::{weakly_dominates, CostVector};

use super::search::Label;

/// Pareto set of truncated costs of the labels settled at one vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TSet {
    entries: Vec<CostVector>,
}

impl TSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CostVector] {
        &self.entries
    }

    /// True iff some member weakly dominates the truncation of `cost`.
    #[inline]
    pub fn t_discards(&self, cost: &CostVector) -> bool {
        let tail = &cost.as_slice()[1..];
        self.entries.iter().any(|t| t.as_slice().iter().zip(tail).all(|(a, b)| a <= b))
    }

    /// Adds the truncation of a settled label's cost, keeping the set Pareto.
    pub fn update(&mut self, cost: &CostVector) {
        if self.t_discards(cost) {
            return;
        }
        let t = cost.truncate();
        self.entries.retain(|e| !weakly_dominates(&t, e));
        self.entries.push(t);
    }
}

pub fn t_discards(tset: &TSet, candidate: &Label) -> bool {
    tset.t_discards(&candidate.cost)
}

pub fn tset_update(tset: &mut TSet, settled: &Label) {
    tset.update(&settled.cost)
}
