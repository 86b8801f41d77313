use crate::cost::{weakly_dominates, CostVector};

/// Set of mutually non-weakly-dominated cost vectors, each with a payload.
#[derive(Debug, Clone)]
pub struct ParetoSet<P> {
    entries: Vec<(CostVector, P)>,
}

impl<P> Default for ParetoSet<P> {
    fn default() -> Self {
        ParetoSet { entries: Vec::new() }
    }
}

impl<P> ParetoSet<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(CostVector, P)> {
        self.entries.iter()
    }

    pub fn costs(&self) -> impl Iterator<Item = &CostVector> + '_ {
        self.entries.iter().map(|(c, _)| c)
    }

    /// True if some member weakly dominates `cost`.
    pub fn covers(&self, cost: &CostVector) -> bool {
        self.entries.iter().any(|(c, _)| weakly_dominates(c, cost))
    }

    /// Inserts `cost` unless a member weakly dominates it; members weakly
    /// dominated by `cost` are removed. Returns whether it was inserted.
    pub fn insert(&mut self, cost: CostVector, payload: P) -> bool {
        if self.covers(&cost) {
            return false;
        }
        self.entries.retain(|(c, _)| !weakly_dominates(&cost, c));
        self.entries.push((cost, payload));
        debug_assert!(self.invariant_holds());
        true
    }

    /// Cost vectors in ascending lexicographic order.
    pub fn sorted_costs(&self) -> Vec<CostVector> {
        let mut v: Vec<_> = self.costs().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn into_entries(self) -> Vec<(CostVector, P)> {
        self.entries
    }

    pub fn invariant_holds(&self) -> bool {
        for (i, (a, _)) in self.entries.iter().enumerate() {
            for (b, _) in &self.entries[i + 1..] {
                if weakly_dominates(a, b) || weakly_dominates(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Free-function form of [`ParetoSet::insert`].
pub fn pareto_insert<P>(set: &mut ParetoSet<P>, cost: CostVector, payload: P) -> bool {
    set.insert(cost, payload)
}

impl<P> FromIterator<(CostVector, P)> for ParetoSet<P> {
    fn from_iter<I: IntoIterator<Item = (CostVector, P)>>(iter: I) -> Self {
        let mut set = ParetoSet::new();
        for (c, p) in iter {
            set.insert(c, p);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(v: &[u64]) -> CostVector {
        CostVector::from_slice(v)
    }

    fn set_of(v: &[&[u64]]) -> ParetoSet<()> {
        v.iter().map(|c| (cv(c), ())).collect()
    }

    #[test]
    fn incomparable_vector_is_added() {
        let mut s = set_of(&[&[1, 5], &[5, 1]]);
        assert!(pareto_insert(&mut s, cv(&[2, 2]), ()));
        assert_eq!(s.sorted_costs(), vec![cv(&[1, 5]), cv(&[2, 2]), cv(&[5, 1])]);
    }

    #[test]
    fn equal_vector_is_rejected() {
        let mut s = set_of(&[&[1, 5]]);
        assert!(!pareto_insert(&mut s, cv(&[1, 5]), ()));
        assert_eq!(s.sorted_costs(), vec![cv(&[1, 5])]);
    }

    #[test]
    fn dominating_vector_replaces_everything() {
        let mut s = set_of(&[&[1, 5], &[5, 1], &[2, 2]]);
        assert!(pareto_insert(&mut s, cv(&[1, 1]), ()));
        assert_eq!(s.sorted_costs(), vec![cv(&[1, 1])]);
    }

    #[test]
    fn first_of_equal_costs_keeps_its_payload() {
        let mut s = ParetoSet::new();
        s.insert(cv(&[3, 3]), "first");
        s.insert(cv(&[3, 3]), "second");
        assert_eq!(s.iter().next().unwrap().1, "first");
    }

    proptest! {
        #[test]
        fn insertion_order_does_not_matter(
            q in 2usize..=4,
            raw in prop::collection::vec(prop::collection::vec(0u64..5, 4), 0..25),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let vs: Vec<CostVector> = raw.iter().map(|v| cv(&v[..q])).collect();
            let a: ParetoSet<()> = vs.iter().map(|c| (*c, ())).collect();
            let mut shuffled = vs.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let b: ParetoSet<()> = shuffled.iter().map(|c| (*c, ())).collect();
            prop_assert!(a.invariant_holds());
            prop_assert_eq!(a.sorted_costs(), b.sorted_costs());
        }
    }
}
