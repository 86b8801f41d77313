//! Cost vectors and the dominance / lexicographic algebra over them.
//!
//! Every criterion is minimized internally. Values are non-negative
//! fixed-point integers; edge costs are limited to `u32` at ingestion and
//! accumulated in `u64`, so a path would need more than four billion
//! maximal edges before [`CostVector::checked_add`] reports an overflow.

use std::cmp::Ordering;
use std::fmt;

use crate::error::CostOverflow;

/// Largest supported number of criteria per graph.
pub const MAX_CRITERIA: usize = 4;

/// Fixed-arity tuple of criterion values.
///
/// Stored inline; unused slots are always zero, so the derived ordering is
/// the lexicographic order over the used components.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CostVector {
    values: [u64; MAX_CRITERIA],
    len: u8,
}

impl CostVector {
    /// All-zero vector with `q` criteria.
    pub fn zero(q: usize) -> Self {
        assert!((1..=MAX_CRITERIA).contains(&q), "criterion count {q} outside 1..={MAX_CRITERIA}");
        CostVector { values: [0; MAX_CRITERIA], len: q as u8 }
    }

    pub fn from_slice(values: &[u64]) -> Self {
        let mut v = CostVector::zero(values.len());
        v.values[..values.len()].copy_from_slice(values);
        v
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn as_slice(&self) -> &[u64] {
        &self.values[..self.len as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.as_slice()[i]
    }

    pub fn set(&mut self, i: usize, value: u64) {
        assert!(i < self.arity());
        self.values[i] = value;
    }

    /// Componentwise sum. Fails instead of wrapping.
    #[inline]
    pub fn checked_add(&self, other: &CostVector) -> Result<CostVector, CostOverflow> {
        check_arity(self, other);
        let mut out = *self;
        for i in 0..self.arity() {
            out.values[i] =
                self.values[i].checked_add(other.values[i]).ok_or(CostOverflow { criterion: i })?;
        }
        Ok(out)
    }

    /// Drops the first component. Used by t-discarding.
    pub fn truncate(&self) -> CostVector {
        assert!(self.arity() >= 2, "cannot truncate a single-criterion vector");
        CostVector::from_slice(&self.as_slice()[1..])
    }
}

impl fmt::Debug for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[inline]
fn check_arity(a: &CostVector, b: &CostVector) {
    assert_eq!(a.len, b.len, "cost vector arity mismatch: {a:?} vs {b:?}");
}

/// `a ⪯ b`: `a` is no worse than `b` in every criterion.
#[inline]
pub fn weakly_dominates(a: &CostVector, b: &CostVector) -> bool {
    check_arity(a, b);
    a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x <= y)
}

/// `a ≺ b`: weak dominance that is not mutual.
#[inline]
pub fn dominates(a: &CostVector, b: &CostVector) -> bool {
    weakly_dominates(a, b) && a != b
}

/// Reflexive lexicographic precedence: equal vectors precede each other.
#[inline]
pub fn lex_precedes(a: &CostVector, b: &CostVector) -> bool {
    check_arity(a, b);
    a.cmp(b) != Ordering::Greater
}

pub fn add_cost(a: &CostVector, b: &CostVector) -> Result<CostVector, CostOverflow> {
    a.checked_add(b)
}

/// Drops the first criterion of `c`.
pub fn truncate(c: &CostVector) -> CostVector {
    c.truncate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(v: &[u64]) -> CostVector {
        CostVector::from_slice(v)
    }

    #[test]
    fn weak_dominance_examples() {
        assert!(weakly_dominates(&cv(&[2, 3]), &cv(&[2, 5])));
        assert!(weakly_dominates(&cv(&[2, 3]), &cv(&[2, 3])));
        assert!(!weakly_dominates(&cv(&[2, 3]), &cv(&[3, 2])));
        assert!(!weakly_dominates(&cv(&[3, 2]), &cv(&[2, 3])));
    }

    #[test]
    fn dominance_examples() {
        assert!(!dominates(&cv(&[2, 3]), &cv(&[2, 3])));
        assert!(dominates(&cv(&[1, 1]), &cv(&[2, 2])));
        assert!(!dominates(&cv(&[1, 5]), &cv(&[2, 3])));
    }

    #[test]
    fn lex_examples() {
        assert!(lex_precedes(&cv(&[1, 9]), &cv(&[2, 0])));
        assert!(lex_precedes(&cv(&[2, 3]), &cv(&[2, 3])));
        assert!(!lex_precedes(&cv(&[2, 4]), &cv(&[2, 3])));
    }

    #[test]
    fn add_examples() {
        assert_eq!(add_cost(&cv(&[1, 2]), &cv(&[2, 1])).unwrap(), cv(&[3, 3]));
        assert_eq!(add_cost(&cv(&[0, 0]), &cv(&[5, 7])).unwrap(), cv(&[5, 7]));
        // s->a->d in the diamond fixture
        assert_eq!(add_cost(&cv(&[1, 3]), &cv(&[1, 1])).unwrap(), cv(&[2, 4]));
    }

    #[test]
    fn add_overflow_is_an_error() {
        let err = add_cost(&cv(&[1, u64::MAX]), &cv(&[1, 1])).unwrap_err();
        assert_eq!(err.criterion, 1);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate(&cv(&[5, 3, 2])), cv(&[3, 2]));
        assert_eq!(truncate(&cv(&[7, 0])), cv(&[0]));
        assert_eq!(truncate(&cv(&[1, 2])), cv(&[2]));
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn arity_mismatch_panics() {
        weakly_dominates(&cv(&[1, 2]), &cv(&[1, 2, 3]));
    }

    fn vec_pair() -> impl Strategy<Value = (CostVector, CostVector, CostVector)> {
        (2usize..=4).prop_flat_map(|q| {
            let one = prop::collection::vec(0u64..6, q).prop_map(|v| CostVector::from_slice(&v));
            (one.clone(), one.clone(), one)
        })
    }

    proptest! {
        #[test]
        fn weak_dominance_is_a_preorder((a, b, c) in vec_pair()) {
            prop_assert!(weakly_dominates(&a, &a));
            if weakly_dominates(&a, &b) && weakly_dominates(&b, &c) {
                prop_assert!(weakly_dominates(&a, &c));
            }
        }

        #[test]
        fn dominance_is_irreflexive_and_asymmetric((a, b, _c) in vec_pair()) {
            prop_assert!(!dominates(&a, &a));
            prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        }

        #[test]
        fn lex_order_is_total((a, b, _c) in vec_pair()) {
            prop_assert!(lex_precedes(&a, &b) || lex_precedes(&b, &a));
            prop_assert_eq!(lex_precedes(&a, &b) && lex_precedes(&b, &a), a == b);
        }

        #[test]
        fn dominating_vectors_come_first((a, b, _c) in vec_pair()) {
            if weakly_dominates(&a, &b) {
                prop_assert!(lex_precedes(&a, &b));
            }
        }
    }
}
