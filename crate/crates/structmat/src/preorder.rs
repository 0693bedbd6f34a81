//! Reflexive-transitive relations on `{1, ..., n}` and the operations the
//! structural matrix machinery needs: validation, closure and the block
//! composition that pairs with flattening block matrices.
//!
//! Indices are 1-based in every external format (JSON, error messages);
//! the Rust API is 0-based like the matrix code it feeds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreorderError {
    #[error("ground-set size must be positive")]
    EmptyGroundSet,
    #[error("pair ({0}, {1}) out of range for ground set {{1, ..., {2}}}")]
    PairOutOfRange(usize, usize, usize),
    #[error("relation is not reflexive: missing pair ({0}, {0})")]
    NotReflexive(usize),
    #[error("relation is not transitive: has ({0}, {1}) and ({1}, {2}) but not ({0}, {2})")]
    NotTransitive(usize, usize, usize),
}

/// An arbitrary binary relation on `{1, ..., n}`, stored as a dense boolean
/// table. No reflexivity or transitivity is assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    table: Vec<bool>,
}

impl Relation {
    /// The empty relation on a ground set of size `n`.
    pub fn empty(n: usize) -> Result<Self, PreorderError> {
        if n == 0 {
            return Err(PreorderError::EmptyGroundSet);
        }
        Ok(Relation {
            n,
            table: vec![false; n * n],
        })
    }

    /// Builds a relation from 1-based pairs, the external encoding.
    pub fn from_pairs_1based(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PreorderError> {
        let mut rel = Relation::empty(n)?;
        for &(i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(PreorderError::PairOutOfRange(i, j, n));
            }
            rel.insert(i - 1, j - 1);
        }
        Ok(rel)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based membership test.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.table[i * self.n + j]
    }

    /// 0-based insertion.
    pub fn insert(&mut self, i: usize, j: usize) {
        self.table[i * self.n + j] = true;
    }

    /// All pairs in the relation, 1-based and sorted, the external encoding.
    pub fn pairs_1based(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// First violated preorder axiom, if any.
    pub fn check_preorder(&self) -> Result<(), PreorderError> {
        for i in 0..self.n {
            if !self.contains(i, i) {
                return Err(PreorderError::NotReflexive(i + 1));
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.contains(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.contains(j, k) && !self.contains(i, k) {
                        return Err(PreorderError::NotTransitive(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Returns true iff the relation is reflexive and transitive.
pub fn validate(rel: &Relation) -> bool {
    rel.check_preorder().is_ok()
}

/// The smallest preorder containing `rel`: Warshall saturation plus the
/// diagonal.
pub fn closure(rel: &Relation) -> Preorder {
    let n = rel.n();
    let mut r = rel.clone();
    for i in 0..n {
        r.insert(i, i);
    }
    for k in 0..n {
        for i in 0..n {
            if r.contains(i, k) {
                for j in 0..n {
                    if r.contains(k, j) {
                        r.insert(i, j);
                    }
                }
            }
        }
    }
    Preorder(r)
}

/// A validated reflexive-transitive relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder(Relation);

impl Preorder {
    /// Validates a relation, rejecting it if any axiom fails.
    pub fn try_new(rel: Relation) -> Result<Self, PreorderError> {
        rel.check_preorder()?;
        Ok(Preorder(rel))
    }

    /// The diagonal (identity) preorder.
    pub fn diagonal(n: usize) -> Result<Self, PreorderError> {
        let mut rel = Relation::empty(n)?;
        for i in 0..n {
            rel.insert(i, i);
        }
        Ok(Preorder(rel))
    }

    /// The full relation.
    pub fn full(n: usize) -> Result<Self, PreorderError> {
        let mut rel = Relation::empty(n)?;
        for i in 0..n {
            for j in 0..n {
                rel.insert(i, j);
            }
        }
        Ok(Preorder(rel))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// 0-based membership test.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(i, j)
    }

    pub fn as_relation(&self) -> &Relation {
        &self.0
    }

    pub fn pairs_1based(&self) -> Vec<(usize, usize)> {
        self.0.pairs_1based()
    }

    /// Number of pairs in the relation.
    pub fn len(&self) -> usize {
        self.0.table.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        false // a preorder always contains the diagonal
    }

    /// Composes two preorders into one on `{1, ..., n*m}`, the pattern that
    /// turns blocked structure into flat structure.
    ///
    /// With 0-based indices `i`, `j` on the composed set, `(i, j)` is a member
    /// iff `(i / m, j / m)` is in `self` and `(i % m, j % m)` is in `other`,
    /// where `m = other.n()`. In the 1-based external convention this is the
    /// ceiling/residue membership rule.
    pub fn compose_kron(&self, other: &Preorder) -> Preorder {
        let n = self.n();
        let m = other.n();
        let nm = n * m;
        let mut rel = Relation::empty(nm).expect("nm >= 1");
        for i in 0..nm {
            for j in 0..nm {
                if self.contains(i / m, j / m) && other.contains(i % m, j % m) {
                    rel.insert(i, j);
                }
            }
        }
        // Reflexive and transitive by the componentwise rule; cheap to assert.
        debug_assert!(rel.check_preorder().is_ok());
        Preorder(rel)
    }
}

/// External JSON form: `{"n": 3, "pairs": [[1,2],[2,3]]}` with 1-based pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationDoc {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl RelationDoc {
    pub fn to_relation(&self) -> Result<Relation, PreorderError> {
        Relation::from_pairs_1based(self.n, &self.pairs)
    }

    pub fn from_relation(rel: &Relation) -> Self {
        RelationDoc {
            n: rel.n(),
            pairs: rel.pairs_1based(),
        }
    }

    pub fn from_preorder(p: &Preorder) -> Self {
        Self::from_relation(p.as_relation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs_1based(n, pairs).unwrap()
    }

    #[test]
    fn full_relation_is_preorder() {
        let full = Preorder::full(3).unwrap();
        assert!(validate(full.as_relation()));
    }

    #[test]
    fn upper_triangular_order_is_preorder() {
        assert!(validate(&rel(2, &[(1, 1), (2, 2), (1, 2)])));
    }

    #[test]
    fn missing_reflexive_pairs_rejected() {
        let r = rel(2, &[(1, 2), (2, 1)]);
        assert!(!validate(&r));
        assert_eq!(r.check_preorder(), Err(PreorderError::NotReflexive(1)));
    }

    #[test]
    fn transitivity_violation_named_in_error() {
        let r = rel(3, &[(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)]);
        assert_eq!(r.check_preorder(), Err(PreorderError::NotTransitive(1, 2, 3)));
    }

    #[test]
    fn closure_of_empty_is_diagonal() {
        let c = closure(&Relation::empty(3).unwrap());
        assert_eq!(c, Preorder::diagonal(3).unwrap());
    }

    #[test]
    fn closure_of_chain_adds_composite() {
        let c = closure(&rel(3, &[(1, 2), (2, 3)]));
        let expected = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];
        assert_eq!(c.pairs_1based(), expected.to_vec());
    }

    #[test]
    fn closure_fixes_preorders() {
        let p = Preorder::try_new(rel(2, &[(1, 1), (2, 2), (1, 2)])).unwrap();
        assert_eq!(closure(p.as_relation()), p);
    }

    #[test]
    fn closure_is_idempotent() {
        let once = closure(&rel(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]));
        let twice = closure(once.as_relation());
        assert_eq!(once, twice);
    }

    #[test]
    fn compose_diagonal_with_diagonal() {
        let d2 = Preorder::diagonal(2).unwrap();
        assert_eq!(d2.compose_kron(&d2), Preorder::diagonal(4).unwrap());
    }

    #[test]
    fn compose_full_with_full() {
        let f2 = Preorder::full(2).unwrap();
        let f3 = Preorder::full(3).unwrap();
        assert_eq!(f2.compose_kron(&f3), Preorder::full(6).unwrap());
    }

    #[test]
    fn compose_upper_triangular_with_itself() {
        let t = Preorder::try_new(rel(2, &[(1, 1), (1, 2), (2, 2)])).unwrap();
        let composed = t.compose_kron(&t);
        let expected = [
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 2),
            (2, 4),
            (3, 3),
            (3, 4),
            (4, 4),
        ];
        assert_eq!(composed.pairs_1based(), expected.to_vec());
    }

    #[test]
    fn compose_diagonal_left_restricts_to_blocks() {
        let d = Preorder::diagonal(3).unwrap();
        let t = Preorder::try_new(rel(2, &[(1, 1), (1, 2), (2, 2)])).unwrap();
        let composed = d.compose_kron(&t);
        for b in 0..3 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(composed.contains(2 * b + i, 2 * b + j), t.contains(i, j));
                }
            }
        }
        // nothing off the block diagonal
        assert!(!composed.contains(0, 2));
        assert!(!composed.contains(4, 1));
    }

    #[test]
    fn doc_round_trip() {
        let p = closure(&rel(3, &[(1, 2), (2, 3)]));
        let doc = RelationDoc::from_preorder(&p);
        let json = serde_json::to_string(&doc).unwrap();
        let back: RelationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_relation().unwrap(), *p.as_relation());
    }

    #[test]
    fn out_of_range_pair_rejected() {
        assert_eq!(
            Relation::from_pairs_1based(2, &[(1, 3)]),
            Err(PreorderError::PairOutOfRange(1, 3, 2))
        );
        assert_eq!(
            Relation::from_pairs_1based(2, &[(0, 1)]),
            Err(PreorderError::PairOutOfRange(0, 1, 2))
        );
    }
}
