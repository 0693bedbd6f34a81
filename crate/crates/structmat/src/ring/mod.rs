//! Exact normal-form arithmetic for the base rings that structural matrices
//! are built over, behind one uniform interface.
//!
//! Rings are small value objects (a modulus, a generator count) that interpret
//! plain element payloads, so runtime-parameterised rings like `Z/m` work
//! without threading context through every element. Element equality is
//! payload identity: every ring keeps a canonical normal form.

pub mod descriptor;
pub mod grassmann;
pub mod integers;
pub mod jacobson;
pub mod matrix_ring;
pub mod modular;
pub mod rationals;

use std::fmt;

use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use descriptor::RingDescriptor;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("malformed {kind} element: {msg}")]
    BadElement { kind: &'static str, msg: String },
    #[error("ring kind {0} has no computable nilradical")]
    UnsupportedRing(String),
}

impl RingError {
    pub fn bad_element(kind: &'static str, msg: impl Into<String>) -> Self {
        RingError::BadElement {
            kind,
            msg: msg.into(),
        }
    }
}

/// A ring with identity, presented as operations on element payloads.
///
/// `try_invert` only reports inverses the ring can certify: the returned
/// element multiplies to one on both sides. `None` means "no two-sided
/// inverse detectable by this ring's procedure", which for some rings
/// (notably the shift-style monoid algebra) is deliberately partial.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn descriptor(&self) -> RingDescriptor;
    fn is_commutative(&self) -> bool;
    fn is_finite(&self) -> bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of the integer `k` under the unique map from the integers.
    fn from_int(&self, k: i64) -> Self::Elem;

    /// Integer action `k . a`, the repeated-addition semantics.
    fn int_mul(&self, k: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(k), a)
    }

    fn pow(&self, a: &Self::Elem, e: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<'a>(&self, terms: impl Iterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        terms.fold(self.zero(), |acc, t| self.add(&acc, t))
    }

    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Draws a small "uniform-ish" element; used by the property harness.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RingError>;
}

/// Marker for rings in which every nonzero element is a unit and
/// `try_invert` succeeds exactly on nonzero input.
pub trait Field: Ring {}

/// A ring whose nilradical `N` is computable: elements split into a lift of
/// the quotient image (the body) plus a nilpotent remainder (the soul), and
/// `N^k = {0}` for a known `k`.
pub trait NilRing: Ring {
    type Quotient: Ring;

    fn quotient_ring(&self) -> Self::Quotient;

    /// Image in the quotient by the nilradical.
    fn project(&self, a: &Self::Elem) -> <Self::Quotient as Ring>::Elem;

    /// Canonical set-level section of `project`; `project(lift(q)) == q`.
    fn lift(&self, q: &<Self::Quotient as Ring>::Elem) -> Self::Elem;

    /// A `k` with `N^k = {0}`.
    fn nil_index(&self) -> usize;
}

/// Body-plus-soul split of an element of a ring with computable nilradical.
#[derive(Debug, Clone, PartialEq)]
pub struct NilDecomposition<E> {
    pub body: E,
    pub soul: E,
    pub nil_index_bound: usize,
}

/// Splits `a` into the canonical lift of its quotient image and a nilpotent
/// soul with `soul^bound = 0`.
pub fn nil_decompose<R: NilRing>(ring: &R, a: &R::Elem) -> NilDecomposition<R::Elem> {
    let body = ring.lift(&ring.project(a));
    let soul = ring.sub(a, &body);
    NilDecomposition {
        body,
        soul,
        nil_index_bound: ring.nil_index(),
    }
}

/// Binomial coefficient as an `i64`; callers keep `k` small (nil indices).
pub fn binomial_i64(k: u32, i: u32) -> i64 {
    assert!(k <= 62, "binomial coefficients only supported up to k = 62");
    if i > k {
        return 0;
    }
    let i = i.min(k - i);
    let mut num: i128 = 1;
    for j in 0..i {
        num = num * (k - j) as i128 / (j + 1) as i128;
    }
    i64::try_from(num).expect("binomial fits in i64 for k <= 62")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_i64(0, 0), 1);
        assert_eq!(binomial_i64(2, 1), 2);
        assert_eq!(binomial_i64(2, 2), 1);
        assert_eq!(binomial_i64(5, 2), 10);
        assert_eq!(binomial_i64(6, 3), 20);
        assert_eq!(binomial_i64(3, 5), 0);
    }
}
