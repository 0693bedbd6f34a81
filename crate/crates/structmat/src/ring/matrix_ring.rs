//! The full matrix ring `M_k(R)` as a ring object, so matrices can be
//! entries of larger structural matrices and generic element-level
//! procedures (power iteration, annihilator extraction) apply to matrices
//! unchanged.

use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::RingDescriptor;
use super::{Ring, RingError};
use crate::matrix::{
    adjugate, det_unchecked, identity, mat_add, mat_mul, mat_neg, scalar_embed, scalar_mul,
    zero_matrix, SquareMatrix,
};

#[derive(Debug, Clone)]
pub struct SquareMatrixRing<R: Ring> {
    base: R,
    size: usize,
}

impl<R: Ring> SquareMatrixRing<R> {
    pub fn new(base: R, size: usize) -> Self {
        assert!(size >= 1, "matrix ring size must be positive");
        SquareMatrixRing { base, size }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl<R: Ring> Ring for SquareMatrixRing<R> {
    type Elem = SquareMatrix<R::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Matrix {
            size: self.size,
            base: Box::new(self.base.descriptor()),
        }
    }

    fn is_commutative(&self) -> bool {
        self.size == 1 && self.base.is_commutative()
    }

    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    fn zero(&self) -> Self::Elem {
        zero_matrix(&self.base, self.size)
    }

    fn one(&self) -> Self::Elem {
        identity(&self.base, self.size)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_add(&self.base, a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        mat_neg(&self.base, a)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_mul(&self.base, a, b)
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        scalar_embed(&self.base, &self.base.from_int(k), self.size)
    }

    /// Adjugate inversion when the base is commutative: invertible exactly
    /// when the determinant is a unit of the base. Over noncommutative bases
    /// this procedure does not apply and `None` is returned.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if !self.base.is_commutative() {
            return None;
        }
        let det = det_unchecked(&self.base, a);
        let det_inv = self.base.try_invert(&det)?;
        let adj = adjugate(&self.base, a).expect("base is commutative");
        Some(scalar_mul(&self.base, &det_inv, &adj))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        SquareMatrix::from_fn(self.size, |_, _| self.base.sample(rng))
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        Value::Array(
            (0..self.size)
                .map(|i| {
                    Value::Array(
                        (0..self.size)
                            .map(|j| self.base.elem_to_json(a.at(i, j)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RingError> {
        let rows = v
            .as_array()
            .ok_or_else(|| RingError::bad_element("matrix", format!("expected rows, got {v}")))?;
        if rows.len() != self.size {
            return Err(RingError::bad_element(
                "matrix",
                format!("expected {} rows, got {}", self.size, rows.len()),
            ));
        }
        let mut out = self.zero();
        for (i, row) in rows.iter().enumerate() {
            let cells = row.as_array().ok_or_else(|| {
                RingError::bad_element("matrix", format!("row {} is not an array", i + 1))
            })?;
            if cells.len() != self.size {
                return Err(RingError::bad_element(
                    "matrix",
                    format!("row {} has {} entries, expected {}", i + 1, cells.len(), self.size),
                ));
            }
            for (j, cell) in cells.iter().enumerate() {
                out.set(i, j, self.base.elem_from_json(cell)?);
            }
        }
        Ok(out)
    }
}
