//! The algebra generated over a field by `x`, `y` subject to `xy = 1`, with
//! normal-form basis `{y^i x^j}`. It carries a one-sided inverse pair:
//! `xy = 1` but `yx != 1`, so it sits outside every closure theorem that
//! needs chain or identity conditions, which is exactly what it is here for.
//!
//! Multiplication rewrites occurrences of `xy` to 1, which on basis
//! monomials is `(y^i x^j)(y^k x^l) = y^{i+max(0,k-j)} x^{l+max(0,j-k)}`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::RingDescriptor;
use super::{Field, Ring, RingError};

/// Exponent pair `(i, j)` standing for `y^i x^j`.
pub type Monomial = (u32, u32);

/// Normal form of the product of two basis monomials.
pub fn mul_basis(i: u32, j: u32, k: u32, l: u32) -> Monomial {
    (i + k.saturating_sub(j), l + j.saturating_sub(k))
}

#[derive(Debug, Clone)]
pub struct JacobsonRing<F: Field> {
    field: F,
}

impl<F: Field> JacobsonRing<F> {
    pub fn new(field: F) -> Self {
        JacobsonRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The generator `x` (kills the lowest basis vector in the shift model).
    pub fn x(&self) -> BTreeMap<Monomial, F::Elem> {
        BTreeMap::from([((0, 1), self.field.one())])
    }

    /// The generator `y` (the one-sided right inverse of `x`).
    pub fn y(&self) -> BTreeMap<Monomial, F::Elem> {
        BTreeMap::from([((1, 0), self.field.one())])
    }

    /// The idempotent `1 - yx`.
    pub fn one_minus_yx(&self) -> BTreeMap<Monomial, F::Elem> {
        self.sub(&self.one(), &self.mul(&self.y(), &self.x()))
    }

    fn add_term(&self, acc: &mut BTreeMap<Monomial, F::Elem>, m: Monomial, coeff: F::Elem) {
        let merged = match acc.get(&m) {
            Some(old) => self.field.add(old, &coeff),
            None => coeff,
        };
        if self.field.is_zero(&merged) {
            acc.remove(&m);
        } else {
            acc.insert(m, merged);
        }
    }
}

impl<F: Field> Ring for JacobsonRing<F> {
    type Elem = BTreeMap<Monomial, F::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Jacobson {
            base: Box::new(self.field.descriptor()),
        }
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn is_finite(&self) -> bool {
        false // the basis {y^i x^j} is infinite whatever the field
    }

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn one(&self) -> Self::Elem {
        BTreeMap::from([((0, 0), self.field.one())])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (&m, coeff) in b {
            self.add_term(&mut out, m, coeff.clone());
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter()
            .map(|(&m, coeff)| (m, self.field.neg(coeff)))
            .collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (&(i, j), ca) in a {
            for (&(k, l), cb) in b {
                let m = mul_basis(i, j, k, l);
                self.add_term(&mut out, m, self.field.mul(ca, cb));
            }
        }
        out
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        let c = self.field.from_int(k);
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            BTreeMap::from([((0, 0), c)])
        }
    }

    /// Deliberately partial: only nonzero scalars are certified as units.
    /// `None` makes no claim about other elements.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 {
            return None;
        }
        let ((i, j), coeff) = a.iter().next()?;
        if (*i, *j) != (0, 0) {
            return None;
        }
        let inv = self.field.try_invert(coeff)?;
        Some(BTreeMap::from([((0, 0), inv)]))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        let mut out = self.zero();
        for _ in 0..rng.random_range(0..=3u32) {
            let m = (rng.random_range(0..3u32), rng.random_range(0..3u32));
            let coeff = self.field.sample(rng);
            if !self.field.is_zero(&coeff) {
                self.add_term(&mut out, m, coeff);
            }
        }
        out
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        Value::Array(
            a.iter()
                .map(|(&(i, j), coeff)| {
                    Value::Array(vec![
                        self.field.elem_to_json(coeff),
                        Value::Number(i.into()),
                        Value::Number(j.into()),
                    ])
                })
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RingError> {
        let terms = v.as_array().ok_or_else(|| {
            RingError::bad_element("jacobson", format!("expected term list, got {v}"))
        })?;
        let mut out = self.zero();
        for term in terms {
            let triple = term
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| {
                    RingError::bad_element("jacobson", "each term must be [coeff, i, j]")
                })?;
            let coeff = self.field.elem_from_json(&triple[0])?;
            let parse_exp = |v: &Value| -> Result<u32, RingError> {
                v.as_u64()
                    .filter(|&e| e <= 1 << 20)
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| {
                        RingError::bad_element(
                            "jacobson",
                            format!("exponent {v} is not a small non-negative integer"),
                        )
                    })
            };
            let i = parse_exp(&triple[1])?;
            let j = parse_exp(&triple[2])?;
            self.add_term(&mut out, (i, j), coeff);
        }
        Ok(out)
    }
}
