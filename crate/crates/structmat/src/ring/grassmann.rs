//! Exterior (Grassmann) algebra on `g` anticommuting generators over a
//! field: `e_i e_i = 0` and `e_i e_j = -e_j e_i`. Elements are kept in
//! normal form as a map from generator subsets (bitmask, bit `i` for
//! generator `i+1`) to nonzero coefficients, with subset indices implicitly
//! increasing.
//!
//! The positive-degree part is the nilradical; the degree-0 coefficient is
//! the body. Products of `g+1` positive-degree elements vanish, which drives
//! the geometric-series inversion.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::RingDescriptor;
use super::{Field, NilRing, Ring, RingError};

pub type Mask = u64;

/// Product of two basis monomials: `None` when a generator repeats,
/// otherwise the sign of interleaving the two ascending index lists and the
/// union mask. The sign counts the transpositions needed to sort the
/// concatenation of `s` followed by `t`.
pub fn mul_basis(s: Mask, t: Mask) -> Option<(i32, Mask)> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        // generators of s strictly above b must move past e_{b+1}
        swaps += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((sign, s | t))
}

#[derive(Debug, Clone)]
pub struct GrassmannRing<F: Field> {
    generators: usize,
    field: F,
}

impl<F: Field> GrassmannRing<F> {
    pub fn new(generators: usize, field: F) -> Self {
        assert!(
            (1..=super::descriptor::MAX_GENERATORS).contains(&generators),
            "generator count out of range"
        );
        GrassmannRing { generators, field }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The generator `e_i`, 1-based.
    pub fn generator(&self, i: usize) -> BTreeMap<Mask, F::Elem> {
        assert!(i >= 1 && i <= self.generators);
        BTreeMap::from([(1 << (i - 1), self.field.one())])
    }

    /// A single scaled basis monomial; zero coefficient gives zero.
    pub fn monomial(&self, coeff: F::Elem, mask: Mask) -> BTreeMap<Mask, F::Elem> {
        assert!(mask < (1 << self.generators), "mask out of range");
        if self.field.is_zero(&coeff) {
            BTreeMap::new()
        } else {
            BTreeMap::from([(mask, coeff)])
        }
    }

    fn add_term(&self, acc: &mut BTreeMap<Mask, F::Elem>, mask: Mask, coeff: F::Elem) {
        let merged = match acc.get(&mask) {
            Some(old) => self.field.add(old, &coeff),
            None => coeff,
        };
        if self.field.is_zero(&merged) {
            acc.remove(&mask);
        } else {
            acc.insert(mask, merged);
        }
    }
}

impl<F: Field> Ring for GrassmannRing<F> {
    type Elem = BTreeMap<Mask, F::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Grassmann {
            generators: self.generators,
            base: Box::new(self.field.descriptor()),
        }
    }

    fn is_commutative(&self) -> bool {
        self.generators <= 1
    }

    fn is_finite(&self) -> bool {
        self.field.is_finite()
    }

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn one(&self) -> Self::Elem {
        BTreeMap::from([(0, self.field.one())])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (&mask, coeff) in b {
            self.add_term(&mut out, mask, coeff.clone());
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter()
            .map(|(&mask, coeff)| (mask, self.field.neg(coeff)))
            .collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (&s, cs) in a {
            for (&t, ct) in b {
                if let Some((sign, mask)) = mul_basis(s, t) {
                    let mut coeff = self.field.mul(cs, ct);
                    if sign < 0 {
                        coeff = self.field.neg(&coeff);
                    }
                    self.add_term(&mut out, mask, coeff);
                }
            }
        }
        out
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        self.monomial(self.field.from_int(k), 0)
    }

    /// Invertible iff the body is a nonzero field element; the inverse is
    /// the body inverse times the geometric series in the nilpotent part.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let body = a.get(&0)?;
        let body_inv = self.field.try_invert(body)?;
        let b = self.monomial(body_inv, 0);
        // e = 1 - a*b lies in the span of positive-degree monomials
        let e = self.sub(&self.one(), &self.mul(a, &b));
        let mut series = self.one();
        for _ in 0..self.generators {
            series = self.add(&self.one(), &self.mul(&e, &series));
        }
        Some(self.mul(&b, &series))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        let mut out = BTreeMap::new();
        for mask in 0..(1u64 << self.generators) {
            if rng.random_bool(0.5) {
                let coeff = self.field.sample(rng);
                if !self.field.is_zero(&coeff) {
                    out.insert(mask, coeff);
                }
            }
        }
        out
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        let mut terms: Vec<(&Mask, &F::Elem)> = a.iter().collect();
        terms.sort_by_key(|(&mask, _)| (mask.count_ones(), mask));
        Value::Array(
            terms
                .into_iter()
                .map(|(&mask, coeff)| {
                    let indices: Vec<Value> = (0..self.generators)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| Value::Number(((i + 1) as u64).into()))
                        .collect();
                    Value::Array(vec![self.field.elem_to_json(coeff), Value::Array(indices)])
                })
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RingError> {
        let terms = v.as_array().ok_or_else(|| {
            RingError::bad_element("grassmann", format!("expected term list, got {v}"))
        })?;
        let mut out = self.zero();
        for term in terms {
            let pair = term
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| {
                    RingError::bad_element("grassmann", "each term must be [coeff, [indices]]")
                })?;
            let coeff = self.field.elem_from_json(&pair[0])?;
            let indices = pair[1].as_array().ok_or_else(|| {
                RingError::bad_element("grassmann", "generator indices must be an array")
            })?;
            let mut mask: Mask = 0;
            for idx in indices {
                let i = idx.as_u64().filter(|&i| i >= 1 && i <= self.generators as u64);
                let i = i.ok_or_else(|| {
                    RingError::bad_element(
                        "grassmann",
                        format!("generator index {idx} out of 1..={}", self.generators),
                    )
                })?;
                let bit = 1u64 << (i - 1);
                if mask & bit != 0 {
                    return Err(RingError::bad_element(
                        "grassmann",
                        format!("repeated generator index {i}"),
                    ));
                }
                mask |= bit;
            }
            self.add_term(&mut out, mask, coeff);
        }
        Ok(out)
    }
}

impl<F: Field> NilRing for GrassmannRing<F> {
    type Quotient = F;

    fn quotient_ring(&self) -> F {
        self.field.clone()
    }

    fn project(&self, a: &Self::Elem) -> F::Elem {
        a.get(&0).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn lift(&self, q: &F::Elem) -> Self::Elem {
        self.monomial(q.clone(), 0)
    }

    fn nil_index(&self) -> usize {
        self.generators + 1
    }
}
