//! Polynomials with a nonzero leading coefficient, used as annihilators and
//! characteristic polynomials.

use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial degree must be at least 1")]
    DegreeTooSmall,
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
}

/// Coefficient list `c_0, ..., c_d` with `d >= 1` and `c_d != 0`.
///
/// "Monic" in the loose sense used here: the leading coefficient is a unit in
/// the cases the inversion routines accept, and exactly one for
/// characteristic polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> MonicPolynomial<E> {
    pub fn new<R>(ring: &R, coeffs: Vec<E>) -> Result<Self, PolyError>
    where
        R: Ring<Elem = E>,
    {
        if coeffs.len() < 2 {
            return Err(PolyError::DegreeTooSmall);
        }
        if ring.is_zero(coeffs.last().expect("nonempty")) {
            return Err(PolyError::ZeroLeadingCoefficient);
        }
        Ok(MonicPolynomial { coeffs })
    }

    /// Builds `c_0 + ... + c_{d-1} x^{d-1} + k x^d` with an integer leading
    /// coefficient acting through the ring, the shape of the generalised
    /// trace-identity annihilators.
    pub fn from_integer_leading<R>(ring: &R, lower: Vec<E>, leading: i64) -> Result<Self, PolyError>
    where
        R: Ring<Elem = E>,
    {
        let mut coeffs = lower;
        coeffs.push(ring.from_int(leading));
        Self::new(ring, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &E {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &E {
        &self.coeffs[0]
    }

    pub fn leading(&self) -> &E {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_monic<R>(&self, ring: &R) -> bool
    where
        R: Ring<Elem = E>,
    {
        ring.is_one(self.leading())
    }

    /// The coefficient-reversed polynomial `x^d p(1/x)`. When `p` annihilates
    /// an invertible `x` with central coefficients, the reversal annihilates
    /// `x^{-1}`; this is the rearrangement that turns a unit leading
    /// coefficient into a unit constant term.
    pub fn reciprocal<R>(&self, ring: &R) -> Result<Self, PolyError>
    where
        R: Ring<Elem = E>,
    {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(ring, coeffs)
    }

    /// Evaluates with coefficients on the left: `sum_i c_i x^i`.
    pub fn eval<R>(&self, ring: &R, x: &E) -> E
    where
        R: Ring<Elem = E>,
    {
        let mut acc = self.leading().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = ring.add(c, &ring.mul(&acc, x));
        }
        acc
    }

    /// Maps the coefficients into another ring, e.g. embedding scalars as
    /// scalar matrices.
    pub fn map_coeffs<F, R2>(&self, ring2: &R2, f: impl FnMut(&E) -> F) -> MonicPolynomial<F>
    where
        F: Clone + PartialEq + std::fmt::Debug,
        R2: Ring<Elem = F>,
    {
        let coeffs: Vec<F> = self.coeffs.iter().map(f).collect();
        MonicPolynomial::new(ring2, coeffs).expect("mapped leading coefficient must stay nonzero")
    }
}
