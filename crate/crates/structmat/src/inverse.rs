//! Constructive inversion procedures, each with its own applicability
//! contract. Every procedure returns a certificate whose two verification
//! products have been checked against the identity, exactly.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{
    check_structural, det_unchecked, identity, mat_mul, mat_sub, scalar_mul, SquareMatrix,
};
use crate::poly::MonicPolynomial;
use crate::preorder::Preorder;
use crate::ring::matrix_ring::SquareMatrixRing;
use crate::ring::{binomial_i64, NilRing, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InverseError {
    #[error("element is not invertible by this procedure")]
    NotInvertible,
    #[error("operation requires a commutative ring")]
    NoncommutativeRing,
    #[error("power iteration requires a finite ring")]
    InfiniteRing,
    #[error("polynomial does not annihilate the element")]
    NotAnnihilating,
    #[error("constant term of the annihilator is not a unit")]
    ConstantTermNotUnit,
    #[error("1 - x*s is not nilpotent within the stated index")]
    NotNilpotent,
    #[error("at least one approximant is required")]
    NoApproximants,
    #[error("nil index {0} is too large for integer binomial coefficients")]
    NilIndexTooLarge(usize),
    #[error("no inversion method applies to this ring")]
    NoMethodApplicable,
    #[error("candidate inverse failed the {0} verification product")]
    VerificationFailed(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseMethod {
    Adjugate,
    CharPoly,
    MonicAnnihilator,
    PowerOrder,
    NilLiftBinomial,
    NilGeometric,
}

impl InverseMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            InverseMethod::Adjugate => "adjugate",
            InverseMethod::CharPoly => "char_poly",
            InverseMethod::MonicAnnihilator => "monic_annihilator",
            InverseMethod::PowerOrder => "power_order",
            InverseMethod::NilLiftBinomial => "nil_lift_binomial",
            InverseMethod::NilGeometric => "nil_geometric",
        }
    }
}

/// Outcome of checking `x * inv` and `inv * x` against the identity. Both
/// are true in every certificate this module hands out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifiedProducts {
    pub right_product_is_identity: bool,
    pub left_product_is_identity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseCertificate<E> {
    pub method: InverseMethod,
    pub inverse: E,
    pub checks: VerifiedProducts,
    /// For pattern-aware procedures: whether the inverse stayed inside the
    /// pattern of a structural input. `None` when no pattern was supplied or
    /// the input was not structural for it.
    pub structural: Option<bool>,
}

/// Verifies both products and seals the certificate; refuses candidates
/// that fail either side.
pub fn certify<R: Ring>(
    ring: &R,
    x: &R::Elem,
    inverse: R::Elem,
    method: InverseMethod,
) -> Result<InverseCertificate<R::Elem>, InverseError> {
    if !ring.is_one(&ring.mul(x, &inverse)) {
        return Err(InverseError::VerificationFailed("right"));
    }
    if !ring.is_one(&ring.mul(&inverse, x)) {
        return Err(InverseError::VerificationFailed("left"));
    }
    Ok(InverseCertificate {
        method,
        inverse,
        checks: VerifiedProducts {
            right_product_is_identity: true,
            left_product_is_identity: true,
        },
        structural: None,
    })
}

/// `A^{-1} = det(A)^{-1} adj(A)` over a commutative ring.
pub fn inv_adjugate<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError> {
    if !ring.is_commutative() {
        return Err(InverseError::NoncommutativeRing);
    }
    let det = det_unchecked(ring, a);
    let det_inv = ring.try_invert(&det).ok_or(InverseError::NotInvertible)?;
    let adj = crate::matrix::adjugate(ring, a).expect("ring is commutative");
    let inverse = scalar_mul(ring, &det_inv, &adj);
    let mring = SquareMatrixRing::new(ring.clone(), a.n());
    certify(&mring, a, inverse, InverseMethod::Adjugate)
}

/// Extracts the inverse from an annihilating polynomial with a unit
/// constant term:
/// from `c_0 + c_1 x + ... + c_d x^d = 0`,
/// `x^{-1} = -c_0^{-1} (c_1 + c_2 x + ... + c_d x^{d-1})`.
///
/// When the annihilator is known for `x^{-1}` instead (a unit leading
/// coefficient), pass its [`MonicPolynomial::reciprocal`]: reversing the
/// coefficients turns that leading unit into the constant term this
/// procedure needs, which is the usual right-multiply-by-`x^{d-1}`
/// rearrangement.
pub fn invert_via_annihilator<R: Ring>(
    ring: &R,
    x: &R::Elem,
    p: &MonicPolynomial<R::Elem>,
    method: InverseMethod,
) -> Result<InverseCertificate<R::Elem>, InverseError> {
    if !ring.is_zero(&p.eval(ring, x)) {
        return Err(InverseError::NotAnnihilating);
    }
    let c0_inv = ring
        .try_invert(p.constant_term())
        .ok_or(InverseError::ConstantTermNotUnit)?;
    // Horner for sum_{i>=1} c_i x^{i-1}
    let d = p.degree();
    let mut acc = p.leading().clone();
    for i in (1..d).rev() {
        acc = ring.add(p.coeff(i), &ring.mul(&acc, x));
    }
    let inverse = ring.neg(&ring.mul(&c0_inv, &acc));
    certify(ring, x, inverse, method)
}

/// Matrix wrapper for the annihilator route: derives the characteristic
/// polynomial, embeds its coefficients as scalar matrices, and extracts the
/// inverse. Commutative rings only, since the characteristic polynomial is.
pub fn inv_via_char_poly<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError> {
    if !ring.is_commutative() {
        return Err(InverseError::NoncommutativeRing);
    }
    let chi = crate::matrix::char_poly(ring, a).expect("ring is commutative");
    let mring = SquareMatrixRing::new(ring.clone(), a.n());
    let lifted = chi.map_coeffs(&mring, |c| crate::matrix::scalar_embed(ring, c, a.n()));
    invert_via_annihilator(&mring, a, &lifted, InverseMethod::CharPoly)
}

/// Power iteration in a finite ring: the sequence `x, x^2, x^3, ...` is
/// eventually periodic; `x` is a unit iff some power is 1 and then
/// `x^{-1} = x^{k-1}` for the first `k` with `x^k = 1`. Cycle detection is
/// Brent's algorithm, so the walk stores only two values.
pub fn inv_by_power_order<R: Ring>(
    ring: &R,
    x: &R::Elem,
) -> Result<InverseCertificate<R::Elem>, InverseError> {
    if !ring.is_finite() {
        return Err(InverseError::InfiniteRing);
    }
    if ring.is_one(x) {
        return certify(ring, x, ring.one(), InverseMethod::PowerOrder);
    }
    // hare = x^k, walked one step at a time so the first power equal to 1 is
    // seen before any cycle is declared; tortoise teleports to x^(2^j).
    let mut tortoise = x.clone();
    let mut hare = x.clone();
    let mut prev;
    let mut checkpoint_len: u64 = 1;
    let mut steps_since_checkpoint: u64 = 0;
    loop {
        prev = hare.clone();
        hare = ring.mul(&hare, x);
        steps_since_checkpoint += 1;
        if ring.is_one(&hare) {
            return certify(ring, x, prev, InverseMethod::PowerOrder);
        }
        if hare == tortoise {
            return Err(InverseError::NotInvertible);
        }
        if steps_since_checkpoint == checkpoint_len {
            tortoise = hare.clone();
            checkpoint_len *= 2;
            steps_since_checkpoint = 0;
        }
    }
}

/// Combines approximate inverses `s_i` (each `1 - x s_i` in a nil ideal)
/// into one `s` with `(1 - x s_1) ... (1 - x s_t) = 1 - x s`, checks
/// `(1 - x s)^k = 0`, and applies the binomial formula
/// `x^{-1} = C(k,1) s - C(k,2) s(xs) + ... + (-1)^{k+1} C(k,k) s(xs)^{k-1}`.
pub fn lift_inverse_nil_binomial<R: Ring>(
    ring: &R,
    x: &R::Elem,
    approximants: &[R::Elem],
    nil_index: usize,
) -> Result<InverseCertificate<R::Elem>, InverseError> {
    if approximants.is_empty() {
        return Err(InverseError::NoApproximants);
    }
    if nil_index > 62 {
        return Err(InverseError::NilIndexTooLarge(nil_index));
    }
    // (1 - x s')(1 - x s_i) = 1 - x (s' + s_i - s' x s_i)
    let mut s = approximants[0].clone();
    for si in &approximants[1..] {
        let correction = ring.mul(&s, &ring.mul(x, si));
        s = ring.sub(&ring.add(&s, si), &correction);
    }
    let e = ring.sub(&ring.one(), &ring.mul(x, &s));
    if !ring.is_zero(&ring.pow(&e, nil_index)) {
        return Err(InverseError::NotNilpotent);
    }
    let xs = ring.mul(x, &s);
    let k = nil_index as u32;
    let mut inverse = ring.zero();
    let mut xs_power = ring.one(); // (xs)^{i-1}
    for i in 1..=k {
        let coeff = binomial_i64(k, i);
        let signed = if i % 2 == 1 { coeff } else { -coeff };
        let term = ring.int_mul(signed, &ring.mul(&s, &xs_power));
        inverse = ring.add(&inverse, &term);
        xs_power = ring.mul(&xs_power, &xs);
    }
    certify(ring, x, inverse, InverseMethod::NilLiftBinomial)
}

/// Inverts a matrix over a ring with computable nilradical by the
/// quotient-then-lift pipeline: invert the body over the quotient, lift it
/// back to `B`, and correct with the geometric series of `E = I - A B`,
/// which lives over the nilradical and so is nilpotent.
///
/// When `theta` is supplied and `A` is structural for it, the certificate
/// records whether the computed inverse stayed structural.
pub fn inv_nil_geometric<R: NilRing>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    theta: Option<&Preorder>,
) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError> {
    let n = a.n();
    let quotient = ring.quotient_ring();
    let body = a.map(|e| ring.project(e));
    // The quotient is semisimple enough for the adjugate test: the body is
    // invertible there exactly when A is invertible, since the kernel is nil.
    let body_cert = inv_adjugate(&quotient, &body)?;
    let b = body_cert.inverse.map(|q| ring.lift(q));
    let mring = SquareMatrixRing::new(ring.clone(), n);
    let e = mat_sub(ring, &identity(ring, n), &mat_mul(ring, a, &b));
    let mut series = identity(ring, n);
    for _ in 0..ring.nil_index().saturating_sub(1) {
        series = crate::matrix::mat_add(ring, &identity(ring, n), &mat_mul(ring, &e, &series));
    }
    let inverse = mat_mul(ring, &b, &series);
    let mut cert = certify(&mring, a, inverse, InverseMethod::NilGeometric)?;
    if let Some(theta) = theta {
        if check_structural(ring, a, theta).unwrap_or(false) {
            cert.structural =
                Some(check_structural(ring, &cert.inverse, theta).expect("sizes already matched"));
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity, SquareMatrix};
    use crate::ring::grassmann::GrassmannRing;
    use crate::ring::integers::IntRing;
    use crate::ring::modular::ModRing;
    use crate::ring::rationals::RatRing;
    use crate::ring::Ring;

    fn mod_mat(m: u64, rows: &[&[u64]]) -> SquareMatrix<u64> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).map(|mat| {
            let ring = ModRing::new(m);
            mat.map(|e| e % ring.modulus())
        })
        .unwrap()
    }

    #[test]
    fn adjugate_inverse_mod_5() {
        let r = ModRing::new(5);
        let a = mod_mat(5, &[&[2, 1], &[0, 3]]);
        let cert = inv_adjugate(&r, &a).unwrap();
        assert_eq!(cert.inverse, mod_mat(5, &[&[3, 4], &[0, 2]]));
        assert_eq!(cert.method, InverseMethod::Adjugate);
        assert!(cert.checks.left_product_is_identity && cert.checks.right_product_is_identity);
    }

    #[test]
    fn adjugate_inverse_of_identity() {
        let r = ModRing::new(7);
        let cert = inv_adjugate(&r, &identity(&r, 3)).unwrap();
        assert_eq!(cert.inverse, identity(&r, 3));
    }

    #[test]
    fn integer_matrix_with_nonunit_det_is_rejected() {
        let r = IntRing;
        let a = SquareMatrix::from_rows(vec![
            vec![r.from_int(1), r.from_int(2)],
            vec![r.from_int(3), r.from_int(4)],
        ])
        .unwrap();
        assert_eq!(inv_adjugate(&r, &a).unwrap_err(), InverseError::NotInvertible);
    }

    #[test]
    fn annihilator_route_for_scalars() {
        let r = ModRing::new(8);
        // x = 3, p = x^2 - 1
        let p = MonicPolynomial::new(&r, vec![r.from_int(-1), 0, 1]).unwrap();
        let cert = invert_via_annihilator(&r, &3, &p, InverseMethod::MonicAnnihilator).unwrap();
        assert_eq!(cert.inverse, 3);
        // x = 1, p = x - 1
        let p1 = MonicPolynomial::new(&r, vec![r.from_int(-1), 1]).unwrap();
        let one = invert_via_annihilator(&r, &1, &p1, InverseMethod::MonicAnnihilator).unwrap();
        assert_eq!(one.inverse, 1);
    }

    #[test]
    fn annihilator_route_rejects_non_annihilating() {
        let r = ModRing::new(8);
        let p = MonicPolynomial::new(&r, vec![r.from_int(-1), 0, 1]).unwrap();
        assert_eq!(
            invert_via_annihilator(&r, &2, &p, InverseMethod::MonicAnnihilator).unwrap_err(),
            InverseError::NotAnnihilating
        );
    }

    #[test]
    fn annihilator_route_requires_unit_constant_term() {
        let r = ModRing::new(8);
        // x = 2 annihilated by x^3 (constant term 0, not a unit)
        let p = MonicPolynomial::new(&r, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(
            invert_via_annihilator(&r, &2, &p, InverseMethod::MonicAnnihilator).unwrap_err(),
            InverseError::ConstantTermNotUnit
        );
    }

    #[test]
    fn char_poly_inverse_matches_adjugate_mod_5() {
        let r = ModRing::new(5);
        let a = mod_mat(5, &[&[1, 2], &[3, 4]]);
        let cert = inv_via_char_poly(&r, &a).unwrap();
        assert_eq!(cert.inverse, mod_mat(5, &[&[3, 1], &[4, 2]]));
        assert_eq!(cert.method, InverseMethod::CharPoly);
        let adj = inv_adjugate(&r, &a).unwrap();
        assert_eq!(cert.inverse, adj.inverse);
    }

    #[test]
    fn power_order_examples() {
        let r = ModRing::new(8);
        let cert = inv_by_power_order(&r, &3).unwrap();
        assert_eq!(cert.inverse, 3); // 3, 9=1 -> inverse is 3
        assert_eq!(
            inv_by_power_order(&r, &2).unwrap_err(),
            InverseError::NotInvertible
        ); // 2, 4, 0, 0 cycles without 1
        assert_eq!(
            inv_by_power_order(&r, &0).unwrap_err(),
            InverseError::NotInvertible
        );
    }

    #[test]
    fn power_order_on_matrix_ring_identity() {
        use crate::ring::matrix_ring::SquareMatrixRing;
        let mring = SquareMatrixRing::new(ModRing::new(3), 2);
        let cert = inv_by_power_order(&mring, &mring.one()).unwrap();
        assert_eq!(cert.inverse, mring.one());
    }

    #[test]
    fn power_order_needs_finiteness() {
        assert_eq!(
            inv_by_power_order(&IntRing, &IntRing.from_int(1)).unwrap_err(),
            InverseError::InfiniteRing
        );
    }

    #[test]
    fn binomial_lift_worked_instance_mod_9() {
        let r = ModRing::new(9);
        // s = 1 inverts 4 modulo the nil ideal (3); k = 2
        let cert = lift_inverse_nil_binomial(&r, &4, &[1], 2).unwrap();
        assert_eq!(cert.inverse, 7); // 2*1 - 1*4 = -2 = 7, and 4*7 = 28 = 1
    }

    #[test]
    fn binomial_lift_exact_approximant() {
        let r = ModRing::new(9);
        let cert = lift_inverse_nil_binomial(&r, &4, &[7], 1).unwrap();
        assert_eq!(cert.inverse, 7);
    }

    #[test]
    fn binomial_lift_grassmann_instance() {
        let g = GrassmannRing::new(2, RatRing);
        let e12 = g.mul(&g.generator(1), &g.generator(2));
        let x = g.add(&g.one(), &e12);
        let cert = lift_inverse_nil_binomial(&g, &x, &[g.one()], 2).unwrap();
        assert_eq!(cert.inverse, g.sub(&g.one(), &e12));
    }

    #[test]
    fn binomial_lift_rejects_bad_approximant() {
        let r = ModRing::new(9);
        // 1 - 4*4 = -15 = 3 mod 9 is nilpotent, but 1 - 4*2 = 2 is not
        assert_eq!(
            lift_inverse_nil_binomial(&r, &4, &[2], 2).unwrap_err(),
            InverseError::NotNilpotent
        );
        assert_eq!(
            lift_inverse_nil_binomial(&r, &4, &[], 2).unwrap_err(),
            InverseError::NoApproximants
        );
    }

    #[test]
    fn nil_geometric_upper_triangular_grassmann() {
        use crate::preorder::{Preorder, Relation};
        let g = GrassmannRing::new(2, RatRing);
        let upper =
            Preorder::try_new(Relation::from_pairs_1based(2, &[(1, 1), (1, 2), (2, 2)]).unwrap())
                .unwrap();
        let a = SquareMatrix::from_rows(vec![
            vec![g.one(), g.generator(1)],
            vec![g.zero(), g.one()],
        ])
        .unwrap();
        let cert = inv_nil_geometric(&g, &a, Some(&upper)).unwrap();
        let want = SquareMatrix::from_rows(vec![
            vec![g.one(), g.neg(&g.generator(1))],
            vec![g.zero(), g.one()],
        ])
        .unwrap();
        assert_eq!(cert.inverse, want);
        assert_eq!(cert.structural, Some(true));
    }

    #[test]
    fn nil_geometric_lower_triangular_grassmann() {
        use crate::preorder::{Preorder, Relation};
        let g = GrassmannRing::new(2, RatRing);
        let lower =
            Preorder::try_new(Relation::from_pairs_1based(2, &[(1, 1), (2, 1), (2, 2)]).unwrap())
                .unwrap();
        let a = SquareMatrix::from_rows(vec![
            vec![g.add(&g.one(), &g.generator(1)), g.zero()],
            vec![g.generator(2), g.one()],
        ])
        .unwrap();
        let cert = inv_nil_geometric(&g, &a, Some(&lower)).unwrap();
        let e2e1_minus_e2 = g.sub(
            &g.mul(&g.generator(2), &g.generator(1)),
            &g.generator(2),
        );
        let want = SquareMatrix::from_rows(vec![
            vec![g.sub(&g.one(), &g.generator(1)), g.zero()],
            vec![e2e1_minus_e2, g.one()],
        ])
        .unwrap();
        assert_eq!(cert.inverse, want);
        assert_eq!(cert.structural, Some(true));
    }

    #[test]
    fn nil_geometric_rejects_singular_body() {
        let g = GrassmannRing::new(2, RatRing);
        let a = SquareMatrix::from_rows(vec![
            vec![g.generator(1), g.zero()],
            vec![g.zero(), g.one()],
        ])
        .unwrap();
        assert_eq!(
            inv_nil_geometric(&g, &a, None).unwrap_err(),
            InverseError::NotInvertible
        );
    }

    #[test]
    fn nil_geometric_matches_adjugate_mod_prime_square() {
        let r = ModRing::new(9);
        let a = mod_mat(9, &[&[2, 3], &[1, 5]]);
        let nil = inv_nil_geometric(&r, &a, None).unwrap();
        let adj = inv_adjugate(&r, &a).unwrap();
        assert_eq!(nil.inverse, adj.inverse);
    }
}
