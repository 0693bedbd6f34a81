//! Integers modulo `m`, plus the prime-field wrapper used as a coefficient
//! field.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::{factorize_u64, is_prime_u64, RingDescriptor, MAX_MODULUS};
use super::{Field, NilRing, Ring, RingError};

/// `Z/m` with residues stored reduced to `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Self {
        assert!(
            (2..=MAX_MODULUS).contains(&modulus),
            "modulus must satisfy 2 <= m <= {MAX_MODULUS}"
        );
        ModRing { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce_i64(&self, k: i64) -> u64 {
        k.rem_euclid(self.modulus as i64) as u64
    }
}

/// Extended gcd on nonnegative inputs: returns `(g, x, y)` with
/// `a*x + b*y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Modular {
            modulus: self.modulus,
        }
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // residues < 2^31, so the product fits in u64
        (a * b) % self.modulus
    }

    fn from_int(&self, k: i64) -> u64 {
        self.reduce_i64(k)
    }

    fn try_invert(&self, a: &u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(*a as i64, self.modulus as i64);
        if g == 1 {
            Some(self.reduce_i64(x))
        } else {
            None
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.random_range(0..self.modulus)
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        Value::Number((*a).into())
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64, RingError> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|k| self.reduce_i64(k))
                .ok_or_else(|| RingError::bad_element("mod", format!("{n} is not an integer"))),
            other => Err(RingError::bad_element(
                "mod",
                format!("expected integer residue, got {other}"),
            )),
        }
    }
}

impl NilRing for ModRing {
    type Quotient = ModRing;

    /// Quotient by the nilradical: `Z/rad(m)` where `rad` is the product of
    /// the distinct primes dividing `m`.
    fn quotient_ring(&self) -> ModRing {
        let rad: u64 = factorize_u64(self.modulus).iter().map(|(p, _)| p).product();
        ModRing::new(rad)
    }

    fn project(&self, a: &u64) -> u64 {
        a % self.quotient_ring().modulus
    }

    fn lift(&self, q: &u64) -> u64 {
        *q
    }

    fn nil_index(&self) -> usize {
        factorize_u64(self.modulus)
            .iter()
            .map(|&(_, e)| e as usize)
            .max()
            .unwrap_or(1)
    }
}

/// A prime field `F_p`; the wrapper certifies primality at construction so
/// it can stand in wherever a coefficient field is required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpRing(ModRing);

impl FpRing {
    pub fn new(p: u64) -> Self {
        assert!(is_prime_u64(p), "{p} is not prime");
        FpRing(ModRing::new(p))
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus()
    }
}

impl Ring for FpRing {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        self.0.descriptor()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn zero(&self) -> u64 {
        self.0.zero()
    }

    fn one(&self) -> u64 {
        self.0.one()
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(a, b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.0.neg(a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(a, b)
    }

    fn from_int(&self, k: i64) -> u64 {
        self.0.from_int(k)
    }

    fn try_invert(&self, a: &u64) -> Option<u64> {
        self.0.try_invert(a)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        self.0.sample(rng)
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        self.0.elem_to_json(a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64, RingError> {
        self.0.elem_from_json(v)
    }
}

impl Field for FpRing {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::nil_decompose;

    #[test]
    fn mul_mod_8() {
        let r = ModRing::new(8);
        assert_eq!(r.mul(&3, &3), 1);
    }

    #[test]
    fn invert_mod_8() {
        let r = ModRing::new(8);
        assert_eq!(r.try_invert(&3), Some(3));
        assert_eq!(r.try_invert(&2), None);
        assert_eq!(r.try_invert(&0), None);
    }

    #[test]
    fn invert_is_two_sided_everywhere() {
        for m in [2u64, 5, 6, 8, 9, 49, 101] {
            let r = ModRing::new(m);
            for a in 0..m {
                if let Some(b) = r.try_invert(&a) {
                    assert_eq!(r.mul(&a, &b), r.one());
                    assert_eq!(r.mul(&b, &a), r.one());
                }
            }
        }
    }

    #[test]
    fn from_int_reduces_negatives() {
        let r = ModRing::new(8);
        assert_eq!(r.from_int(-21), 3);
        assert_eq!(r.from_int(8), 0);
    }

    #[test]
    fn nil_decompose_mod_9() {
        let r = ModRing::new(9);
        let d = nil_decompose(&r, &4);
        assert_eq!(d.body, 1);
        assert_eq!(d.soul, 3);
        assert_eq!(d.nil_index_bound, 2);
        assert_eq!(r.add(&d.body, &d.soul), 4);
        assert!(r.is_zero(&r.pow(&d.soul, d.nil_index_bound)));
    }

    #[test]
    fn nil_structure_of_prime_modulus_is_trivial() {
        let r = ModRing::new(5);
        assert_eq!(r.quotient_ring().modulus(), 5);
        assert_eq!(r.nil_index(), 1);
        let d = nil_decompose(&r, &3);
        assert_eq!((d.body, d.soul), (3, 0));
    }

    #[test]
    #[should_panic(expected = "not prime")]
    fn fp_rejects_composite_modulus() {
        FpRing::new(6);
    }
}
