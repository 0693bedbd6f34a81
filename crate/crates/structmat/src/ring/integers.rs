//! Arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::RingDescriptor;
use super::{Ring, RingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn from_int(&self, k: i64) -> BigInt {
        BigInt::from(k)
    }

    fn try_invert(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BigInt {
        BigInt::from(rng.random_range(-9i64..=9))
    }

    fn elem_to_json(&self, a: &BigInt) -> Value {
        Value::String(a.to_string())
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigInt, RingError> {
        match v {
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|e| RingError::bad_element("int", format!("{s:?}: {e}"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| RingError::bad_element("int", format!("{n} is not an integer"))),
            other => Err(RingError::bad_element(
                "int",
                format!("expected decimal string, got {other}"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse() {
        let r = IntRing;
        assert!(r.is_zero(&r.add(&r.from_int(2), &r.from_int(-2))));
    }

    #[test]
    fn only_signs_are_units() {
        let r = IntRing;
        assert_eq!(r.try_invert(&r.from_int(1)), Some(r.from_int(1)));
        assert_eq!(r.try_invert(&r.from_int(-1)), Some(r.from_int(-1)));
        assert_eq!(r.try_invert(&r.from_int(2)), None);
        assert_eq!(r.try_invert(&r.zero()), None);
    }

    #[test]
    fn json_is_decimal_string() {
        let r = IntRing;
        let v = r.elem_to_json(&r.from_int(-42));
        assert_eq!(v, Value::String("-42".into()));
        assert_eq!(r.elem_from_json(&v).unwrap(), r.from_int(-42));
        assert_eq!(
            r.elem_from_json(&serde_json::json!(7)).unwrap(),
            r.from_int(7)
        );
        assert!(r.elem_from_json(&serde_json::json!(1.5)).is_err());
    }
}
