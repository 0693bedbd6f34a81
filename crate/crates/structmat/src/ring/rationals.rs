//! The rational field, used directly and as a coefficient field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::descriptor::RingDescriptor;
use super::{Field, Ring, RingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatRing;

impl Ring for RatRing {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Rationals
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn from_int(&self, k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }

    fn try_invert(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=4);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        if a.denom().is_one() {
            Value::String(a.numer().to_string())
        } else {
            Value::String(format!("{}/{}", a.numer(), a.denom()))
        }
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational, RingError> {
        match v {
            Value::String(s) => match s.split_once('/') {
                Some((num, den)) => {
                    let num = num
                        .parse::<BigInt>()
                        .map_err(|e| RingError::bad_element("rationals", format!("{s:?}: {e}")))?;
                    let den = den
                        .parse::<BigInt>()
                        .map_err(|e| RingError::bad_element("rationals", format!("{s:?}: {e}")))?;
                    if den.is_zero() {
                        return Err(RingError::bad_element("rationals", "zero denominator"));
                    }
                    Ok(BigRational::new(num, den))
                }
                None => s
                    .parse::<BigInt>()
                    .map(BigRational::from_integer)
                    .map_err(|e| RingError::bad_element("rationals", format!("{s:?}: {e}"))),
            },
            Value::Number(n) => n
                .as_i64()
                .map(|k| self.from_int(k))
                .ok_or_else(|| RingError::bad_element("rationals", format!("{n} is not exact"))),
            other => Err(RingError::bad_element(
                "rationals",
                format!("expected \"p/q\" string, got {other}"),
            )),
        }
    }
}

impl Field for RatRing {}
