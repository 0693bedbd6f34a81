//! Dynamic identification of the supported rings, with the JSON encoding
//! used by every file format: `{"kind":"grassmann","generators":2,"base":
//! {"kind":"mod","modulus":5}}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingDescriptor {
    /// Arbitrary-precision integers.
    #[serde(rename = "int")]
    Integers,
    /// The rational field; also the default coefficient field.
    #[serde(rename = "rationals")]
    Rationals,
    /// Integers modulo `modulus`.
    #[serde(rename = "mod")]
    Modular { modulus: u64 },
    /// Full `size x size` matrix ring over a commutative base.
    #[serde(rename = "matrix")]
    Matrix {
        size: usize,
        base: Box<RingDescriptor>,
    },
    /// Exterior algebra on `generators` anticommuting generators over a field.
    #[serde(rename = "grassmann")]
    Grassmann {
        generators: usize,
        base: Box<RingDescriptor>,
    },
    /// The algebra on two generators x, y subject to xy = 1, over a field.
    /// Normal-form basis is the monomials y^i x^j.
    #[serde(rename = "jacobson")]
    Jacobson { base: Box<RingDescriptor> },
}

/// Largest accepted modulus; keeps products in `u64` and factoring cheap.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest accepted Grassmann generator count; the basis has `2^g` monomials.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("modulus must satisfy 2 <= m <= {MAX_MODULUS}, got {0}")]
    BadModulus(u64),
    #[error("matrix ring size must be >= 1")]
    BadMatrixSize,
    #[error("matrix ring base must be one of int, rationals, mod; got {0}")]
    BadMatrixBase(String),
    #[error("grassmann generator count must satisfy 1 <= g <= {MAX_GENERATORS}, got {0}")]
    BadGeneratorCount(usize),
    #[error("coefficient field must be rationals or mod with a prime modulus; got {0}")]
    BadFieldBase(String),
}

pub fn is_prime_u64(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factors `m >= 2` into `(prime, exponent)` pairs by trial division.
pub fn factorize_u64(mut m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 2);
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

impl RingDescriptor {
    pub fn kind_name(&self) -> &'static str {
        match self {
            RingDescriptor::Integers => "int",
            RingDescriptor::Rationals => "rationals",
            RingDescriptor::Modular { .. } => "mod",
            RingDescriptor::Matrix { .. } => "matrix",
            RingDescriptor::Grassmann { .. } => "grassmann",
            RingDescriptor::Jacobson { .. } => "jacobson",
        }
    }

    fn check_field_base(base: &RingDescriptor) -> Result<(), DescriptorError> {
        match base {
            RingDescriptor::Rationals => Ok(()),
            RingDescriptor::Modular { modulus } => {
                if *modulus < 2 || *modulus > MAX_MODULUS {
                    Err(DescriptorError::BadModulus(*modulus))
                } else if !is_prime_u64(*modulus) {
                    Err(DescriptorError::BadFieldBase(format!("mod {modulus}")))
                } else {
                    Ok(())
                }
            }
            other => Err(DescriptorError::BadFieldBase(other.kind_name().to_string())),
        }
    }

    pub fn validate(&self) -> Result<(), DescriptorError> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => Ok(()),
            RingDescriptor::Modular { modulus } => {
                if *modulus < 2 || *modulus > MAX_MODULUS {
                    Err(DescriptorError::BadModulus(*modulus))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::Matrix { size, base } => {
                if *size == 0 {
                    return Err(DescriptorError::BadMatrixSize);
                }
                match &**base {
                    RingDescriptor::Integers | RingDescriptor::Rationals => Ok(()),
                    RingDescriptor::Modular { .. } => base.validate(),
                    other => Err(DescriptorError::BadMatrixBase(other.kind_name().to_string())),
                }
            }
            RingDescriptor::Grassmann { generators, base } => {
                if *generators == 0 || *generators > MAX_GENERATORS {
                    return Err(DescriptorError::BadGeneratorCount(*generators));
                }
                Self::check_field_base(base)
            }
            RingDescriptor::Jacobson { base } => Self::check_field_base(base),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => true,
            RingDescriptor::Modular { .. } => true,
            RingDescriptor::Matrix { size, base } => *size == 1 && base.is_commutative(),
            RingDescriptor::Grassmann { generators, .. } => *generators <= 1,
            RingDescriptor::Jacobson { .. } => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => false,
            RingDescriptor::Modular { .. } => true,
            RingDescriptor::Matrix { base, .. } | RingDescriptor::Grassmann { base, .. } => {
                base.is_finite()
            }
            RingDescriptor::Jacobson { .. } => false,
        }
    }

    /// True for the rings with an implemented nilradical (quotient + lift).
    pub fn has_nil_structure(&self) -> bool {
        matches!(
            self,
            RingDescriptor::Modular { .. } | RingDescriptor::Grassmann { .. }
        )
    }
}

/// Runs `$body` with `$ring` bound to the concrete ring for a validated
/// descriptor. Every arm must produce the same type. Panics on descriptors
/// that do not pass [`RingDescriptor::validate`]; validate at the boundary
/// first.
#[macro_export]
macro_rules! with_ring {
    ($desc:expr, |$ring:ident| $body:expr) => {{
        use $crate::ring::descriptor::RingDescriptor as __Desc;
        use $crate::ring::grassmann::GrassmannRing as __Gr;
        use $crate::ring::integers::IntRing as __Int;
        use $crate::ring::jacobson::JacobsonRing as __Jac;
        use $crate::ring::matrix_ring::SquareMatrixRing as __MatR;
        use $crate::ring::modular::{FpRing as __Fp, ModRing as __Mod};
        use $crate::ring::rationals::RatRing as __Rat;
        match $desc {
            __Desc::Integers => {
                let $ring = __Int;
                $body
            }
            __Desc::Rationals => {
                let $ring = __Rat;
                $body
            }
            __Desc::Modular { modulus } => {
                let $ring = __Mod::new(*modulus);
                $body
            }
            __Desc::Matrix { size, base } => match &**base {
                __Desc::Integers => {
                    let $ring = __MatR::new(__Int, *size);
                    $body
                }
                __Desc::Rationals => {
                    let $ring = __MatR::new(__Rat, *size);
                    $body
                }
                __Desc::Modular { modulus } => {
                    let $ring = __MatR::new(__Mod::new(*modulus), *size);
                    $body
                }
                _ => panic!("invalid matrix base; descriptors must be validated first"),
            },
            __Desc::Grassmann { generators, base } => match &**base {
                __Desc::Rationals => {
                    let $ring = __Gr::new(*generators, __Rat);
                    $body
                }
                __Desc::Modular { modulus } => {
                    let $ring = __Gr::new(*generators, __Fp::new(*modulus));
                    $body
                }
                _ => panic!("invalid grassmann base; descriptors must be validated first"),
            },
            __Desc::Jacobson { base } => match &**base {
                __Desc::Rationals => {
                    let $ring = __Jac::new(__Rat);
                    $body
                }
                __Desc::Modular { modulus } => {
                    let $ring = __Jac::new(__Fp::new(*modulus));
                    $body
                }
                _ => panic!("invalid jacobson base; descriptors must be validated first"),
            },
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RingDescriptor {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let d = parse(r#"{"kind":"grassmann","generators":2,"base":{"kind":"mod","modulus":5}}"#);
        assert_eq!(
            d,
            RingDescriptor::Grassmann {
                generators: 2,
                base: Box::new(RingDescriptor::Modular { modulus: 5 }),
            }
        );
        let back = serde_json::to_value(&d).unwrap();
        assert_eq!(
            back,
            serde_json::json!({"kind":"grassmann","generators":2,"base":{"kind":"mod","modulus":5}})
        );
    }

    #[test]
    fn flags_match_kind() {
        assert!(parse(r#"{"kind":"int"}"#).is_commutative());
        assert!(!parse(r#"{"kind":"int"}"#).is_finite());
        let m8 = parse(r#"{"kind":"mod","modulus":8}"#);
        assert!(m8.is_commutative() && m8.is_finite());
        let mat = parse(r#"{"kind":"matrix","size":2,"base":{"kind":"mod","modulus":4}}"#);
        assert!(!mat.is_commutative() && mat.is_finite());
        let g1 = parse(r#"{"kind":"grassmann","generators":1,"base":{"kind":"rationals"}}"#);
        assert!(g1.is_commutative() && !g1.is_finite());
        let g3 = parse(r#"{"kind":"grassmann","generators":3,"base":{"kind":"mod","modulus":5}}"#);
        assert!(!g3.is_commutative() && g3.is_finite());
        let jac = parse(r#"{"kind":"jacobson","base":{"kind":"rationals"}}"#);
        assert!(!jac.is_commutative() && !jac.is_finite());
    }

    #[test]
    fn validation_rejects_bad_shapes() {
        assert!(parse(r#"{"kind":"mod","modulus":1}"#).validate().is_err());
        assert!(
            parse(r#"{"kind":"grassmann","generators":0,"base":{"kind":"rationals"}}"#)
                .validate()
                .is_err()
        );
        assert!(
            parse(r#"{"kind":"grassmann","generators":2,"base":{"kind":"mod","modulus":6}}"#)
                .validate()
                .is_err()
        );
        assert!(
            parse(r#"{"kind":"matrix","size":2,"base":{"kind":"jacobson","base":{"kind":"rationals"}}}"#)
                .validate()
                .is_err()
        );
        assert!(
            parse(r#"{"kind":"matrix","size":2,"base":{"kind":"mod","modulus":4}}"#)
                .validate()
                .is_ok()
        );
    }

    #[test]
    fn primes_and_factorization() {
        assert!(is_prime_u64(2) && is_prime_u64(3) && is_prime_u64(101));
        assert!(!is_prime_u64(1) && !is_prime_u64(9) && !is_prime_u64(49));
        assert_eq!(factorize_u64(9), vec![(3, 2)]);
        assert_eq!(factorize_u64(49), vec![(7, 2)]);
        assert_eq!(factorize_u64(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize_u64(101), vec![(101, 1)]);
    }
}
