//! JSON document formats and the descriptor-driven dispatch behind the CLI:
//! matrix documents, polynomial documents, inverse certificates, and the
//! preorder file operations.
//!
//! A matrix document is
//! `{"ring": <descriptor>, "n": 2, "theta": {...}?, "entries": [[...], ...]}`
//! with row-major entries (1-based indices in the docs) encoded per ring:
//! integers as decimal strings, residues as numbers, matrix entries as
//! nested arrays, Grassmann elements as `[coeff, [indices]]` term lists,
//! and `y^i x^j` sums as `[coeff, i, j]` term lists.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::inverse::{
    inv_adjugate, inv_by_power_order, inv_nil_geometric, inv_via_char_poly,
    invert_via_annihilator, InverseCertificate, InverseError, InverseMethod,
};
use crate::matrix::{self, MatrixError, SquareMatrix};
use crate::poly::{MonicPolynomial, PolyError};
use crate::preorder::{closure, Preorder, PreorderError, RelationDoc};
use crate::ring::descriptor::{DescriptorError, RingDescriptor};
use crate::ring::grassmann::GrassmannRing;
use crate::ring::matrix_ring::SquareMatrixRing;
use crate::ring::modular::{FpRing, ModRing};
use crate::ring::rationals::RatRing;
use crate::ring::{Ring, RingError};
use crate::with_ring;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Inverse(#[from] InverseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Invalid(String),
}

/// Matrix document; `entries` stays ring-encoded until a descriptor
/// interprets it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub ring: RingDescriptor,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<RelationDoc>,
    pub entries: Value,
}

impl MatrixDoc {
    pub fn from_json_str(s: &str) -> Result<Self, DocError> {
        let doc: MatrixDoc = serde_json::from_str(s)?;
        doc.ring.validate()?;
        if doc.n == 0 {
            return Err(DocError::Invalid("matrix size must be positive".into()));
        }
        Ok(doc)
    }

    /// The embedded pattern, validated strictly or closed on request.
    pub fn theta(&self, close: bool) -> Result<Option<Preorder>, DocError> {
        match &self.theta {
            None => Ok(None),
            Some(doc) => {
                if doc.n != self.n {
                    return Err(DocError::Invalid(format!(
                        "theta is on {} points but the matrix has size {}",
                        doc.n, self.n
                    )));
                }
                Ok(Some(resolve_preorder(doc, close)?))
            }
        }
    }
}

/// Polynomial document: base-ring coefficients `c_0, ..., c_d`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyDoc {
    pub ring: RingDescriptor,
    pub coeffs: Vec<Value>,
}

pub fn parse_matrix<R: Ring>(
    ring: &R,
    n: usize,
    entries: &Value,
) -> Result<SquareMatrix<R::Elem>, DocError> {
    Ok(SquareMatrixRing::new(ring.clone(), n).elem_from_json(entries)?)
}

pub fn matrix_value<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> Value {
    SquareMatrixRing::new(ring.clone(), a.n()).elem_to_json(a)
}

pub fn matrix_doc<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    theta: Option<&Preorder>,
) -> MatrixDoc {
    MatrixDoc {
        ring: ring.descriptor(),
        n: a.n(),
        theta: theta.map(RelationDoc::from_preorder),
        entries: matrix_value(ring, a),
    }
}

fn certificate_value<R: Ring>(
    ring: &R,
    cert: &InverseCertificate<SquareMatrix<R::Elem>>,
) -> Value {
    json!({
        "method": cert.method.as_str(),
        "inverse": matrix_doc(ring, &cert.inverse, None),
        "verified": cert.checks.left_product_is_identity && cert.checks.right_product_is_identity,
        "structural": cert.structural,
    })
}

/// Strict-or-closing interpretation of a relation file as a preorder.
pub fn resolve_preorder(doc: &RelationDoc, close: bool) -> Result<Preorder, DocError> {
    let rel = doc.to_relation()?;
    if close {
        Ok(closure(&rel))
    } else {
        Ok(Preorder::try_new(rel)?)
    }
}

// ---- preorder file operations ----

pub fn preorder_validate(doc: &RelationDoc) -> Result<Value, DocError> {
    let rel = doc.to_relation()?;
    match rel.check_preorder() {
        Ok(()) => Ok(json!({"valid": true})),
        Err(e) => Ok(json!({"valid": false, "reason": e.to_string()})),
    }
}

pub fn preorder_close(doc: &RelationDoc) -> Result<RelationDoc, DocError> {
    let rel = doc.to_relation()?;
    Ok(RelationDoc::from_preorder(&closure(&rel)))
}

pub fn preorder_compose(
    a: &RelationDoc,
    b: &RelationDoc,
    close: bool,
) -> Result<RelationDoc, DocError> {
    let pa = resolve_preorder(a, close)?;
    let pb = resolve_preorder(b, close)?;
    Ok(RelationDoc::from_preorder(&pa.compose_kron(&pb)))
}

// ---- matrix file operations ----

pub fn matrix_det(doc: &MatrixDoc) -> Result<Value, DocError> {
    with_ring!(&doc.ring, |ring| {
        let a = parse_matrix(&ring, doc.n, &doc.entries)?;
        let det = matrix::determinant(&ring, &a)?;
        Ok(json!({"ring": ring.descriptor(), "det": ring.elem_to_json(&det)}))
    })
}

pub fn matrix_adj(doc: &MatrixDoc) -> Result<MatrixDoc, DocError> {
    with_ring!(&doc.ring, |ring| {
        let a = parse_matrix(&ring, doc.n, &doc.entries)?;
        let adj = matrix::adjugate(&ring, &a)?;
        Ok(matrix_doc(&ring, &adj, None))
    })
}

pub fn matrix_preadj(doc: &MatrixDoc) -> Result<MatrixDoc, DocError> {
    with_ring!(&doc.ring, |ring| {
        let a = parse_matrix(&ring, doc.n, &doc.entries)?;
        let pre = matrix::preadjoint(&ring, &a)?;
        Ok(matrix_doc(&ring, &pre, None))
    })
}

pub fn matrix_charpoly(doc: &MatrixDoc) -> Result<PolyDoc, DocError> {
    with_ring!(&doc.ring, |ring| {
        let a = parse_matrix(&ring, doc.n, &doc.entries)?;
        let p = matrix::char_poly(&ring, &a)?;
        Ok(PolyDoc {
            ring: ring.descriptor(),
            coeffs: p.coeffs().iter().map(|c| ring.elem_to_json(c)).collect(),
        })
    })
}

/// Structural membership test for a matrix file against a pattern file.
pub fn check_structural_docs(
    matrix: &MatrixDoc,
    theta: &RelationDoc,
    close: bool,
) -> Result<bool, DocError> {
    let p = resolve_preorder(theta, close)?;
    with_ring!(&matrix.ring, |ring| {
        let a = parse_matrix(&ring, matrix.n, &matrix.entries)?;
        Ok(matrix::check_structural(&ring, &a, &p)?)
    })
}

/// Inversion method selection at the file level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Adjugate,
    CharPoly,
    Annihilator,
    Power,
    NilGeom,
}

impl MethodChoice {
    pub fn parse(s: &str) -> Result<Self, DocError> {
        match s {
            "adjugate" => Ok(MethodChoice::Adjugate),
            "charpoly" => Ok(MethodChoice::CharPoly),
            "annihilator" => Ok(MethodChoice::Annihilator),
            "power" => Ok(MethodChoice::Power),
            "nilgeom" => Ok(MethodChoice::NilGeom),
            other => Err(DocError::Invalid(format!(
                "unknown method {other:?}; expected adjugate|charpoly|annihilator|power|nilgeom"
            ))),
        }
    }
}

fn with_structural_check<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    theta: Option<&Preorder>,
    mut cert: InverseCertificate<SquareMatrix<R::Elem>>,
) -> InverseCertificate<SquareMatrix<R::Elem>> {
    if cert.structural.is_none() {
        if let Some(t) = theta {
            if matrix::check_structural(ring, a, t).unwrap_or(false) {
                cert.structural = matrix::check_structural(ring, &cert.inverse, t).ok();
            }
        }
    }
    cert
}

fn invert_nilgeom(
    doc: &MatrixDoc,
    theta: Option<&Preorder>,
) -> Result<Value, DocError> {
    match &doc.ring {
        RingDescriptor::Grassmann { generators, base } => match &**base {
            RingDescriptor::Rationals => {
                let ring = GrassmannRing::new(*generators, RatRing);
                let a = parse_matrix(&ring, doc.n, &doc.entries)?;
                let cert = inv_nil_geometric(&ring, &a, theta)?;
                Ok(certificate_value(&ring, &cert))
            }
            RingDescriptor::Modular { modulus } => {
                let ring = GrassmannRing::new(*generators, FpRing::new(*modulus));
                let a = parse_matrix(&ring, doc.n, &doc.entries)?;
                let cert = inv_nil_geometric(&ring, &a, theta)?;
                Ok(certificate_value(&ring, &cert))
            }
            _ => unreachable!("descriptor validated"),
        },
        RingDescriptor::Modular { modulus } => {
            let ring = ModRing::new(*modulus);
            let a = parse_matrix(&ring, doc.n, &doc.entries)?;
            let cert = inv_nil_geometric(&ring, &a, theta)?;
            Ok(certificate_value(&ring, &cert))
        }
        other => Err(RingError::UnsupportedRing(other.kind_name().to_string()).into()),
    }
}

/// Inverts a matrix document, routing to the first applicable method when
/// none is forced: adjugate for commutative rings, the nil lift for
/// Grassmann entries, power iteration for finite noncommutative rings.
/// Rings outside those classes (the `xy = 1` algebra in particular) report
/// `NoMethodApplicable`: generic inversion there can escape any subring, so
/// the tool refuses to guess.
pub fn matrix_invert(
    doc: &MatrixDoc,
    method: Option<MethodChoice>,
    poly: Option<&PolyDoc>,
    close_theta: bool,
) -> Result<Value, DocError> {
    let theta = doc.theta(close_theta)?;
    let theta = theta.as_ref();
    match method {
        None => {
            if doc.ring.is_commutative() {
                with_ring!(&doc.ring, |ring| {
                    let a = parse_matrix(&ring, doc.n, &doc.entries)?;
                    let cert = with_structural_check(&ring, &a, theta, inv_adjugate(&ring, &a)?);
                    Ok(certificate_value(&ring, &cert))
                })
            } else if matches!(doc.ring, RingDescriptor::Grassmann { .. }) {
                invert_nilgeom(doc, theta)
            } else if doc.ring.is_finite() {
                with_ring!(&doc.ring, |ring| {
                    let mring = SquareMatrixRing::new(ring.clone(), doc.n);
                    let a = parse_matrix(&ring, doc.n, &doc.entries)?;
                    let cert =
                        with_structural_check(&ring, &a, theta, inv_by_power_order(&mring, &a)?);
                    Ok(certificate_value(&ring, &cert))
                })
            } else {
                Err(InverseError::NoMethodApplicable.into())
            }
        }
        Some(MethodChoice::Adjugate) => with_ring!(&doc.ring, |ring| {
            let a = parse_matrix(&ring, doc.n, &doc.entries)?;
            let cert = with_structural_check(&ring, &a, theta, inv_adjugate(&ring, &a)?);
            Ok(certificate_value(&ring, &cert))
        }),
        Some(MethodChoice::CharPoly) => with_ring!(&doc.ring, |ring| {
            let a = parse_matrix(&ring, doc.n, &doc.entries)?;
            let cert = with_structural_check(&ring, &a, theta, inv_via_char_poly(&ring, &a)?);
            Ok(certificate_value(&ring, &cert))
        }),
        Some(MethodChoice::Annihilator) => with_ring!(&doc.ring, |ring| {
            let a = parse_matrix(&ring, doc.n, &doc.entries)?;
            let p = match poly {
                Some(pd) => {
                    if pd.ring != doc.ring {
                        return Err(DocError::Invalid(
                            "polynomial and matrix ring descriptors differ".into(),
                        ));
                    }
                    let coeffs = pd
                        .coeffs
                        .iter()
                        .map(|c| ring.elem_from_json(c))
                        .collect::<Result<Vec<_>, _>>()?;
                    MonicPolynomial::new(&ring, coeffs)?
                }
                None => matrix::char_poly(&ring, &a)?,
            };
            let mring = SquareMatrixRing::new(ring.clone(), doc.n);
            let lifted = p.map_coeffs(&mring, |c| matrix::scalar_embed(&ring, c, doc.n));
            let cert = invert_via_annihilator(&mring, &a, &lifted, InverseMethod::MonicAnnihilator)?;
            let cert = with_structural_check(&ring, &a, theta, cert);
            Ok(certificate_value(&ring, &cert))
        }),
        Some(MethodChoice::Power) => with_ring!(&doc.ring, |ring| {
            let mring = SquareMatrixRing::new(ring.clone(), doc.n);
            let a = parse_matrix(&ring, doc.n, &doc.entries)?;
            let cert = with_structural_check(&ring, &a, theta, inv_by_power_order(&mring, &a)?);
            Ok(certificate_value(&ring, &cert))
        }),
        Some(MethodChoice::NilGeom) => invert_nilgeom(doc, theta),
    }
}
