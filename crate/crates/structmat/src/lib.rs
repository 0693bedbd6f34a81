//! Exact matrix algebra over pluggable (possibly noncommutative) rings with
//! structural sparsity patterns given by reflexive-transitive relations.
//!
//! The core is generic over a [`ring::Ring`] object that interprets element
//! payloads; concrete rings (integers, rationals, `Z/m`, full matrix rings,
//! Grassmann algebras, the shift-style algebra with `xy = 1`) plug into the
//! same matrix, inversion and property-testing machinery. The aliases below
//! name the instantiations the tool ships with.

pub mod inverse;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod preorder;
pub mod ring;

pub mod harness;

pub use matrix::SquareMatrix;
pub use preorder::{Preorder, Relation};

use ring::grassmann::GrassmannRing;
use ring::integers::IntRing;
use ring::jacobson::JacobsonRing;
use ring::matrix_ring::SquareMatrixRing;
use ring::modular::{FpRing, ModRing};
use ring::rationals::RatRing;

/// Grassmann algebra over the rationals.
pub type GrassmannQ = GrassmannRing<RatRing>;
/// Grassmann algebra over a prime field.
pub type GrassmannFp = GrassmannRing<FpRing>;
/// The `xy = 1` algebra over the rationals.
pub type JacobsonQ = JacobsonRing<RatRing>;
/// The `xy = 1` algebra over a prime field.
pub type JacobsonFp = JacobsonRing<FpRing>;
/// Full matrix ring over `Z/m`.
pub type ModMatrixRing = SquareMatrixRing<ModRing>;
/// Full matrix ring over the integers.
pub type IntMatrixRing = SquareMatrixRing<IntRing>;

/// Matrix of arbitrary-precision integers.
pub type IntMatrix = SquareMatrix<num_bigint::BigInt>;
/// Matrix of rationals.
pub type RatMatrix = SquareMatrix<num_rational::BigRational>;
/// Matrix of residues modulo some `m` (the ring object carries the modulus).
pub type ModMatrix = SquareMatrix<u64>;
