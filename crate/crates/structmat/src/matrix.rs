//! Dense square matrices over a ring: structural-pattern checks, the adjoint
//! and preadjoint permutation sums, division-free determinants and
//! characteristic polynomials, and block flattening.

use thiserror::Error;

use crate::poly::MonicPolynomial;
use crate::preorder::Preorder;
use crate::ring::Ring;

/// Largest size the preadjoint accepts by default; each entry sums
/// `(n-1)!^2` ordered products.
pub const PREADJOINT_DEFAULT_CAP: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("operation requires a commutative ring")]
    NoncommutativeRing,
    #[error("matrix size {n} exceeds the supported limit {cap} for this operation")]
    TooLarge { n: usize, cap: usize },
    #[error("rows do not form a square matrix")]
    NotSquare,
    #[error("matrix must have positive size")]
    Empty,
    #[error("blocks must all be {0}x{0}")]
    BlockSizeMismatch(usize),
}

/// Row-major `n x n` matrix of ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    /// Rectangular selection; used for principal minors with `rows == cols`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SquareMatrix<T>
    where
        T: Clone,
    {
        assert_eq!(rows.len(), cols.len());
        SquareMatrix::from_fn(rows.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }
}

/// Lexicographic permutation stream over a sorted index list. Permutations
/// are produced one at a time; nothing holds all `n!` of them at once.
pub(crate) struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn of(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Permutations { next: Some(items) }
    }
}

fn advance(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut next = cur.clone();
        if advance(&mut next) {
            self.next = Some(next);
        }
        Some(cur)
    }
}

/// Sign of a permutation given as the array of images; inversion-count
/// parity.
pub(crate) fn perm_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn zero_matrix<R: Ring>(ring: &R, n: usize) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(n, |_, _| ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> SquareMatrix<R::Elem> {
    scalar_embed(ring, &ring.one(), n)
}

/// The scalar matrix `r I`.
pub fn scalar_embed<R: Ring>(ring: &R, r: &R::Elem, n: usize) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(n, |i, j| if i == j { r.clone() } else { ring.zero() })
}

pub(crate) fn mat_add<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    b: &SquareMatrix<R::Elem>,
) -> SquareMatrix<R::Elem> {
    assert_eq!(a.n(), b.n(), "matrix size mismatch");
    SquareMatrix::from_fn(a.n(), |i, j| ring.add(a.at(i, j), b.at(i, j)))
}

pub(crate) fn mat_sub<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    b: &SquareMatrix<R::Elem>,
) -> SquareMatrix<R::Elem> {
    assert_eq!(a.n(), b.n(), "matrix size mismatch");
    SquareMatrix::from_fn(a.n(), |i, j| ring.sub(a.at(i, j), b.at(i, j)))
}

pub(crate) fn mat_neg<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    a.map(|e| ring.neg(e))
}

pub(crate) fn mat_mul<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    b: &SquareMatrix<R::Elem>,
) -> SquareMatrix<R::Elem> {
    assert_eq!(a.n(), b.n(), "matrix size mismatch");
    let n = a.n();
    SquareMatrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            acc = ring.add(&acc, &ring.mul(a.at(i, k), b.at(k, j)));
        }
        acc
    })
}

/// Exact product of two matrices over the same ring.
pub fn matmul<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    b: &SquareMatrix<R::Elem>,
) -> Result<SquareMatrix<R::Elem>, MatrixError> {
    if a.n() != b.n() {
        return Err(MatrixError::SizeMismatch(a.n(), b.n()));
    }
    Ok(mat_mul(ring, a, b))
}

/// Left-multiplies every entry by the scalar `c`.
pub fn scalar_mul<R: Ring>(
    ring: &R,
    c: &R::Elem,
    a: &SquareMatrix<R::Elem>,
) -> SquareMatrix<R::Elem> {
    a.map(|e| ring.mul(c, e))
}

/// True iff every entry outside the pattern is the ring zero.
pub fn check_structural<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    theta: &Preorder,
) -> Result<bool, MatrixError> {
    if theta.n() != a.n() {
        return Err(MatrixError::SizeMismatch(a.n(), theta.n()));
    }
    for i in 0..a.n() {
        for j in 0..a.n() {
            if !theta.contains(i, j) && !ring.is_zero(a.at(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn det_unchecked<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> R::Elem {
    let n = a.n();
    let mut acc = ring.zero();
    for perm in Permutations::of((0..n).collect()) {
        let mut term = a.at(0, perm[0]).clone();
        for i in 1..n {
            term = ring.mul(&term, a.at(i, perm[i]));
        }
        if perm_sign(&perm) < 0 {
            term = ring.neg(&term);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// Determinant as the signed permutation sum; commutative rings only.
pub fn determinant<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<R::Elem, MatrixError> {
    if !ring.is_commutative() {
        return Err(MatrixError::NoncommutativeRing);
    }
    Ok(det_unchecked(ring, a))
}

/// Classical adjugate by its permutation formula: entry `(r, s)` sums
/// `sgn(rho) * prod_{i != s} a[i, rho(i)]` over the permutations with
/// `rho(s) = r`. Satisfies `A adj(A) = adj(A) A = det(A) I` over commutative
/// rings.
pub fn adjugate<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<SquareMatrix<R::Elem>, MatrixError> {
    if !ring.is_commutative() {
        return Err(MatrixError::NoncommutativeRing);
    }
    let n = a.n();
    let mut out = zero_matrix(ring, n);
    for r in 0..n {
        for s in 0..n {
            let positions: Vec<usize> = (0..n).filter(|&i| i != s).collect();
            let targets: Vec<usize> = (0..n).filter(|&j| j != r).collect();
            let mut acc = ring.zero();
            let mut rho = vec![0usize; n];
            for arrangement in Permutations::of(targets) {
                rho[s] = r;
                for (idx, &p) in positions.iter().enumerate() {
                    rho[p] = arrangement[idx];
                }
                let mut term = ring.one();
                for &i in &positions {
                    term = ring.mul(&term, a.at(i, rho[i]));
                }
                if perm_sign(&rho) < 0 {
                    term = ring.neg(&term);
                }
                acc = ring.add(&acc, &term);
            }
            out.set(r, s, acc);
        }
    }
    Ok(out)
}

/// Preadjoint over an arbitrary ring with the default size cap.
pub fn preadjoint<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<SquareMatrix<R::Elem>, MatrixError> {
    preadjoint_with_cap(ring, a, PREADJOINT_DEFAULT_CAP)
}

/// Preadjoint: entry `(r, s)` sums, over permutations `tau` of the positions
/// other than `s` and permutations `rho` with `rho(s) = r`,
/// `sgn(rho) * a[tau(i_1), rho(tau(i_1))] * ... * a[tau(i_{n-1}), rho(tau(i_{n-1}))]`
/// with factors multiplied left to right in ascending position order
/// `i_1 < ... < i_{n-1}` (`s` omitted). Over a commutative ring this equals
/// `(n-1)!` times the adjugate.
///
/// Terms are streamed; nothing materialises the permutation lists. The cost
/// is `(n-1)!^2` products per entry, hence the size cap.
pub fn preadjoint_with_cap<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    cap: usize,
) -> Result<SquareMatrix<R::Elem>, MatrixError> {
    let n = a.n();
    if n > cap {
        return Err(MatrixError::TooLarge { n, cap });
    }
    let mut out = zero_matrix(ring, n);
    for r in 0..n {
        for s in 0..n {
            let positions: Vec<usize> = (0..n).filter(|&i| i != s).collect();
            let targets: Vec<usize> = (0..n).filter(|&j| j != r).collect();
            let mut acc = ring.zero();
            let mut rho = vec![0usize; n];
            for tau in Permutations::of(positions.clone()) {
                for arrangement in Permutations::of(targets.clone()) {
                    rho[s] = r;
                    for (idx, &p) in positions.iter().enumerate() {
                        rho[p] = arrangement[idx];
                    }
                    let mut term = ring.one();
                    for &t in &tau {
                        term = ring.mul(&term, a.at(t, rho[t]));
                    }
                    if perm_sign(&rho) < 0 {
                        term = ring.neg(&term);
                    }
                    acc = ring.add(&acc, &term);
                }
            }
            out.set(r, s, acc);
        }
    }
    Ok(out)
}

/// Characteristic polynomial, division-free: the coefficient of `x^i` is
/// `(-1)^{n-i}` times the sum of the `(n-i) x (n-i)` principal minors.
/// Monic of degree `n`; the constant term is `(-1)^n det(A)`.
pub fn char_poly<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
) -> Result<MonicPolynomial<R::Elem>, MatrixError> {
    if !ring.is_commutative() {
        return Err(MatrixError::NoncommutativeRing);
    }
    let n = a.n();
    let mut minor_sums = vec![ring.zero(); n + 1];
    minor_sums[0] = ring.one(); // empty principal minor
    for mask in 1u64..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let d = det_unchecked(ring, &a.submatrix(&idx, &idx));
        let k = idx.len();
        minor_sums[k] = ring.add(&minor_sums[k], &d);
    }
    let coeffs: Vec<R::Elem> = (0..=n)
        .map(|i| {
            let k = n - i;
            if k % 2 == 0 {
                minor_sums[k].clone()
            } else {
                ring.neg(&minor_sums[k])
            }
        })
        .collect();
    Ok(MonicPolynomial::new(ring, coeffs).expect("degree n >= 1 and leading 1"))
}

/// Evaluates a polynomial with base-ring coefficients at a matrix,
/// embedding each coefficient as a scalar matrix.
pub fn eval_poly_at_matrix<R: Ring>(
    ring: &R,
    p: &MonicPolynomial<R::Elem>,
    a: &SquareMatrix<R::Elem>,
) -> SquareMatrix<R::Elem> {
    let n = a.n();
    let mut acc = scalar_embed(ring, p.leading(), n);
    for c in p.coeffs().iter().rev().skip(1) {
        acc = mat_add(ring, &scalar_embed(ring, c, n), &mat_mul(ring, &acc, a));
    }
    acc
}

/// Flattens a matrix of `m x m` blocks into an `nm x nm` matrix: entry
/// `(i*m + p, j*m + q)` is entry `(p, q)` of block `(i, j)`. Additive,
/// multiplicative, unit-preserving and injective; a matrix is structural for
/// the blockwise pattern pair iff its image is structural for the composed
/// pattern.
pub fn flatten_blocks<T: Clone>(
    b: &SquareMatrix<SquareMatrix<T>>,
) -> Result<SquareMatrix<T>, MatrixError> {
    let n = b.n();
    let m = b.at(0, 0).n();
    if b.entries().any(|blk| blk.n() != m) {
        return Err(MatrixError::BlockSizeMismatch(m));
    }
    Ok(SquareMatrix::from_fn(n * m, |i, j| {
        b.at(i / m, j / m).at(i % m, j % m).clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::integers::IntRing;
    use crate::ring::modular::ModRing;

    fn int_mat(rows: &[&[i64]]) -> SquareMatrix<num_bigint::BigInt> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| IntRing.from_int(k)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn mod_mat(m: u64, rows: &[&[u64]]) -> SquareMatrix<u64> {
        let ring = ModRing::new(m);
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| k % ring.modulus()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn permutation_stream_covers_symmetric_group() {
        let perms: Vec<Vec<usize>> = Permutations::of(vec![0, 1, 2]).collect();
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert_eq!(perms[5], vec![2, 1, 0]);
        let signs: i32 = perms.iter().map(|p| perm_sign(p)).sum();
        assert_eq!(signs, 0);
    }

    #[test]
    fn determinant_of_identity() {
        let r = IntRing;
        let d = determinant(&r, &identity(&r, 3)).unwrap();
        assert!(r.is_one(&d));
    }

    #[test]
    fn determinant_2x2() {
        let d = determinant(&IntRing, &int_mat(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(d, IntRing.from_int(-2));
    }

    #[test]
    fn determinant_of_triangular_is_diagonal_product() {
        let r = ModRing::new(5);
        let d = determinant(&r, &mod_mat(5, &[&[2, 1], &[0, 3]])).unwrap();
        assert_eq!(d, 1); // 6 mod 5
    }

    #[test]
    fn adjugate_2x2() {
        let adj = adjugate(&IntRing, &int_mat(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(adj, int_mat(&[&[4, -2], &[-3, 1]]));
    }

    #[test]
    fn adjugate_of_identity() {
        let r = IntRing;
        assert_eq!(adjugate(&r, &identity(&r, 3)).unwrap(), identity(&r, 3));
    }

    #[test]
    fn adjugate_preserves_upper_triangular() {
        let adj = adjugate(&IntRing, &int_mat(&[&[2, 1], &[0, 3]])).unwrap();
        assert_eq!(adj, int_mat(&[&[3, -1], &[0, 2]]));
    }

    #[test]
    fn adjugate_identity_on_3x3() {
        let r = IntRing;
        let a = int_mat(&[&[1, 2, 0], &[0, 3, -1], &[2, 0, 1]]);
        let adj = adjugate(&r, &a).unwrap();
        let det = determinant(&r, &a).unwrap();
        let want = scalar_embed(&r, &det, 3);
        assert_eq!(mat_mul(&r, &a, &adj), want);
        assert_eq!(mat_mul(&r, &adj, &a), want);
    }

    #[test]
    fn preadjoint_1x1_is_one_by_empty_product() {
        let r = IntRing;
        let a = int_mat(&[&[7]]);
        assert_eq!(preadjoint(&r, &a).unwrap(), int_mat(&[&[1]]));
    }

    #[test]
    fn preadjoint_equals_adjugate_for_2x2() {
        // (n-1)! = 1 at n = 2
        let a = int_mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            preadjoint(&IntRing, &a).unwrap(),
            adjugate(&IntRing, &a).unwrap()
        );
    }

    #[test]
    fn preadjoint_is_factorial_multiple_of_adjugate_3x3() {
        let r = ModRing::new(6);
        let a = mod_mat(6, &[&[1, 2, 3], &[0, 4, 1], &[5, 0, 2]]);
        let pre = preadjoint(&r, &a).unwrap();
        let adj = adjugate(&r, &a).unwrap();
        assert_eq!(pre, adj.map(|e| r.int_mul(2, e)));
    }

    #[test]
    fn preadjoint_cap_is_enforced() {
        let r = IntRing;
        let a = identity(&r, 6);
        assert_eq!(
            preadjoint(&r, &a).unwrap_err(),
            MatrixError::TooLarge { n: 6, cap: 5 }
        );
        assert!(preadjoint_with_cap(&r, &a, 6).is_ok());
    }

    #[test]
    fn char_poly_of_identity_2x2() {
        let r = IntRing;
        let p = char_poly(&r, &identity(&r, 2)).unwrap();
        assert_eq!(
            p.coeffs(),
            &[r.from_int(1), r.from_int(-2), r.from_int(1)]
        );
    }

    #[test]
    fn char_poly_2x2() {
        let r = IntRing;
        let p = char_poly(&r, &int_mat(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(
            p.coeffs(),
            &[r.from_int(-2), r.from_int(-5), r.from_int(1)]
        );
    }

    #[test]
    fn char_poly_of_diagonal() {
        let r = IntRing;
        let p = char_poly(&r, &int_mat(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(p.coeffs(), &[r.from_int(6), r.from_int(-5), r.from_int(1)]);
    }

    #[test]
    fn cayley_hamilton_3x3() {
        let r = IntRing;
        let a = int_mat(&[&[1, 2, 0], &[0, 3, -1], &[2, 0, 1]]);
        let p = char_poly(&r, &a).unwrap();
        assert_eq!(eval_poly_at_matrix(&r, &p, &a), zero_matrix(&r, 3));
    }

    #[test]
    fn matmul_modular_inverse_pair() {
        let r = ModRing::new(5);
        let a = mod_mat(5, &[&[2, 1], &[0, 3]]);
        let b = mod_mat(5, &[&[3, 4], &[0, 2]]);
        assert_eq!(matmul(&r, &a, &b).unwrap(), identity(&r, 2));
    }

    #[test]
    fn matmul_rejects_size_mismatch() {
        let r = IntRing;
        let a = identity(&r, 2);
        let b = identity(&r, 3);
        assert_eq!(
            matmul(&r, &a, &b).unwrap_err(),
            MatrixError::SizeMismatch(2, 3)
        );
    }

    #[test]
    fn structural_check_against_patterns() {
        use crate::preorder::{Preorder, Relation};
        let r = ModRing::new(5);
        let upper =
            Preorder::try_new(Relation::from_pairs_1based(2, &[(1, 1), (1, 2), (2, 2)]).unwrap())
                .unwrap();
        assert!(check_structural(&r, &identity(&r, 2), &upper).unwrap());
        assert!(check_structural(&r, &mod_mat(5, &[&[2, 1], &[0, 3]]), &upper).unwrap());
        assert!(!check_structural(&r, &mod_mat(5, &[&[2, 0], &[1, 3]]), &upper).unwrap());
        assert_eq!(
            check_structural(&r, &identity(&r, 3), &upper).unwrap_err(),
            MatrixError::SizeMismatch(3, 2)
        );
    }

    #[test]
    fn flatten_block_identity() {
        let r = ModRing::new(5);
        let block_i = identity(&r, 2);
        let block_0 = zero_matrix(&r, 2);
        let b = SquareMatrix::from_rows(vec![
            vec![block_i.clone(), block_0.clone()],
            vec![block_0, block_i],
        ])
        .unwrap();
        assert_eq!(flatten_blocks(&b).unwrap(), identity(&r, 4));
    }

    #[test]
    fn flatten_single_block_is_the_block() {
        let a = mod_mat(5, &[&[1, 2], &[3, 4]]);
        let b = SquareMatrix::from_rows(vec![vec![a.clone()]]).unwrap();
        assert_eq!(flatten_blocks(&b).unwrap(), a);
    }

    #[test]
    fn scalar_embed_matches_diag() {
        let r = IntRing;
        let e = scalar_embed(&r, &r.from_int(0), 2);
        assert_eq!(e, zero_matrix(&r, 2));
        let d = scalar_embed(&r, &r.from_int(3), 2);
        assert_eq!(d, int_mat(&[&[3, 0], &[0, 3]]));
    }
}
