//! Independent oracles for the dual-route checks. Everything here computes
//! by a different algorithm than the library path it is checked against:
//! cofactor recursion instead of permutation sums, fixpoint saturation
//! instead of Warshall, word rewriting instead of the closed-form exponent
//! rule, and swap counting instead of the bit trick.

#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use structmat::preorder::Relation;
use structmat::ring::Ring;
use structmat::SquareMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Determinant by cofactor expansion along the first row.
pub fn oracle_det<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> R::Elem {
    let n = a.n();
    if n == 1 {
        return a.at(0, 0).clone();
    }
    let mut acc = ring.zero();
    let rows: Vec<usize> = (1..n).collect();
    for j in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = oracle_det(ring, &a.submatrix(&rows, &cols));
        let mut term = ring.mul(a.at(0, j), &minor);
        if j % 2 == 1 {
            term = ring.neg(&term);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// Adjugate as the transposed cofactor matrix: entry `(r, s)` is
/// `(-1)^{r+s}` times the minor with row `s` and column `r` removed.
pub fn oracle_adjugate<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    let n = a.n();
    SquareMatrix::from_fn(n, |r, s| {
        if n == 1 {
            return ring.one();
        }
        let rows: Vec<usize> = (0..n).filter(|&i| i != s).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| j != r).collect();
        let minor = oracle_det(ring, &a.submatrix(&rows, &cols));
        if (r + s) % 2 == 0 {
            minor
        } else {
            ring.neg(&minor)
        }
    })
}

/// Reflexive-transitive closure by fixpoint saturation: keep adding implied
/// pairs until nothing changes.
pub fn oracle_closure(rel: &Relation) -> Relation {
    let n = rel.n();
    let mut r = rel.clone();
    for i in 0..n {
        r.insert(i, i);
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !r.contains(i, j) {
                    continue;
                }
                for k in 0..n {
                    if r.contains(j, k) && !r.contains(i, k) {
                        r.insert(i, k);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

/// Product of `y^i x^j` and `y^k x^l` by literal word rewriting: spell the
/// word out and cancel adjacent `x y` pairs until none remain.
pub fn oracle_jacobson_mul(i: u32, j: u32, k: u32, l: u32) -> (u32, u32) {
    let mut word: Vec<u8> = Vec::new();
    word.extend(std::iter::repeat(b'y').take(i as usize));
    word.extend(std::iter::repeat(b'x').take(j as usize));
    word.extend(std::iter::repeat(b'y').take(k as usize));
    word.extend(std::iter::repeat(b'x').take(l as usize));
    loop {
        let hit = (0..word.len().saturating_sub(1))
            .find(|&t| word[t] == b'x' && word[t + 1] == b'y');
        match hit {
            Some(t) => {
                word.drain(t..t + 2);
            }
            None => break,
        }
    }
    let ys = word.iter().filter(|&&c| c == b'y').count() as u32;
    (ys, word.len() as u32 - ys)
}

/// Sign of a product of Grassmann basis monomials by counting adjacent
/// transpositions while bubble-sorting the concatenated index lists; `None`
/// when an index repeats.
pub fn oracle_grassmann_sign(s: u64, t: u64) -> Option<(i32, u64)> {
    let bits = |m: u64| (0..64u32).filter(move |&b| m >> b & 1 == 1);
    let mut list: Vec<u32> = bits(s).chain(bits(t)).collect();
    let mut swaps = 0usize;
    loop {
        let mut moved = false;
        for idx in 0..list.len().saturating_sub(1) {
            if list[idx] > list[idx + 1] {
                list.swap(idx, idx + 1);
                swaps += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    if list.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((sign, s | t))
}
