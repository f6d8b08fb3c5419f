//! Exact rank of sparse integer matrices over the rationals.
//!
//! A matrix is handed over as a list of sparse vectors (its columns, or its
//! rows; rank does not care). Vectors are reduced against previously accepted
//! pivots with fraction-free elimination and content normalization. Entries
//! live in `i128` with checked arithmetic; if anything overflows, the whole
//! computation restarts on `BigInt`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse vector: `(index, value)` pairs, any order, duplicates summed.
pub type SparseVec = Vec<(usize, i64)>;

trait Scalar: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a*b - c*d`, or `None` on overflow.
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn gcd(a: &Self, b: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn normalize_sign(v: &mut [(usize, Self)]);
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        // i128::MIN has no positive gcd representation; treat as overflow upstream.
        Integer::gcd(a, b)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn normalize_sign(v: &mut [(usize, Self)]) {
        if v.first().is_some_and(|(_, x)| *x < 0) {
            for (_, x) in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        Integer::gcd(a, b)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn normalize_sign(v: &mut [(usize, Self)]) {
        if v.first().is_some_and(|(_, x)| x.is_negative()) {
            for (_, x) in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn prepare<T: Scalar>(v: &SparseVec) -> Vec<(usize, T)> {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for &(i, x) in v {
        *acc.entry(i).or_insert(0) += x;
    }
    let mut out: Vec<(usize, T)> = acc
        .into_iter()
        .filter(|&(_, x)| x != 0)
        .map(|(i, x)| (i, T::from_i64(x)))
        .collect();
    out.sort_by_key(|&(i, _)| i);
    out
}

/// Divides out the content so entries stay small.
fn make_primitive<T: Scalar>(v: &mut [(usize, T)]) {
    let Some((_, first)) = v.first() else {
        return;
    };
    let mut g = first.clone();
    for (_, x) in v.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = T::gcd(&g, x);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
    T::normalize_sign(v);
}

/// `a*v - b*p` for sparse sorted vectors, dropping zeros.
fn combine<T: Scalar>(a: &T, v: &[(usize, T)], b: &T, p: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let (idx, x, y) = match (v.get(i), p.get(j)) {
            (Some((vi, vx)), Some((pj, _))) if vi < pj => {
                i += 1;
                (*vi, vx, &zero)
            }
            (Some((vi, _)), Some((pj, py))) if pj < vi => {
                j += 1;
                (*pj, &zero, py)
            }
            (Some((vi, vx)), Some((_, py))) => {
                i += 1;
                j += 1;
                (*vi, vx, py)
            }
            (Some((vi, vx)), None) => {
                i += 1;
                (*vi, vx, &zero)
            }
            (None, Some((pj, py))) => {
                j += 1;
                (*pj, &zero, py)
            }
            (None, None) => unreachable!(),
        };
        let z = T::mul_sub(a, x, b, y)?;
        if !z.is_zero() {
            out.push((idx, z));
        }
    }
    Some(out)
}

fn rank_with<T: Scalar>(vectors: &[SparseVec]) -> Option<usize> {
    // Pivot vectors keyed by their leading (smallest) index.
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for raw in vectors {
        let mut v: Vec<(usize, T)> = prepare(raw);
        while let Some((lead, lead_val)) = v.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                break;
            };
            let p_val = p[0].1.clone();
            v = combine(&p_val, &v, &lead_val, p)?;
            make_primitive(&mut v);
        }
        if let Some(&(lead, _)) = v.first() {
            make_primitive(&mut v);
            pivots.insert(lead, v);
        }
    }
    Some(pivots.len())
}

/// Rank over Q of the matrix whose columns (or rows) are `vectors`.
pub fn rank(vectors: &[SparseVec]) -> usize {
    rank_with::<i128>(vectors)
        .or_else(|| rank_with::<BigInt>(vectors))
        .expect("BigInt elimination cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Dense Gauss-Jordan over BigRational, independent of the sparse path.
    fn dense_rank(rows: usize, cols: &[SparseVec]) -> usize {
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols.len()]; rows];
        for (c, col) in cols.iter().enumerate() {
            for &(r, x) in col {
                m[r][c] += BigRational::from_integer(x.into());
            }
        }
        let mut rank = 0;
        for c in 0..cols.len() {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[c].is_zero() {
                    let f = row[c].clone() / pivot_row[c].clone();
                    for (dst, src) in row.iter_mut().zip(&pivot_row) {
                        *dst -= src.clone() * f.clone();
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_examples() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![], vec![(3, 0)]]), 0);
        assert_eq!(
            rank(&[
                vec![(0, 1), (1, -1)],
                vec![(1, 1), (2, -1)],
                vec![(0, 1), (2, -1)]
            ]),
            2
        );
        assert_eq!(rank(&[vec![(0, 2), (1, 4)], vec![(0, 1), (1, 2)]]), 1);
        // duplicates are summed
        assert_eq!(rank(&[vec![(0, 1), (0, -1)]]), 0);
    }

    #[test]
    fn characteristic_two_sensitive_matrix() {
        // [[1,1],[1,-1]] has rank 2 over Q (rank 1 over GF(2)).
        assert_eq!(rank(&[vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]]), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX;
        let cols = vec![
            vec![(0, big), (1, big - 1), (2, 3)],
            vec![(0, big - 2), (1, big), (2, 5)],
            vec![(0, 7), (1, big - 3), (2, big)],
        ];
        assert!(rank_with::<i128>(&cols).is_none() || rank_with::<i128>(&cols) == Some(3));
        assert_eq!(rank(&cols), dense_rank(3, &cols));
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, Vec<SparseVec>)> {
        (1usize..7, 0usize..7).prop_flat_map(|(rows, ncols)| {
            (
                Just(rows),
                prop::collection::vec(prop::collection::vec((0..rows, -2i64..=2), 0..5), ncols),
            )
        })
    }

    proptest! {
        #[test]
        fn agrees_with_dense_rational((rows, cols) in arb_matrix()) {
            prop_assert_eq!(rank(&cols), dense_rank(rows, &cols));
        }

        #[test]
        fn transpose_invariant((rows, cols) in arb_matrix()) {
            let mut t: Vec<SparseVec> = vec![Vec::new(); rows];
            for (c, col) in cols.iter().enumerate() {
                for &(r, x) in col {
                    t[r].push((c, x));
                }
            }
            prop_assert_eq!(rank(&cols), rank(&t));
        }
    }
}
