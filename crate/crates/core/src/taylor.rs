//! The Taylor complex of an ordered list of monomial generators.
//!
//! Basis elements of homological degree `q` are the `(q+1)`-element subsets of
//! the generators, encoded as bitmasks and ordered by integer value. The
//! differential drops the member at position `s` (0-based within the sorted
//! subset) with sign `(-1)^s` and coefficient `lcm(σ) / lcm(σ \ {i_s})`.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::monomial::{Monomial, MonomialError};

/// Largest generator count the Taylor construction accepts (2^r basis elements).
pub const MAX_TAYLOR_GENERATORS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("no generators")]
    Empty,
    #[error("{r} generators exceed the Taylor envelope of {max}")]
    Envelope { r: usize, max: usize },
    #[error("generators are not minimal: {divisor} divides {multiple}")]
    NotMinimal {
        divisor: Monomial,
        multiple: Monomial,
    },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

impl TaylorError {
    pub fn is_envelope(&self) -> bool {
        matches!(self, TaylorError::Envelope { .. })
    }
}

/// A Taylor basis element `e_{i_0} ∧ ... ∧ e_{i_q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetBasisElement {
    /// Bit `i` set iff generator `i` (0-based) is a member.
    pub members: u32,
    /// lcm of the member generators.
    pub multidegree: Monomial,
}

impl SubsetBasisElement {
    pub fn homological_degree(&self) -> usize {
        self.members.count_ones() as usize - 1
    }

    /// Member generator indices, ascending and 0-based.
    pub fn member_indices(&self) -> impl Iterator<Item = usize> {
        let mask = self.members;
        (0..32).filter(move |i| mask & (1 << i) != 0)
    }
}

/// A nonzero entry of a differential column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DifferentialEntry {
    /// Row index into the basis of the previous strand.
    pub row: usize,
    /// `+1` or `-1`.
    pub sign: i8,
    pub monomial: Monomial,
}

/// One homological degree of the complex.
#[derive(Debug, Clone)]
pub struct Strand {
    basis: Vec<SubsetBasisElement>,
    /// Columns of `d_q`, aligned with `basis`; empty for `q = 0`.
    columns: Vec<Vec<DifferentialEntry>>,
}

impl Strand {
    pub fn basis(&self) -> &[SubsetBasisElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Sparse columns of the differential leaving this strand.
    pub fn columns(&self) -> &[Vec<DifferentialEntry>] {
        &self.columns
    }
}

#[derive(Debug, Clone)]
pub struct TaylorComplex {
    generators: Vec<Monomial>,
    strands: Vec<Strand>,
}

fn check_generators(gens: &[Monomial]) -> Result<(), TaylorError> {
    let first = gens.first().ok_or(TaylorError::Empty)?;
    if gens.len() > MAX_TAYLOR_GENERATORS {
        return Err(TaylorError::Envelope {
            r: gens.len(),
            max: MAX_TAYLOR_GENERATORS,
        });
    }
    for g in gens {
        if g.n() != first.n() {
            return Err(MonomialError::AmbientMismatch {
                left: first.n(),
                right: g.n(),
            }
            .into());
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(TaylorError::NotMinimal {
                    divisor: *a,
                    multiple: *b,
                });
            }
        }
    }
    Ok(())
}

/// lcm of every subset mask, indexed by mask; entry 0 is the unit.
fn subset_lcms(gens: &[Monomial]) -> Vec<Monomial> {
    let r = gens.len();
    let mut lcms = Vec::with_capacity(1 << r);
    lcms.push(Monomial::one(gens[0].n()).expect("validated ambient"));
    for mask in 1usize..(1 << r) {
        let low = mask.trailing_zeros() as usize;
        let rest = lcms[mask & (mask - 1)];
        lcms.push(rest.lcm(&gens[low]));
    }
    lcms
}

/// Builds the Taylor complex of `gens`, taken in the given order.
pub fn build_taylor(gens: &[Monomial]) -> Result<TaylorComplex, TaylorError> {
    check_generators(gens)?;
    let r = gens.len();
    let lcms = subset_lcms(gens);

    // position[mask] = index of mask within its strand.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); r];
    let mut position = vec![0u32; 1 << r];
    for mask in 1u32..(1 << r) {
        let bucket = &mut by_size[mask.count_ones() as usize - 1];
        position[mask as usize] = bucket.len() as u32;
        bucket.push(mask);
    }

    let strands = by_size
        .into_par_iter()
        .enumerate()
        .map(|(q, masks)| {
            let basis: Vec<SubsetBasisElement> = masks
                .iter()
                .map(|&m| SubsetBasisElement {
                    members: m,
                    multidegree: lcms[m as usize],
                })
                .collect();
            let columns = if q == 0 {
                Vec::new()
            } else {
                masks
                    .iter()
                    .map(|&sigma| {
                        let top = lcms[sigma as usize];
                        (0..r)
                            .filter(|i| sigma & (1 << i) != 0)
                            .enumerate()
                            .map(|(s, i)| {
                                let face = sigma & !(1 << i);
                                DifferentialEntry {
                                    row: position[face as usize] as usize,
                                    sign: if s % 2 == 0 { 1 } else { -1 },
                                    monomial: top
                                        .checked_div(&lcms[face as usize])
                                        .expect("lcm of a face divides lcm of the subset"),
                                }
                            })
                            .collect()
                    })
                    .collect()
            };
            Strand { basis, columns }
        })
        .collect();

    Ok(TaylorComplex {
        generators: gens.to_vec(),
        strands,
    })
}

/// Signed-monomial linear combination keyed by (basis index, monomial).
type Chain = HashMap<(usize, Monomial), i64>;

fn accumulate(chain: &mut Chain, key: (usize, Monomial), coeff: i64) {
    let slot = chain.entry(key).or_insert(0);
    *slot += coeff;
    if *slot == 0 {
        chain.remove(&key);
    }
}

impl TaylorComplex {
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of generators `r`.
    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strand(&self, q: usize) -> Option<&Strand> {
        self.strands.get(q)
    }

    /// Ranks of `T_0, ..., T_{r-1}`.
    pub fn ranks(&self) -> Vec<usize> {
        self.strands.iter().map(Strand::rank).collect()
    }

    /// Whether `ε ∘ d_1 = 0`, where `ε(e_i) = u_i`.
    pub fn verify_augmentation(&self) -> bool {
        let Some(strand) = self.strands.get(1) else {
            return true;
        };
        let gens0 = &self.strands[0].basis;
        strand.columns.iter().all(|col| {
            let mut image: HashMap<Monomial, i64> = HashMap::new();
            for e in col {
                let member = gens0[e.row].members.trailing_zeros() as usize;
                let key = e.monomial * self.generators[member];
                *image.entry(key).or_insert(0) += e.sign as i64;
            }
            image.values().all(|&c| c == 0)
        })
    }

    /// Whether `ε ∘ d_1` and every `d_q ∘ d_{q+1}` vanish as polynomial matrices.
    pub fn verify_complex(&self) -> bool {
        if !self.verify_augmentation() {
            return false;
        }
        (1..self.strands.len().saturating_sub(1)).all(|q| {
            let lower = &self.strands[q].columns;
            self.strands[q + 1].columns.iter().all(|col| {
                let mut image = Chain::new();
                for outer in col {
                    for inner in &lower[outer.row] {
                        accumulate(
                            &mut image,
                            (inner.row, outer.monomial * inner.monomial),
                            outer.sign as i64 * inner.sign as i64,
                        );
                    }
                }
                image.is_empty()
            })
        })
    }

    /// Minimal iff no differential entry has a unit coefficient.
    pub fn is_minimal(&self) -> bool {
        self.strands
            .iter()
            .flat_map(|s| s.columns.iter().flatten())
            .all(|e| !e.monomial.is_one())
    }

    /// Flips the sign of one entry; used by mutation tests.
    #[doc(hidden)]
    pub fn flip_sign(&mut self, q: usize, col: usize, entry: usize) {
        let e = &mut self.strands[q].columns[col][entry];
        e.sign = -e.sign;
    }
}

/// Matrix-free minimality: no subset `σ` with `|σ| ≥ 2` has a member `s`
/// with `lcm(σ) = lcm(σ \ {s})`.
pub fn is_minimal_subset_test(gens: &[Monomial]) -> Result<bool, TaylorError> {
    check_generators(gens)?;
    let r = gens.len();
    let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << r);
    lcms.push(Monomial::one(gens[0].n())?);
    for mask in 1usize..(1 << r) {
        let low = mask.trailing_zeros() as usize;
        let top = lcms[mask & (mask - 1)].lcm(&gens[low]);
        lcms.push(top);
        if mask.count_ones() < 2 {
            continue;
        }
        let mut bits = mask;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            if lcms[mask ^ b] == top {
                return Ok(false);
            }
            bits ^= b;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn gens(text: &str, n: usize) -> Vec<Monomial> {
        parse_ideal(text, n).unwrap().ideal.generators().to_vec()
    }

    #[test]
    fn koszul_two_variables() {
        let t = build_taylor(&gens("x1, x2", 2)).unwrap();
        assert_eq!(t.ranks(), vec![2, 1]);
        let col = &t.strand(1).unwrap().columns()[0];
        // d_1(e_1 ∧ e_2) = x1·e_2 - x2·e_1
        assert_eq!(col.len(), 2);
        assert_eq!(col[0].row, 1);
        assert_eq!(col[0].sign, 1);
        assert_eq!(col[0].monomial.to_string(), "x1");
        assert_eq!(col[1].row, 0);
        assert_eq!(col[1].sign, -1);
        assert_eq!(col[1].monomial.to_string(), "x2");
        assert!(t.verify_complex());
        assert!(t.is_minimal());
    }

    #[test]
    fn squarefree_triangle() {
        let t = build_taylor(&gens("x1*x2, x2*x3, x1*x3", 3)).unwrap();
        assert_eq!(t.ranks(), vec![3, 3, 1]);
        for e in &t.strand(2).unwrap().columns()[0] {
            assert!(e.monomial.is_one());
        }
        assert!(t.verify_complex());
        assert!(!t.is_minimal());
    }

    #[test]
    fn single_generator() {
        let t = build_taylor(&gens("x1^2*x3", 3)).unwrap();
        assert_eq!(t.ranks(), vec![1]);
        assert!(t.strand(0).unwrap().columns().is_empty());
        assert!(t.verify_complex());
        assert!(t.is_minimal());
    }

    #[test]
    fn power_times_variables_is_minimal() {
        // x1^{d-1}(x1, x2, x3) with d = 2
        let t = build_taylor(&gens("x1^2, x1*x2, x1*x3", 3)).unwrap();
        assert!(t.is_minimal());
    }

    #[test]
    fn sign_flip_breaks_complex() {
        let mut t = build_taylor(&gens("x1, x2", 2)).unwrap();
        t.flip_sign(1, 0, 0);
        assert!(!t.verify_complex());

        let mut t = build_taylor(&gens("x1*x2, x2*x3, x1*x3, x3^2", 3)).unwrap();
        assert!(t.verify_complex());
        t.flip_sign(2, 1, 2);
        assert!(!t.verify_complex());
    }

    #[test]
    fn subset_test_examples() {
        assert!(is_minimal_subset_test(&gens("x1, x2, x3", 3)).unwrap());
        assert!(!is_minimal_subset_test(&gens("x1*x2, x2*x3, x1*x3", 3)).unwrap());
        assert!(is_minimal_subset_test(&gens("x1*x3, x2*x3", 3)).unwrap());
    }

    #[test]
    fn envelope_and_minimality_errors() {
        let many: Vec<Monomial> = (0..21)
            .map(|i| Monomial::from_exponents(&[i, 20 - i]).unwrap())
            .collect();
        assert_eq!(
            build_taylor(&many).unwrap_err(),
            TaylorError::Envelope { r: 21, max: 20 }
        );
        assert!(is_minimal_subset_test(&many).unwrap_err().is_envelope());
        let x1 = Monomial::var(2, 1).unwrap();
        let x1x2 = Monomial::from_exponents(&[1, 1]).unwrap();
        assert!(matches!(
            build_taylor(&[x1, x1x2]),
            Err(TaylorError::NotMinimal { .. })
        ));
        assert!(matches!(
            build_taylor(&[x1, x1]),
            Err(TaylorError::NotMinimal { .. })
        ));
        assert_eq!(build_taylor(&[]).unwrap_err(), TaylorError::Empty);
    }

    #[test]
    fn order_of_generators_is_respected() {
        let g = gens("x1^2, x1*x2, x2^2", 2);
        let rev: Vec<Monomial> = g.iter().rev().copied().collect();
        let t = build_taylor(&rev).unwrap();
        assert_eq!(t.generators(), rev.as_slice());
        assert!(t.verify_complex());
    }
}
