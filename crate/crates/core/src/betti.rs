//! Betti numbers of `I`, by the linear-quotients formula and by the homology
//! of the Taylor complex tensored with the residue field.
//!
//! Indexing follows the resolution of `I` itself: `β_0(I)` is the number of
//! minimal generators, `β_q(I)` the rank of the `q`-th syzygy module.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, SparseVec};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::quotients::{is_stable, OrderedIdeal};
use crate::taylor::{build_taylor, TaylorComplex, TaylorError};

/// Largest generator count the homology oracle accepts.
pub const MAX_ORACLE_GENERATORS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("{r} generators exceed the oracle envelope of {max}")]
    Envelope { r: usize, max: usize },
    #[error("ideal is not stable")]
    NotStable,
    #[error(transparent)]
    Taylor(#[from] TaylorError),
}

impl BettiError {
    pub fn is_envelope(&self) -> bool {
        match self {
            BettiError::Envelope { .. } => true,
            BettiError::Taylor(t) => t.is_envelope(),
            BettiError::NotStable => false,
        }
    }
}

/// Exact binomial coefficient, zero when `q > a`.
pub fn binomial(a: u64, q: u64) -> u64 {
    if q > a {
        return 0;
    }
    let q = q.min(a - q);
    let mut acc: u128 = 1;
    for i in 0..q {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Total Betti numbers `β_0..β_{r-1}`, optionally refined by total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    total: Vec<u64>,
    graded: Option<BTreeMap<(usize, u32), u64>>,
}

impl BettiTable {
    pub fn from_total(total: Vec<u64>) -> Self {
        BettiTable {
            total,
            graded: None,
        }
    }

    pub fn total(&self) -> &[u64] {
        &self.total
    }

    /// `β_{q,j}` keyed by `(q, j)`; only nonzero values are stored.
    pub fn graded(&self) -> Option<&BTreeMap<(usize, u32), u64>> {
        self.graded.as_ref()
    }

    pub fn graded_value(&self, q: usize, j: u32) -> Option<u64> {
        self.graded
            .as_ref()
            .map(|g| g.get(&(q, j)).copied().unwrap_or(0))
    }

    /// Total with trailing zeros removed.
    pub fn trimmed_total(&self) -> &[u64] {
        let end = self
            .total
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        &self.total[..end]
    }

    /// Whether the graded part (if any) sums to the totals.
    pub fn is_consistent(&self) -> bool {
        let Some(graded) = &self.graded else {
            return true;
        };
        let mut sums = vec![0u64; self.total.len()];
        for (&(q, _), &b) in graded {
            if q >= sums.len() {
                return false;
            }
            sums[q] += b;
        }
        sums == self.total
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            q: usize,
            degree: u32,
            beta: u64,
        }
        let mut st = s.serialize_struct("BettiTable", 2)?;
        st.serialize_field("total", &self.total)?;
        let graded: Option<Vec<Entry>> = self.graded.as_ref().map(|g| {
            g.iter()
                .map(|(&(q, degree), &beta)| Entry { q, degree, beta })
                .collect()
        });
        st.serialize_field("graded", &graded)?;
        st.end()
    }
}

/// `β_q(I) = Σ_{u ∈ G(I)} C(|set(u)|, q)` for a verified linear-quotients order.
pub fn betti_formula(ordered: &OrderedIdeal) -> BettiTable {
    let r = ordered.ideal().len();
    let sizes = ordered.set_sizes();
    let total = (0..r)
        .map(|q| sizes.iter().map(|&a| binomial(a as u64, q as u64)).sum())
        .collect();
    BettiTable::from_total(total)
}

/// `β_q(I) = Σ_{u ∈ G(I)} C(m(u) - 1, q)` for stable ideals.
pub fn betti_eliahou_kervaire(ideal: &MonomialIdeal) -> Result<BettiTable, BettiError> {
    if !is_stable(ideal) {
        return Err(BettiError::NotStable);
    }
    let r = ideal.len();
    let total = (0..r)
        .map(|q| {
            ideal
                .generators()
                .iter()
                .map(|u| binomial(u.max_index().unwrap_or(1) as u64 - 1, q as u64))
                .sum()
        })
        .collect();
    Ok(BettiTable::from_total(total))
}

/// Columns of `d_q ⊗ K`: only entries with unit coefficient survive.
pub fn residue_columns(complex: &TaylorComplex, q: usize) -> Vec<SparseVec> {
    complex
        .strand(q)
        .map(|s| {
            s.columns()
                .iter()
                .map(|col| {
                    col.iter()
                        .filter(|e| e.monomial.is_one())
                        .map(|e| (e.row, e.sign as i64))
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Homology of `complex ⊗ K`, split by a grading of the basis elements.
/// Unit entries preserve multidegree, so any coarsening of it splits the complex.
fn homology_by<K: Ord + Copy>(
    complex: &TaylorComplex,
    key: impl Fn(&Monomial) -> K,
) -> BTreeMap<(usize, K), u64> {
    let r = complex.r();
    // rank_d[q] maps grade -> rank of d_q restricted to that grade.
    let mut rank_d: Vec<BTreeMap<K, u64>> = vec![BTreeMap::new(); r + 1];
    for (q, ranks) in rank_d.iter_mut().enumerate().take(r).skip(1) {
        let basis = complex.strand(q).expect("q < r").basis();
        let mut blocks: BTreeMap<K, Vec<SparseVec>> = BTreeMap::new();
        for (col, b) in residue_columns(complex, q).into_iter().zip(basis) {
            blocks.entry(key(&b.multidegree)).or_default().push(col);
        }
        for (k, cols) in blocks {
            ranks.insert(k, linalg::rank(&cols) as u64);
        }
    }
    let mut out = BTreeMap::new();
    for q in 0..r {
        let mut dims: BTreeMap<K, u64> = BTreeMap::new();
        for b in complex.strand(q).expect("q < r").basis() {
            *dims.entry(key(&b.multidegree)).or_insert(0) += 1;
        }
        for (k, dim) in dims {
            let out_rank = rank_d[q].get(&k).copied().unwrap_or(0);
            let in_rank = rank_d[q + 1].get(&k).copied().unwrap_or(0);
            let beta = dim - out_rank - in_rank;
            if beta != 0 {
                out.insert((q, k), beta);
            }
        }
    }
    out
}

/// Betti numbers of the ideal resolved by `complex`, from its residue complex.
///
/// Totals come from ranks of the unsplit matrices; the graded part comes from
/// the total-degree strands independently.
pub fn betti_from_complex(complex: &TaylorComplex) -> BettiTable {
    let r = complex.r();
    let mut rank_d = vec![0u64; r + 1];
    for (q, slot) in rank_d.iter_mut().enumerate().take(r).skip(1) {
        *slot = linalg::rank(&residue_columns(complex, q)) as u64;
    }
    let total = (0..r)
        .map(|q| complex.strands()[q].rank() as u64 - rank_d[q] - rank_d[q + 1])
        .collect();
    let graded = homology_by(complex, Monomial::degree);
    BettiTable {
        total,
        graded: Some(graded),
    }
}

fn oracle_complex(ideal: &MonomialIdeal) -> Result<TaylorComplex, BettiError> {
    let r = ideal.len();
    if r > MAX_ORACLE_GENERATORS {
        return Err(BettiError::Envelope {
            r,
            max: MAX_ORACLE_GENERATORS,
        });
    }
    Ok(build_taylor(ideal.generators())?)
}

/// Betti numbers by exact homology of the Taylor complex over the residue field.
pub fn betti_oracle(ideal: &MonomialIdeal) -> Result<BettiTable, BettiError> {
    Ok(betti_from_complex(&oracle_complex(ideal)?))
}

/// Multigraded Betti numbers `β_{q,m}` keyed by `(q, multidegree)`.
pub fn betti_oracle_multigraded(
    ideal: &MonomialIdeal,
) -> Result<BTreeMap<(usize, Monomial), u64>, BettiError> {
    Ok(homology_by(&oracle_complex(ideal)?, |m| *m))
}

/// Whether `I` is generated in one degree `d` with `β_{q,j} = 0` for `j ≠ q + d`.
/// Mixed generator degrees return `false` without running the oracle.
pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool, BettiError> {
    let Some(d) = ideal.common_degree() else {
        return Ok(false);
    };
    let table = betti_oracle(ideal)?;
    Ok(table
        .graded()
        .expect("oracle tables are graded")
        .keys()
        .all(|&(q, j)| j == q as u32 + d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;
    use crate::quotients::{check_order, find_order};

    fn ideal(text: &str, n: usize) -> MonomialIdeal {
        parse_ideal(text, n).unwrap().ideal
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn formula_examples() {
        let i = ideal("x1^2, x1*x2, x1*x3", 3);
        let o = find_order(&i).unwrap().unwrap();
        assert_eq!(o.set_sizes(), vec![0, 1, 2]);
        assert_eq!(betti_formula(&o).total(), &[3, 3, 1]);

        let i = ideal("x1*x2, x2*x3, x1*x3", 3);
        let gens = i.generators();
        let want = ["x1*x2", "x2*x3", "x1*x3"];
        let order: Vec<usize> = want
            .iter()
            .map(|w| gens.iter().position(|g| g.to_string() == *w).unwrap())
            .collect();
        let o = check_order(&i, &order).unwrap();
        assert_eq!(betti_formula(&o).total(), &[3, 2, 0]);

        let o = find_order(&ideal("x1*x2^3", 2)).unwrap().unwrap();
        assert_eq!(betti_formula(&o).total(), &[1]);
    }

    #[test]
    fn oracle_koszul() {
        let t = betti_oracle(&ideal("x1, x2", 2)).unwrap();
        assert_eq!(t.total(), &[2, 1]);
        assert_eq!(t.graded_value(0, 1), Some(2));
        assert_eq!(t.graded_value(1, 2), Some(1));
        assert!(t.is_consistent());
    }

    #[test]
    fn oracle_squarefree_triangle() {
        let t = betti_oracle(&ideal("x1*x2, x2*x3, x1*x3", 3)).unwrap();
        assert_eq!(t.total(), &[3, 2, 0]);
        assert_eq!(t.trimmed_total(), &[3, 2]);
        assert_eq!(t.graded_value(0, 2), Some(3));
        assert_eq!(t.graded_value(1, 3), Some(2));
        assert_eq!(t.graded().unwrap().len(), 2);
    }

    #[test]
    fn oracle_minimal_taylor_is_binomial() {
        for text in ["x1, x2, x3", "x1^2, x1*x2, x1*x3", "x1*x3, x2*x3"] {
            let i = ideal(text, 3);
            let r = i.len() as u64;
            let t = betti_oracle(&i).unwrap();
            let want: Vec<u64> = (0..r).map(|q| binomial(r, q + 1)).collect();
            assert_eq!(t.total(), want.as_slice(), "{text}");
        }
    }

    #[test]
    fn linear_resolution_examples() {
        assert!(has_linear_resolution(&ideal("x1*x3, x2*x3", 3)).unwrap());
        assert!(has_linear_resolution(&ideal("x1*x2, x2*x3, x1*x3", 3)).unwrap());
        assert!(!has_linear_resolution(&ideal("x1^2, x1*x2, x2^3", 2)).unwrap());
        // equigenerated but not linear: (x1^2, x2^2) has a syzygy in degree 4
        assert!(!has_linear_resolution(&ideal("x1^2, x2^2", 2)).unwrap());
    }

    #[test]
    fn eliahou_kervaire_examples() {
        let i = ideal("x1^2, x1*x2, x2^2", 2);
        let ek = betti_eliahou_kervaire(&i).unwrap();
        assert_eq!(ek.total(), betti_oracle(&i).unwrap().total());
        assert_eq!(ek.total(), &[3, 2, 0]);
        assert_eq!(
            betti_eliahou_kervaire(&ideal("x1*x2, x2*x3, x1*x3", 3)),
            Err(BettiError::NotStable)
        );
    }

    #[test]
    fn multigraded_sums_to_graded() {
        let i = ideal("x1^2, x1*x2, x2*x3, x3^2", 3);
        let multi = betti_oracle_multigraded(&i).unwrap();
        let t = betti_oracle(&i).unwrap();
        let mut coarse: BTreeMap<(usize, u32), u64> = BTreeMap::new();
        for (&(q, m), &b) in &multi {
            *coarse.entry((q, m.degree())).or_insert(0) += b;
        }
        assert_eq!(Some(&coarse), t.graded());
    }

    #[test]
    fn oracle_envelope() {
        let gens: Vec<String> = (0..15).map(|a| format!("x1^{a}*x2^{}", 14 - a)).collect();
        let i = ideal(&gens.join(","), 2);
        assert!(betti_oracle(&i).unwrap_err().is_envelope());
        assert!(has_linear_resolution(&i).unwrap_err().is_envelope());
    }
}
