//! Linear-quotient orders, the colon sets `set(u_j)`, and the structural
//! ideal classes (stable, squarefree stable, matroidal).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::monomial::{minimal_elements, Monomial, MonomialIdeal};

/// Largest generator count `find_order` will search.
pub const MAX_ORDER_SEARCH: usize = 12;
/// Largest generator count for which every valid order is enumerated.
pub const MAX_ALL_ORDERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("order is not a permutation of the {r} generators")]
    NotAPermutation { r: usize },
    #[error(
        "no linear quotients at position {position}: colon generator {witness} is not a variable"
    )]
    NotLinear {
        /// 1-based position in the order.
        position: usize,
        /// 0-based index of the offending generator in canonical order.
        generator: usize,
        witness: Monomial,
    },
    #[error("{r} generators exceed the search envelope of {max}")]
    Envelope { r: usize, max: usize },
    #[error("ideal is not stable")]
    NotStable,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("canonical order of a stable ideal disagrees with m(u) at position {position}")]
    CanonicalOrderMismatch { position: usize },
}

impl QuotientError {
    pub fn is_envelope(&self) -> bool {
        matches!(self, QuotientError::Envelope { .. })
    }
}

/// A set of variables, stored as a bitmask with bit `k-1` for `x_k`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u16);

impl VarSet {
    pub fn insert(&mut self, k: usize) {
        self.0 |= 1 << (k - 1);
    }

    pub fn contains(&self, k: usize) -> bool {
        (1..=16).contains(&k) && self.0 & (1 << (k - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Variables in ascending order (1-based).
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=16).filter(move |k| bits & (1 << (k - 1)) != 0)
    }

    /// `{1, ..., k}`.
    pub fn initial(k: usize) -> VarSet {
        VarSet(((1u32 << k) - 1) as u16)
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VarSet::default();
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VarSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// An ideal with a linear-quotients order and its colon sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedIdeal {
    ideal: MonomialIdeal,
    order: Vec<usize>,
    sets: Vec<VarSet>,
}

impl OrderedIdeal {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Permutation of 0-based canonical generator indices.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `set(u_j)` for each position `j` of the order.
    pub fn sets(&self) -> &[VarSet] {
        &self.sets
    }

    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(VarSet::len).collect()
    }

    /// Generators in the order's sequence.
    pub fn ordered_generators(&self) -> Vec<Monomial> {
        self.order
            .iter()
            .map(|&i| self.ideal.generators()[i])
            .collect()
    }

    /// Recomputes every colon from scratch and compares with the stored sets.
    pub fn revalidate(&self) -> bool {
        let gens = self.ordered_generators();
        (0..gens.len()).all(|j| {
            let colon = prefix_colon_gens(&gens[..j], &gens[j]);
            colon_variables(&colon).ok() == Some(self.sets[j])
        })
    }
}

impl Serialize for OrderedIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrderedIdeal", 3)?;
        st.serialize_field(
            "order",
            &self.order.iter().map(|i| i + 1).collect::<Vec<_>>(),
        )?;
        st.serialize_field("generators", &self.ordered_generators())?;
        st.serialize_field("sets", &self.sets)?;
        st.end()
    }
}

/// Minimal generators of `(prefix) : u`. The empty prefix yields the zero
/// ideal; a prefix element dividing `u` yields the unit ideal.
pub fn prefix_colon_gens(prefix: &[Monomial], u: &Monomial) -> MonomialIdeal {
    let gens = minimal_elements(prefix.iter().map(|p| p.colon(u)).collect());
    MonomialIdeal::from_canonical(u.n(), gens)
}

/// The variable set generating `colon`, or the first non-variable generator.
fn colon_variables(colon: &MonomialIdeal) -> Result<VarSet, Monomial> {
    let mut set = VarSet::default();
    for g in colon.generators() {
        match g.as_variable() {
            Some(k) => set.insert(k),
            None => return Err(*g),
        }
    }
    Ok(set)
}

fn is_permutation(order: &[usize], r: usize) -> bool {
    let mut seen = vec![false; r];
    order.len() == r
        && order
            .iter()
            .all(|&i| i < r && !std::mem::replace(&mut seen[i], true))
}

/// Checks whether `order` (0-based canonical indices) gives linear quotients.
pub fn check_order(ideal: &MonomialIdeal, order: &[usize]) -> Result<OrderedIdeal, QuotientError> {
    let r = ideal.len();
    if !is_permutation(order, r) {
        return Err(QuotientError::NotAPermutation { r });
    }
    let gens: Vec<Monomial> = order.iter().map(|&i| ideal.generators()[i]).collect();
    let mut sets = Vec::with_capacity(r);
    for j in 0..r {
        let colon = prefix_colon_gens(&gens[..j], &gens[j]);
        match colon_variables(&colon) {
            Ok(s) => sets.push(s),
            Err(witness) => {
                return Err(QuotientError::NotLinear {
                    position: j + 1,
                    generator: order[j],
                    witness,
                })
            }
        }
    }
    Ok(OrderedIdeal {
        ideal: ideal.clone(),
        order: order.to_vec(),
        sets,
    })
}

/// Backtracking over prefixes. The colon at a position depends only on the
/// *set* of earlier generators, so dead prefix sets are memoized by bitmask.
struct OrderSearch<'a> {
    gens: &'a [Monomial],
    dead: Vec<bool>,
    order: Vec<usize>,
    sets: Vec<VarSet>,
    collect_all: bool,
    found: Vec<(Vec<usize>, Vec<VarSet>)>,
}

impl OrderSearch<'_> {
    fn extend(&mut self, mask: usize) -> bool {
        let r = self.gens.len();
        if self.order.len() == r {
            self.found.push((self.order.clone(), self.sets.clone()));
            return true;
        }
        if self.dead[mask] {
            return false;
        }
        let prefix: Vec<Monomial> = self.order.iter().map(|&i| self.gens[i]).collect();
        let mut any = false;
        for j in 0..r {
            if mask & (1 << j) != 0 {
                continue;
            }
            let colon = prefix_colon_gens(&prefix, &self.gens[j]);
            let Ok(set) = colon_variables(&colon) else {
                continue;
            };
            self.order.push(j);
            self.sets.push(set);
            let ok = self.extend(mask | (1 << j));
            self.order.pop();
            self.sets.pop();
            if ok {
                any = true;
                if !self.collect_all {
                    return true;
                }
            }
        }
        if !any {
            self.dead[mask] = true;
        }
        any
    }
}

fn search(
    ideal: &MonomialIdeal,
    collect_all: bool,
    max: usize,
) -> Result<Vec<OrderedIdeal>, QuotientError> {
    let r = ideal.len();
    if r > max {
        return Err(QuotientError::Envelope { r, max });
    }
    let mut s = OrderSearch {
        gens: ideal.generators(),
        dead: vec![false; 1 << r],
        order: Vec::with_capacity(r),
        sets: Vec::with_capacity(r),
        collect_all,
        found: Vec::new(),
    };
    s.extend(0);
    Ok(s.found
        .into_iter()
        .map(|(order, sets)| OrderedIdeal {
            ideal: ideal.clone(),
            order,
            sets,
        })
        .collect())
}

/// Searches for a linear-quotients order. `Ok(None)` means none exists.
///
/// Candidates are tried in canonical order, so the result is deterministic.
pub fn find_order(ideal: &MonomialIdeal) -> Result<Option<OrderedIdeal>, QuotientError> {
    Ok(search(ideal, false, MAX_ORDER_SEARCH)?.into_iter().next())
}

/// Every linear-quotients order, in lexicographic order of the permutations.
pub fn all_orders(ideal: &MonomialIdeal) -> Result<Vec<OrderedIdeal>, QuotientError> {
    search(ideal, true, MAX_ALL_ORDERS)
}

/// `X_i * w / X_{m(w)}` stays in `I` for all `i < m(w)`, checked on generators.
pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    ideal.generators().iter().all(|u| {
        let Some(m) = u.max_index() else {
            return true;
        };
        let base = u.div_var(m).expect("x_m divides u");
        (1..m).all(|i| ideal.contains(&base.mul_var(i)))
    })
}

/// Squarefree stable: for `i < m(u)` with `X_i ∤ u`, `X_i * u / X_{m(u)} ∈ I`.
pub fn is_squarefree_stable(ideal: &MonomialIdeal) -> Result<bool, QuotientError> {
    if !ideal.is_squarefree() {
        return Err(QuotientError::NotSquarefree);
    }
    Ok(ideal.generators().iter().all(|u| {
        let Some(m) = u.max_index() else {
            return true;
        };
        let base = u.div_var(m).expect("x_m divides u");
        (1..m)
            .filter(|&i| u.exponent(i) == 0)
            .all(|i| ideal.contains(&base.mul_var(i)))
    }))
}

/// Basis exchange: for `u, v ∈ G(I)` and `i` with `ν_i(u) > ν_i(v)` there is
/// `j` with `ν_j(u) < ν_j(v)` and `X_j * u / X_i ∈ G(I)`.
pub fn is_matroidal(ideal: &MonomialIdeal) -> Result<bool, QuotientError> {
    if !ideal.is_squarefree() {
        return Err(QuotientError::NotSquarefree);
    }
    if ideal.common_degree().is_none() {
        return Err(QuotientError::NotEquigenerated);
    }
    let gens = ideal.generators();
    let n = ideal.n();
    Ok(gens.iter().all(|u| {
        gens.iter().all(|v| {
            (1..=n).filter(|&i| u.exponent(i) > v.exponent(i)).all(|i| {
                let base = u.div_var(i).expect("x_i divides u");
                (1..=n)
                    .filter(|&j| u.exponent(j) < v.exponent(j))
                    .any(|j| gens.contains(&base.mul_var(j)))
            })
        })
    }))
}

/// The canonical order of a stable ideal with `set(u) = {1, ..., m(u) - 1}`,
/// cross-checked against [`check_order`].
pub fn stable_canonical_sets(ideal: &MonomialIdeal) -> Result<OrderedIdeal, QuotientError> {
    if !is_stable(ideal) {
        return Err(QuotientError::NotStable);
    }
    let order: Vec<usize> = (0..ideal.len()).collect();
    let sets: Vec<VarSet> = ideal
        .generators()
        .iter()
        .map(|u| VarSet::initial(u.max_index().unwrap_or(1) - 1))
        .collect();
    let checked = match check_order(ideal, &order) {
        Ok(c) => c,
        Err(QuotientError::NotLinear { position, .. }) => {
            return Err(QuotientError::CanonicalOrderMismatch { position })
        }
        Err(e) => return Err(e),
    };
    if let Some(j) = (0..sets.len()).find(|&j| checked.sets[j] != sets[j]) {
        return Err(QuotientError::CanonicalOrderMismatch { position: j + 1 });
    }
    Ok(checked)
}

/// `m_i(I) = |{u ∈ G(I) : m(u) = i}|`; absent keys are zero.
pub fn m_stats(ideal: &MonomialIdeal) -> BTreeMap<usize, usize> {
    let mut stats = BTreeMap::new();
    for u in ideal.generators() {
        if let Some(m) = u.max_index() {
            *stats.entry(m).or_insert(0) += 1;
        }
    }
    stats
}
