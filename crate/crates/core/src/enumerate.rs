//! Exhaustive enumeration of minimal monomial ideals.
//!
//! Ideals are antichains (under divisibility) of the monomials of degree
//! `1..=max_deg`. Candidates are listed in canonical order and antichains are
//! produced by a pre-order depth-first walk that only ever appends larger
//! candidates, so each ideal appears once with its generators already canonical.
//!
//! Family filters restrict the stream. Squarefree and equigenerated filters
//! shrink the candidate set; stability is checked incrementally, which is
//! exact because the exchange witnesses of a generator are always earlier in
//! canonical order; matroidal is a final predicate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{Monomial, MonomialIdeal, MAX_VARS};
use crate::quotients::is_matroidal;
use crate::taylor::MAX_TAYLOR_GENERATORS;

/// Largest candidate set the bitset walk supports.
pub const MAX_CANDIDATES: usize = 128;
/// Largest generator degree accepted.
pub const MAX_ENUM_DEGREE: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("{n} variables exceed the {family} envelope of {max}")]
    TooManyVariables {
        n: usize,
        max: usize,
        family: Family,
    },
    #[error("{count} candidate monomials exceed the enumeration limit of {MAX_CANDIDATES}")]
    TooManyCandidates { count: usize },
    #[error("max_deg {0} outside 1..={MAX_ENUM_DEGREE}")]
    BadDegree(u32),
    #[error("max_gens {0} outside 1..={MAX_TAYLOR_GENERATORS}")]
    BadGeneratorCount(usize),
    #[error("at least one variable is required")]
    NoVariables,
    #[error("unknown family tag `{0}`")]
    UnknownFamily(String),
}

impl EnumerateError {
    pub fn is_envelope(&self) -> bool {
        match self {
            EnumerateError::TooManyVariables { .. } | EnumerateError::TooManyCandidates { .. } => {
                true
            }
            EnumerateError::BadDegree(d) => *d > 0,
            EnumerateError::BadGeneratorCount(g) => *g > 0,
            EnumerateError::NoVariables | EnumerateError::UnknownFamily(_) => false,
        }
    }
}

/// Intersection of family tags; the default admits every ideal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub stable: bool,
    pub squarefree: bool,
    pub equigenerated: bool,
    pub matroidal: bool,
}

impl Family {
    pub const ALL: Family = Family {
        stable: false,
        squarefree: false,
        equigenerated: false,
        matroidal: false,
    };

    pub fn stable() -> Self {
        Family {
            stable: true,
            ..Family::ALL
        }
    }

    pub fn squarefree() -> Self {
        Family {
            squarefree: true,
            ..Family::ALL
        }
    }

    pub fn equigenerated() -> Self {
        Family {
            equigenerated: true,
            ..Family::ALL
        }
    }

    pub fn matroidal() -> Self {
        Family {
            matroidal: true,
            ..Family::ALL
        }
    }

    pub fn and(self, other: Family) -> Self {
        Family {
            stable: self.stable || other.stable,
            squarefree: self.squarefree || other.squarefree,
            equigenerated: self.equigenerated || other.equigenerated,
            matroidal: self.matroidal || other.matroidal,
        }
    }

    fn squarefree_only(&self) -> bool {
        self.squarefree || self.matroidal
    }

    fn equigenerated_only(&self) -> bool {
        self.equigenerated || self.matroidal
    }

    /// Variable bound for exhaustive streams of this family.
    pub fn max_vars(&self) -> usize {
        if self.squarefree_only() {
            5
        } else if self.stable || self.equigenerated {
            4
        } else {
            3
        }
    }

    /// Whether `ideal` belongs to the family (the unoptimized predicate).
    pub fn admits(&self, ideal: &MonomialIdeal) -> bool {
        (!self.stable || crate::quotients::is_stable(ideal))
            && (!self.squarefree_only() || ideal.is_squarefree())
            && (!self.equigenerated_only() || ideal.common_degree().is_some())
            && (!self.matroidal || is_matroidal(ideal).unwrap_or(false))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<&str> = [
            (self.stable, "stable"),
            (self.squarefree, "squarefree"),
            (self.equigenerated, "equigenerated"),
            (self.matroidal, "matroidal"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, t)| *t)
        .collect();
        if tags.is_empty() {
            f.write_str("all")
        } else {
            f.write_str(&tags.join(","))
        }
    }
}

impl FromStr for Family {
    type Err = EnumerateError;

    /// Comma-separated tags; `all` is the empty intersection.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut fam = Family::ALL;
        for tag in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            fam = fam.and(match tag {
                "all" => Family::ALL,
                "stable" => Family::stable(),
                "squarefree" => Family::squarefree(),
                "equigenerated" => Family::equigenerated(),
                "matroidal" => Family::matroidal(),
                other => return Err(EnumerateError::UnknownFamily(other.to_string())),
            });
        }
        Ok(fam)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationParams {
    pub n: usize,
    pub max_deg: u32,
    pub max_gens: usize,
    pub family: Family,
}

/// All monomials in `n` variables of exactly degree `d`, canonical order.
fn monomials_of_degree(n: usize, d: u32, squarefree: bool) -> Vec<Monomial> {
    fn rec(k: usize, left: u32, cap: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if k + 1 == cur.len() {
            if left <= cap {
                cur[k] = left as u16;
                out.push(Monomial::from_exponents(cur).expect("n validated"));
            }
            return;
        }
        for e in 0..=left.min(cap) {
            cur[k] = e as u16;
            rec(k + 1, left - e, cap, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    let cap = if squarefree { 1 } else { d };
    rec(0, d, cap, &mut vec![0u16; n], &mut out);
    out.sort();
    out
}

/// A depth-first antichain walk over one candidate list.
struct AntichainWalk {
    n: usize,
    cands: Vec<Monomial>,
    /// below[i]: earlier candidates dividing candidate i.
    below: Vec<u128>,
    max_gens: usize,
    stable: bool,
    stack: Vec<usize>,
    mask: u128,
    next: usize,
}

impl AntichainWalk {
    fn new(n: usize, cands: Vec<Monomial>, max_gens: usize, stable: bool) -> Self {
        let below = cands
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cands[..i]
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.divides(c))
                    .fold(0u128, |m, (j, _)| m | (1 << j))
            })
            .collect();
        AntichainWalk {
            n,
            cands,
            below,
            max_gens,
            stable,
            stack: Vec::new(),
            mask: 0,
            next: 0,
        }
    }

    fn in_chosen(&self, w: &Monomial) -> bool {
        self.stack.iter().any(|&j| self.cands[j].divides(w))
    }

    fn admissible(&self, i: usize) -> bool {
        if self.below[i] & self.mask != 0 {
            return false;
        }
        if self.stable {
            let u = &self.cands[i];
            let m = u.max_index().expect("generators are non-units");
            let base = u.div_var(m).expect("x_m divides u");
            if !(1..m).all(|k| self.in_chosen(&base.mul_var(k))) {
                return false;
            }
        }
        true
    }

    fn current(&self) -> MonomialIdeal {
        MonomialIdeal::from_canonical(self.n, self.stack.iter().map(|&i| self.cands[i]).collect())
    }
}

impl Iterator for AntichainWalk {
    type Item = MonomialIdeal;

    fn next(&mut self) -> Option<MonomialIdeal> {
        loop {
            if self.stack.len() < self.max_gens {
                if let Some(i) = (self.next..self.cands.len()).find(|&i| self.admissible(i)) {
                    self.stack.push(i);
                    self.mask |= 1 << i;
                    self.next = i + 1;
                    return Some(self.current());
                }
            }
            let top = self.stack.pop()?;
            self.mask &= !(1 << top);
            self.next = top + 1;
        }
    }
}

/// A deterministic, duplicate-free stream of ideals.
pub struct IdealStream {
    walks: std::vec::IntoIter<AntichainWalk>,
    current: Option<AntichainWalk>,
    matroidal: bool,
}

impl Iterator for IdealStream {
    type Item = MonomialIdeal;

    fn next(&mut self) -> Option<MonomialIdeal> {
        loop {
            let walk = match &mut self.current {
                Some(w) => w,
                None => {
                    self.current = Some(self.walks.next()?);
                    continue;
                }
            };
            match walk.next() {
                Some(ideal) => {
                    if self.matroidal && !is_matroidal(&ideal).unwrap_or(false) {
                        continue;
                    }
                    return Some(ideal);
                }
                None => self.current = None,
            }
        }
    }
}

pub fn validate_params(params: &EnumerationParams) -> Result<(), EnumerateError> {
    let EnumerationParams {
        n,
        max_deg,
        max_gens,
        family,
    } = *params;
    if n == 0 {
        return Err(EnumerateError::NoVariables);
    }
    let max = family.max_vars().min(MAX_VARS);
    if n > max {
        return Err(EnumerateError::TooManyVariables { n, max, family });
    }
    if max_deg == 0 || max_deg > MAX_ENUM_DEGREE {
        return Err(EnumerateError::BadDegree(max_deg));
    }
    if max_gens == 0 || max_gens > MAX_TAYLOR_GENERATORS {
        return Err(EnumerateError::BadGeneratorCount(max_gens));
    }
    Ok(())
}

/// Every minimal ideal in `n` variables with generators of degree
/// `≤ max_deg`, at most `max_gens` generators, in `family`.
pub fn enumerate_ideals(params: &EnumerationParams) -> Result<IdealStream, EnumerateError> {
    validate_params(params)?;
    let fam = params.family;
    let sf = fam.squarefree_only();
    let layers: Vec<Vec<Monomial>> = (1..=params.max_deg)
        .map(|d| monomials_of_degree(params.n, d, sf))
        .collect();
    let walks: Vec<Vec<Monomial>> = if fam.equigenerated_only() {
        layers.into_iter().filter(|l| !l.is_empty()).collect()
    } else {
        vec![layers.concat()]
    };
    if let Some(big) = walks.iter().find(|w| w.len() > MAX_CANDIDATES) {
        return Err(EnumerateError::TooManyCandidates { count: big.len() });
    }
    let walks: Vec<AntichainWalk> = walks
        .into_iter()
        .map(|c| AntichainWalk::new(params.n, c, params.max_gens, fam.stable))
        .collect();
    Ok(IdealStream {
        walks: walks.into_iter(),
        current: None,
        matroidal: fam.matroidal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn params(n: usize, max_deg: u32, max_gens: usize, family: Family) -> EnumerationParams {
        EnumerationParams {
            n,
            max_deg,
            max_gens,
            family,
        }
    }

    fn texts(p: EnumerationParams) -> Vec<String> {
        enumerate_ideals(&p)
            .unwrap()
            .map(|i| i.to_string())
            .collect()
    }

    #[test]
    fn one_variable() {
        assert_eq!(texts(params(1, 2, 2, Family::ALL)), vec!["x1", "x1^2"]);
    }

    #[test]
    fn two_variables_degree_one() {
        assert_eq!(
            texts(params(2, 1, 2, Family::ALL)),
            vec!["x1", "x1, x2", "x2"]
        );
    }

    #[test]
    fn no_duplicates() {
        let all = texts(params(3, 3, 4, Family::ALL));
        let set: HashSet<&String> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn candidate_layers_are_canonical() {
        let l = monomials_of_degree(3, 2, false);
        let t: Vec<String> = l.iter().map(|m| m.to_string()).collect();
        assert_eq!(t, ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]);
        assert_eq!(monomials_of_degree(4, 2, true).len(), 6);
    }

    /// Pruned families must equal predicate filtering of the full stream, in order.
    #[test]
    fn pruned_families_match_filtering() {
        for fam in [
            Family::stable(),
            Family::squarefree(),
            Family::equigenerated(),
            Family::matroidal(),
            Family::stable().and(Family::equigenerated()),
            Family::squarefree().and(Family::stable()),
        ] {
            for (n, d, g) in [(2, 3, 4), (3, 2, 5), (3, 3, 3)] {
                let filtered: Vec<String> = enumerate_ideals(&params(n, d, g, Family::ALL))
                    .unwrap()
                    .filter(|i| fam.admits(i))
                    .map(|i| i.to_string())
                    .collect();
                assert_eq!(
                    texts(params(n, d, g, fam)),
                    filtered,
                    "{fam} n={n} d={d} g={g}"
                );
            }
        }
    }

    #[test]
    fn envelope_errors() {
        let e = |p| enumerate_ideals(&p).err().unwrap();
        assert!(matches!(
            e(params(4, 2, 3, Family::ALL)),
            EnumerateError::TooManyVariables { max: 3, .. }
        ));
        assert!(enumerate_ideals(&params(4, 3, 3, Family::stable())).is_ok());
        assert!(enumerate_ideals(&params(5, 5, 3, Family::squarefree())).is_ok());
        assert!(matches!(
            e(params(6, 2, 3, Family::squarefree())),
            EnumerateError::TooManyVariables { .. }
        ));
        assert_eq!(
            e(params(3, 0, 3, Family::ALL)),
            EnumerateError::BadDegree(0)
        );
        assert_eq!(
            e(params(3, 2, 21, Family::ALL)),
            EnumerateError::BadGeneratorCount(21)
        );
        assert_eq!(e(params(0, 2, 3, Family::ALL)), EnumerateError::NoVariables);
        assert!(matches!(
            e(params(4, 6, 3, Family::stable())),
            EnumerateError::TooManyCandidates { count: 209 }
        ));
        assert!(e(params(4, 6, 3, Family::stable())).is_envelope());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("all".parse::<Family>().unwrap(), Family::ALL);
        let f: Family = "stable, equigenerated".parse().unwrap();
        assert!(f.stable && f.equigenerated && !f.squarefree);
        assert_eq!(f.to_string(), "stable,equigenerated");
        assert!("bogus".parse::<Family>().is_err());
    }
}
