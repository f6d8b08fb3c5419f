//! Recognizers and constructors for the minimal-Taylor classification
//! statements, each paired with a verdict that computes both sides of the
//! claimed equivalence independently.
//!
//! Recognizers read the canonical generator order; no search over variable
//! relabelings happens except in [`matroidal_product_form`].

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::betti::{betti_oracle, has_linear_resolution, BettiError, BettiTable};
use crate::monomial::{minimalize, Monomial, MonomialError, MonomialIdeal};
use crate::quotients::{
    all_orders, find_order, is_matroidal, is_squarefree_stable, is_stable, m_stats, OrderedIdeal,
    QuotientError,
};
use crate::taylor::{is_minimal_subset_test, TaylorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("ideal has no linear-quotients order")]
    NoLinearQuotients,
    #[error("ideal is not stable")]
    NotStable,
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("common generator degree must exceed 1")]
    DegreeTooSmall,
    #[error("ideal does not have a linear resolution")]
    NoLinearResolution,
    #[error("{r} parameters need at least {r} variables, got {n}")]
    TooFewVariables { r: usize, n: usize },
    #[error("at least one parameter is required")]
    NoParameters,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Taylor(#[from] TaylorError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

impl ClassifyError {
    pub fn is_envelope(&self) -> bool {
        match self {
            ClassifyError::Quotient(e) => e.is_envelope(),
            ClassifyError::Taylor(e) => e.is_envelope(),
            ClassifyError::Betti(e) => e.is_envelope(),
            _ => false,
        }
    }
}

fn taylor_minimal(ideal: &MonomialIdeal) -> Result<bool, TaylorError> {
    is_minimal_subset_test(ideal.generators())
}

/// Both sides of the minimal-Taylor criterion for one linear-quotients order.
#[derive(Debug, Clone, Serialize)]
pub struct Thm13Verdict {
    pub order: OrderedIdeal,
    pub set_sizes: Vec<usize>,
    pub taylor_minimal: bool,
    /// Whether `|set(u_i)| = i - 1` for every position.
    pub sizes_full: bool,
    pub holds: bool,
}

fn thm13_for(order: OrderedIdeal, taylor_minimal: bool) -> Thm13Verdict {
    let set_sizes = order.set_sizes();
    let sizes_full = set_sizes.iter().enumerate().all(|(i, &s)| s == i);
    Thm13Verdict {
        order,
        set_sizes,
        taylor_minimal,
        sizes_full,
        holds: taylor_minimal == sizes_full,
    }
}

/// Minimal Taylor resolution ⟺ `|set(u_i)| = i - 1`, for the order `find_order` returns.
pub fn thm13_verdict(ideal: &MonomialIdeal) -> Result<Thm13Verdict, ClassifyError> {
    let order = find_order(ideal)?.ok_or(ClassifyError::NoLinearQuotients)?;
    Ok(thm13_for(order, taylor_minimal(ideal)?))
}

/// The same verdict for every valid order; `Ok(vec![])` when none exists.
pub fn thm13_all_orders(ideal: &MonomialIdeal) -> Result<Vec<Thm13Verdict>, ClassifyError> {
    let minimal = taylor_minimal(ideal)?;
    Ok(all_orders(ideal)?
        .into_iter()
        .map(|o| thm13_for(o, minimal))
        .collect())
}

/// The three equivalent conditions for a stable ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop21Verdict {
    /// Minimal Taylor resolution.
    pub cond_i: bool,
    /// `max m(u) = |G(I)|`.
    pub cond_ii: bool,
    /// `m_i(I) = 1` for `i ≤ |G(I)|` and `0` above.
    pub cond_iii: bool,
    pub all_equivalent: bool,
}

pub fn prop21_verdict(ideal: &MonomialIdeal) -> Result<Prop21Verdict, ClassifyError> {
    if !is_stable(ideal) {
        return Err(ClassifyError::NotStable);
    }
    let r = ideal.len();
    let stats = m_stats(ideal);
    let cond_i = taylor_minimal(ideal)?;
    let cond_ii = stats.keys().next_back() == Some(&r);
    let cond_iii = (1..=ideal.n()).all(|i| {
        let want = usize::from(i <= r);
        stats.get(&i).copied().unwrap_or(0) == want
    });
    Ok(Prop21Verdict {
        cond_i,
        cond_ii,
        cond_iii,
        all_equivalent: cond_i == cond_ii && cond_ii == cond_iii,
    })
}

/// `u_i = X_i · ∏_{k ≤ i} X_k^{a_k}` for `i = 1..=r`.
pub fn make_thm22(n: usize, a: &[u16]) -> Result<MonomialIdeal, ClassifyError> {
    let r = a.len();
    if r == 0 {
        return Err(ClassifyError::NoParameters);
    }
    if r > n {
        return Err(ClassifyError::TooFewVariables { r, n });
    }
    let mut gens = Vec::with_capacity(r);
    let mut prefix = vec![0u16; n];
    for (i, &ai) in a.iter().enumerate() {
        prefix[i] = ai;
        gens.push(Monomial::from_exponents(&prefix)?.mul_var(i + 1));
    }
    let ideal = minimalize(gens)?;
    debug_assert_eq!(ideal.len(), r);
    debug_assert!(is_stable(&ideal));
    Ok(ideal)
}

/// Parameters `(r, a)` if the canonical generators are exactly the
/// stable minimal-Taylor family.
pub fn is_thm22_form(ideal: &MonomialIdeal) -> Option<(usize, Vec<u16>)> {
    let r = ideal.len();
    if r == 0 || r > ideal.n() {
        return None;
    }
    let gens = ideal.generators();
    let a: Vec<u16> = (0..r)
        .map(|i| gens[i].exponent(i + 1).checked_sub(1))
        .collect::<Option<_>>()?;
    let rebuilt = make_thm22(ideal.n(), &a).ok()?;
    (rebuilt.generators() == gens).then_some((r, a))
}

/// Both sides of the equigenerated stable criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cor23Verdict {
    pub degree: u32,
    pub taylor_minimal: bool,
    /// `r` when `I = X_1^{d-1} (X_1, ..., X_r)`.
    pub form: Option<usize>,
    pub holds: bool,
}

/// `r` if the canonical generators are `X_1^{d-1} X_i`, `i = 1..=r`.
pub fn is_cor23_form(ideal: &MonomialIdeal) -> Option<usize> {
    let d = ideal.common_degree()?;
    let n = ideal.n();
    let r = ideal.len();
    if d < 1 || r > n {
        return None;
    }
    let mut base = vec![0u16; n];
    base[0] = (d - 1) as u16;
    let base = Monomial::from_exponents(&base).ok()?;
    ideal
        .generators()
        .iter()
        .enumerate()
        .all(|(i, g)| *g == base.mul_var(i + 1))
        .then_some(r)
}

pub fn cor23_verdict(ideal: &MonomialIdeal) -> Result<Cor23Verdict, ClassifyError> {
    if !is_stable(ideal) {
        return Err(ClassifyError::NotStable);
    }
    let degree = ideal
        .common_degree()
        .ok_or(ClassifyError::NotEquigenerated)?;
    if degree <= 1 {
        return Err(ClassifyError::DegreeTooSmall);
    }
    let taylor_minimal = taylor_minimal(ideal)?;
    let form = is_cor23_form(ideal);
    Ok(Cor23Verdict {
        degree,
        taylor_minimal,
        form,
        holds: taylor_minimal == form.is_some(),
    })
}

/// `I = u · (X_{i_1}, ..., X_{i_k})`: a common factor and distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm31Form {
    pub factor: Monomial,
    pub variables: Vec<usize>,
}

/// Recognizes `u · (X_{i_1}, ..., X_{i_k})`. A single generator `w` is read
/// as `(w / X_{m(w)}) · (X_{m(w)})`.
pub fn is_thm31_form(ideal: &MonomialIdeal) -> Option<Thm31Form> {
    let gens = ideal.generators();
    if let [only] = gens {
        let m = only.max_index()?;
        return Some(Thm31Form {
            factor: only.div_var(m)?,
            variables: vec![m],
        });
    }
    let g = ideal.gcd()?;
    let mut variables = gens
        .iter()
        .map(|u| u.checked_div(&g)?.as_variable())
        .collect::<Option<Vec<usize>>>()?;
    variables.sort_unstable();
    let distinct = variables.windows(2).all(|w| w[0] < w[1]);
    distinct.then_some(Thm31Form {
        factor: g,
        variables,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm31Verdict {
    pub taylor_minimal: bool,
    pub form: Option<Thm31Form>,
    /// Whether a linear-quotients order exists; computed only when the form matches.
    pub linear_quotients: Option<bool>,
    pub holds: bool,
}

/// For ideals with a linear resolution: minimal Taylor ⟺ product form, and the
/// product form has linear quotients.
pub fn thm31_verdict(ideal: &MonomialIdeal) -> Result<Thm31Verdict, ClassifyError> {
    if !has_linear_resolution(ideal)? {
        return Err(ClassifyError::NoLinearResolution);
    }
    let taylor_minimal = taylor_minimal(ideal)?;
    let form = is_thm31_form(ideal);
    let linear_quotients = match &form {
        Some(_) => Some(find_order(ideal)?.is_some()),
        None => None,
    };
    let holds = taylor_minimal == form.is_some() && linear_quotients != Some(false);
    Ok(Thm31Verdict {
        taylor_minimal,
        form,
        linear_quotients,
        holds,
    })
}

/// `X_{i_1}⋯X_{i_p} · (X_{j_1}, ..., X_{j_q})` with disjoint index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductForm {
    pub prefix: Vec<usize>,
    pub variables: Vec<usize>,
}

/// The matroidal product form, up to relabeling of variables: the gcd is
/// squarefree and the quotients are distinct variables outside its support.
pub fn matroidal_product_form(ideal: &MonomialIdeal) -> Option<ProductForm> {
    if !ideal.is_squarefree() {
        return None;
    }
    let form = is_thm31_form(ideal)?;
    let prefix: Vec<usize> = form.factor.support().collect();
    if !form.factor.is_squarefree() || form.variables.iter().any(|v| prefix.contains(v)) {
        return None;
    }
    Some(ProductForm {
        prefix,
        variables: form.variables,
    })
}

/// `(p, q)` if `I = X_1⋯X_p · (X_{p+1}, ..., X_q)` literally, with `p ≥ 0`.
pub fn squarefree_stable_form(ideal: &MonomialIdeal) -> Option<(usize, usize)> {
    let form = matroidal_product_form(ideal)?;
    let p = form.prefix.len();
    let prefix_ok = form.prefix.iter().copied().eq(1..=p);
    let vars_ok = form
        .variables
        .iter()
        .copied()
        .eq(p + 1..=p + form.variables.len());
    (prefix_ok && vars_ok).then_some((p, p + form.variables.len()))
}

/// Everything the recognizers can say about one ideal. Inapplicable
/// fields are `None`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub ideal: MonomialIdeal,
    pub linear_quotients: Option<OrderedIdeal>,
    pub set_sizes: Option<Vec<usize>>,
    pub taylor_minimal: bool,
    pub stable: bool,
    pub thm22_form: Option<(usize, Vec<u16>)>,
    pub thm31_form: Option<Thm31Form>,
    pub linear_resolution: Option<bool>,
    pub matroidal: Option<bool>,
    pub squarefree_stable: Option<bool>,
    pub m_stats: BTreeMap<usize, usize>,
    pub betti: Option<BettiTable>,
}

/// Fills every applicable field. Constituents past their envelopes leave
/// their fields empty rather than failing the whole report.
pub fn classify(ideal: &MonomialIdeal) -> Result<ClassificationReport, ClassifyError> {
    let taylor_minimal = taylor_minimal(ideal)?;
    let linear_quotients = match find_order(ideal) {
        Ok(o) => o,
        Err(e) if e.is_envelope() => None,
        Err(e) => return Err(e.into()),
    };
    let betti = match betti_oracle(ideal) {
        Ok(t) => Some(t),
        Err(e) if e.is_envelope() => None,
        Err(e) => return Err(e.into()),
    };
    let linear_resolution = match (&betti, ideal.common_degree()) {
        (_, None) => Some(false),
        (Some(_), Some(_)) => Some(has_linear_resolution(ideal)?),
        (None, Some(_)) => None,
    };
    let squarefree_equi = ideal.is_squarefree() && ideal.common_degree().is_some();
    Ok(ClassificationReport {
        ideal: ideal.clone(),
        set_sizes: linear_quotients.as_ref().map(OrderedIdeal::set_sizes),
        linear_quotients,
        taylor_minimal,
        stable: is_stable(ideal),
        thm22_form: is_thm22_form(ideal),
        thm31_form: is_thm31_form(ideal),
        linear_resolution,
        matroidal: if squarefree_equi {
            Some(is_matroidal(ideal)?)
        } else {
            None
        },
        squarefree_stable: if ideal.is_squarefree() {
            Some(is_squarefree_stable(ideal)?)
        } else {
            None
        },
        m_stats: m_stats(ideal),
        betti,
    })
}
