//! Exponent-vector monomials and minimally generated monomial ideals.
//!
//! Variables are numbered `1..=n` everywhere in this module's public API,
//! matching the `x1, x2, ...` text grammar. Generator positions inside an
//! ideal are ordinary 0-based slice indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported ambient variable count.
pub const MAX_VARS: usize = 16;

/// Errors raised by monomial arithmetic and ideal construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("ambient mismatch: {left} variables vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },
    #[error("ambient variable count {0} outside 1..={MAX_VARS}")]
    BadAmbient(usize),
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,
    #[error("the unit monomial generates the whole ring, not a proper ideal")]
    UnitGenerator,
}

/// A monomial `x1^a1 * ... * xn^an` stored as a dense exponent vector.
///
/// Positions past `n` are always zero, so derived equality and hashing agree
/// with mathematical equality for a fixed ambient ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: u8,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    /// The multiplicative unit in `n` variables.
    pub fn one(n: usize) -> Result<Self, MonomialError> {
        if n == 0 || n > MAX_VARS {
            return Err(MonomialError::BadAmbient(n));
        }
        Ok(Monomial {
            n: n as u8,
            exps: [0; MAX_VARS],
        })
    }

    /// The variable `x_k` in `n` variables.
    pub fn var(n: usize, k: usize) -> Result<Self, MonomialError> {
        let mut m = Self::one(n)?;
        if k == 0 || k > n {
            return Err(MonomialError::VariableOutOfRange { index: k, n });
        }
        m.exps[k - 1] = 1;
        Ok(m)
    }

    /// Builds a monomial from its exponents; the slice length is the ambient `n`.
    pub fn from_exponents(exps: &[u16]) -> Result<Self, MonomialError> {
        let mut m = Self::one(exps.len())?;
        m.exps[..exps.len()].copy_from_slice(exps);
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.n()]
    }

    /// Exponent of `x_k` (1-based). Out-of-range indices read as zero.
    pub fn exponent(&self, k: usize) -> u16 {
        if k == 0 || k > self.n() {
            0
        } else {
            self.exps[k - 1]
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents().iter().all(|&e| e <= 1)
    }

    /// If this monomial is a single variable `x_k`, returns `k`.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.max_index()
        } else {
            None
        }
    }

    /// Variables dividing this monomial, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }

    /// `m(u)`: the largest variable index dividing `u`, `None` for the unit.
    pub fn max_index(&self) -> Option<usize> {
        self.exponents().iter().rposition(|&e| e > 0).map(|i| i + 1)
    }

    fn check_ambient(&self, other: &Monomial) -> Result<(), MonomialError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(MonomialError::AmbientMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u16, u16) -> u16) -> Monomial {
        let mut out = *self;
        for (o, &b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = f(*o, b);
        }
        out
    }

    pub fn checked_divides(&self, other: &Monomial) -> Result<bool, MonomialError> {
        self.check_ambient(other)?;
        Ok(self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b))
    }

    pub fn checked_lcm(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(other)?;
        Ok(self.zip_with(other, u16::max))
    }

    pub fn checked_gcd(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(other)?;
        Ok(self.zip_with(other, u16::min))
    }

    /// Componentwise `self <= other`.
    ///
    /// # Panics
    /// If the ambient rings differ; use [`Monomial::checked_divides`] for untrusted input.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.checked_divides(other)
            .expect("monomial ambient mismatch")
    }

    /// Componentwise maximum. Panics on ambient mismatch.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.checked_lcm(other).expect("monomial ambient mismatch")
    }

    /// Componentwise minimum. Panics on ambient mismatch.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.checked_gcd(other).expect("monomial ambient mismatch")
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.zip_with(other, |a, b| a - b))
    }

    /// Generator of the principal colon ideal `(self) : other`, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    /// `self * x_k`.
    pub fn mul_var(&self, k: usize) -> Monomial {
        assert!(k >= 1 && k <= self.n(), "variable x{k} out of range");
        let mut out = *self;
        out.exps[k - 1] = out.exps[k - 1].checked_add(1).expect("exponent overflow");
        out
    }

    /// `self / x_k` when `x_k` divides `self`.
    pub fn div_var(&self, k: usize) -> Option<Monomial> {
        if self.exponent(k) == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[k - 1] -= 1;
        Some(out)
    }

    /// Reverse-lexicographic comparison: `u > v` iff the last nonzero entry
    /// of `exponents(u) - exponents(v)` is negative.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        for k in (0..MAX_VARS).rev() {
            match self.exps[k].cmp(&other.exps[k]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        self.check_ambient(&rhs).expect("monomial ambient mismatch");
        let mut out = self;
        for (o, &b) in out.exps.iter_mut().zip(rhs.exps.iter()) {
            *o = o.checked_add(b).expect("exponent overflow");
        }
        out
    }
}

/// Canonical generator order: degree ascending, then revlex descending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| other.revlex_cmp(self))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Removes duplicates and non-minimal elements, returning the survivors in
/// canonical order. Unlike [`minimalize`] this accepts the unit and the
/// empty set, which the colon computations need.
pub(crate) fn minimal_elements(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // Sorted by degree, so only earlier elements can divide `g`.
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal given by its minimal generators in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The zero ideal, used as the colon of an empty prefix.
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            generators: Vec::new(),
        }
    }

    /// Caller guarantees `generators` is minimal, canonical, and in `n` variables.
    pub(crate) fn from_canonical(n: usize, generators: Vec<Monomial>) -> Self {
        debug_assert!(generators.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(generators.iter().all(|g| g.n() == n));
        MonomialIdeal { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of minimal generators, `r = |G(I)|`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True iff some generator divides `w`.
    pub fn contains(&self, w: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(w))
    }

    /// Whether this is the unit ideal (a generator equal to `1`).
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    /// The common generator degree, if all generators share one.
    pub fn common_degree(&self) -> Option<u32> {
        let d = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    /// gcd of all generators; `None` for the zero ideal.
    pub fn gcd(&self) -> Option<Monomial> {
        let (first, rest) = self.generators.split_first()?;
        Some(rest.iter().fold(*first, |acc, g| acc.gcd(g)))
    }
}

/// Canonicalizes a generator list: drops duplicates and redundant
/// generators and sorts the rest into canonical order.
pub fn minimalize<I>(gens: I) -> Result<MonomialIdeal, MonomialError>
where
    I: IntoIterator<Item = Monomial>,
{
    let gens: Vec<Monomial> = gens.into_iter().collect();
    let first = gens.first().ok_or(MonomialError::EmptyGenerators)?;
    let n = first.n();
    if let Some(bad) = gens.iter().find(|g| g.n() != n) {
        return Err(MonomialError::AmbientMismatch {
            left: n,
            right: bad.n(),
        });
    }
    if gens.iter().any(Monomial::is_one) {
        return Err(MonomialError::UnitGenerator);
    }
    Ok(MonomialIdeal::from_canonical(n, minimal_elements(gens)))
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("0");
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
