//! Minimal Taylor resolutions of monomial ideals.
//!
//! Builds the Taylor complex of a monomial ideal, decides minimality, finds
//! linear-quotients orders, computes Betti numbers two independent ways, and
//! recognizes the ideal families whose Taylor resolution is minimal. The
//! [`harness`] module runs those checks over exhaustive enumerations.
//!
//! ```
//! use mintaylor::{parse_ideal, build_taylor, find_order, betti_formula};
//!
//! let ideal = parse_ideal("x1^2, x1*x2, x2^2", 2).unwrap().ideal;
//! let complex = build_taylor(ideal.generators()).unwrap();
//! assert!(complex.verify_complex());
//! assert!(!complex.is_minimal());
//! let order = find_order(&ideal).unwrap().unwrap();
//! assert_eq!(betti_formula(&order).total(), &[3, 2, 0]);
//! ```

pub mod betti;
pub mod classify;
pub mod enumerate;
pub mod harness;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod quotients;
pub mod report;
pub mod taylor;

pub use betti::{
    betti_eliahou_kervaire, betti_formula, betti_oracle, betti_oracle_multigraded,
    has_linear_resolution, BettiError, BettiTable,
};
pub use classify::{classify, ClassificationReport, ClassifyError};
pub use enumerate::{enumerate_ideals, EnumerateError, EnumerationParams, Family, IdealStream};
pub use harness::{run_checks, Check, CheckRecord, Finding, RunMeta, RunReport, Summary, Verdict};
pub use monomial::{minimalize, Monomial, MonomialError, MonomialIdeal, MAX_VARS};
pub use parse::{parse_generators, parse_ideal, parse_monomial, ParseError, ParsedIdeal};
pub use quotients::{
    all_orders, check_order, find_order, is_matroidal, is_squarefree_stable, is_stable,
    OrderedIdeal, QuotientError, VarSet,
};
pub use report::{emit_report, Format};
pub use taylor::{build_taylor, is_minimal_subset_test, TaylorComplex, TaylorError};
