//! Runs the classification checks over a stream of ideals and collects a
//! [`RunReport`]. Failures are data: every failing record carries the ideal in
//! the text grammar so it can be replayed from the command line.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::{betti_eliahou_kervaire, betti_formula, betti_oracle, binomial};
use crate::classify::{
    cor23_verdict, is_thm22_form, make_thm22, matroidal_product_form, prop21_verdict,
    squarefree_stable_form, thm13_all_orders, thm13_verdict, thm31_verdict, ClassifyError,
};
use crate::monomial::MonomialIdeal;
use crate::quotients::{find_order, is_matroidal, is_squarefree_stable, is_stable, m_stats};
use crate::taylor::{build_taylor, is_minimal_subset_test};

/// Largest `r` for which the minimal-Taylor criterion is checked on every valid order.
pub const ALL_ORDERS_MAX_R: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Thm13,
    Prop21,
    Thm22,
    Cor23,
    Thm31,
    Ex33,
    Ex34,
    BettiAgree,
    ComplexDd0,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Thm13,
        Check::Prop21,
        Check::Thm22,
        Check::Cor23,
        Check::Thm31,
        Check::Ex33,
        Check::Ex34,
        Check::BettiAgree,
        Check::ComplexDd0,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Thm13 => "thm13",
            Check::Prop21 => "prop21",
            Check::Thm22 => "thm22",
            Check::Cor23 => "cor23",
            Check::Thm31 => "thm31",
            Check::Ex33 => "ex33",
            Check::Ex34 => "ex34",
            Check::BettiAgree => "betti_agree",
            Check::ComplexDd0 => "complex_dd0",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<Check>, String> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub ideal: String,
    pub check: Check,
    pub verdict: Verdict,
    /// Failure witness, skip reason, or for a passing Betti check the table.
    pub witness: Option<String>,
}

/// An observation worth reporting that is not a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub ideal: String,
    pub check: Check,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub ideals: usize,
    /// Records that ran to a verdict (pass + fail).
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMeta {
    pub command: String,
    pub inputs: Vec<String>,
    pub envelope: Option<String>,
    /// False when the stream was truncated with a limit.
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub meta: RunMeta,
    pub records: Vec<CheckRecord>,
    pub findings: Vec<Finding>,
    pub summary: Summary,
}

impl RunReport {
    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn count(&self, check: Check, verdict: Verdict) -> usize {
        self.records
            .iter()
            .filter(|r| r.check == check && r.verdict == verdict)
            .count()
    }
}

struct Outcome {
    verdict: Verdict,
    witness: Option<String>,
    findings: Vec<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            verdict: Verdict::Pass,
            witness: None,
            findings: Vec::new(),
        }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Skip,
            witness: Some(reason.into()),
            findings: Vec::new(),
        }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
            findings: Vec::new(),
        }
    }

    fn expect(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(witness())
        }
    }

    fn noting(mut self, note: impl Into<String>) -> Self {
        self.findings.push(note.into());
        self
    }
}

/// Precondition failures and envelope overruns become skips.
fn skip_on<T>(r: Result<T, ClassifyError>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::skip(e.to_string()))
}

fn check_complex(ideal: &MonomialIdeal) -> Outcome {
    let t = match build_taylor(ideal.generators()) {
        Ok(t) => t,
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let r = ideal.len() as u64;
    let want: Vec<usize> = (0..r).map(|q| binomial(r, q + 1) as usize).collect();
    if !t.verify_complex() {
        return Outcome::fail("d∘d ≠ 0");
    }
    if t.ranks() != want {
        return Outcome::fail(format!("ranks {:?} ≠ {:?}", t.ranks(), want));
    }
    let subset = is_minimal_subset_test(ideal.generators()).expect("validated by build");
    Outcome::expect(t.is_minimal() == subset, || {
        format!(
            "matrix minimality {} ≠ subset test {}",
            t.is_minimal(),
            subset
        )
    })
}

fn check_betti(ideal: &MonomialIdeal) -> Outcome {
    let order = match find_order(ideal) {
        Ok(Some(o)) => o,
        Ok(None) => return Outcome::skip("no linear-quotients order"),
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let oracle = match betti_oracle(ideal) {
        Ok(t) => t,
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let formula = betti_formula(&order);
    if formula.total() != oracle.total() {
        return Outcome::fail(format!(
            "formula {:?} ≠ oracle {:?}",
            formula.total(),
            oracle.total()
        ));
    }
    if !oracle.is_consistent() {
        return Outcome::fail("graded oracle does not sum to totals");
    }
    if let Ok(ek) = betti_eliahou_kervaire(ideal) {
        if ek.total() != oracle.total() {
            return Outcome::fail(format!(
                "Eliahou-Kervaire {:?} ≠ oracle {:?}",
                ek.total(),
                oracle.total()
            ));
        }
    }
    let mut out = Outcome::pass();
    out.witness = Some(format!("betti {:?}", oracle.total()));
    out
}

fn check_thm13(ideal: &MonomialIdeal) -> Outcome {
    let v = match skip_on(thm13_verdict(ideal)) {
        Ok(v) => v,
        Err(o) => return o,
    };
    if !v.holds {
        return Outcome::fail(format!(
            "taylor_minimal={} but set sizes {:?}",
            v.taylor_minimal, v.set_sizes
        ));
    }
    if ideal.len() > ALL_ORDERS_MAX_R {
        return Outcome::pass();
    }
    let all = match skip_on(thm13_all_orders(ideal)) {
        Ok(all) => all,
        Err(o) => return o,
    };
    // Any other valid order that disagrees is an observation, not a failure.
    let mut out = Outcome::pass();
    if all.iter().any(|w| w.sizes_full != v.sizes_full) {
        out = out.noting("the set-size condition depends on the linear-quotients order");
    }
    for bad in all.iter().filter(|w| !w.holds) {
        out = out.noting(format!(
            "order {:?}: taylor_minimal={} but set sizes {:?}",
            bad.order.order().iter().map(|i| i + 1).collect::<Vec<_>>(),
            bad.taylor_minimal,
            bad.set_sizes
        ));
    }
    out
}

fn check_prop21(ideal: &MonomialIdeal) -> Outcome {
    let v = match skip_on(prop21_verdict(ideal)) {
        Ok(v) => v,
        Err(o) => return o,
    };
    if !v.all_equivalent {
        return Outcome::fail(format!(
            "(i, ii, iii) = ({}, {}, {})",
            v.cond_i, v.cond_ii, v.cond_iii
        ));
    }
    // m_i(I) ≥ 1 for every i up to max m(u).
    let stats = m_stats(ideal);
    let b0 = stats.keys().next_back().copied().unwrap_or(0);
    let gap = (1..=b0).find(|i| !stats.contains_key(i));
    Outcome::expect(gap.is_none(), || {
        format!("m_{}(I) = 0 below max m(u) = {b0}", gap.unwrap())
    })
}

fn check_thm22(ideal: &MonomialIdeal) -> Outcome {
    if !is_stable(ideal) {
        return Outcome::skip("ideal is not stable");
    }
    let minimal = match is_minimal_subset_test(ideal.generators()) {
        Ok(m) => m,
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let form = is_thm22_form(ideal);
    if minimal != form.is_some() {
        return Outcome::fail(format!("taylor_minimal={minimal} but form={form:?}"));
    }
    if let Some((_, a)) = form {
        match make_thm22(ideal.n(), &a) {
            Ok(rebuilt) if &rebuilt == ideal => {}
            other => return Outcome::fail(format!("rebuilding from {a:?} gave {other:?}")),
        }
    }
    Outcome::pass()
}

fn check_cor23(ideal: &MonomialIdeal) -> Outcome {
    match skip_on(cor23_verdict(ideal)) {
        Ok(v) => Outcome::expect(v.holds, || {
            format!("taylor_minimal={} but form={:?}", v.taylor_minimal, v.form)
        }),
        Err(o) => o,
    }
}

fn check_thm31(ideal: &MonomialIdeal) -> Outcome {
    if ideal.common_degree().is_none() {
        return Outcome::skip("generators of mixed degree");
    }
    match skip_on(thm31_verdict(ideal)) {
        Ok(v) => Outcome::expect(v.holds, || {
            format!(
                "taylor_minimal={} form={:?} linear_quotients={:?}",
                v.taylor_minimal, v.form, v.linear_quotients
            )
        }),
        Err(o) => o,
    }
}

fn check_ex33(ideal: &MonomialIdeal) -> Outcome {
    if !ideal.is_squarefree() || ideal.common_degree().is_none() {
        return Outcome::skip("not squarefree equigenerated");
    }
    if !is_matroidal(ideal).unwrap_or(false) {
        return Outcome::skip("not matroidal");
    }
    let minimal = match is_minimal_subset_test(ideal.generators()) {
        Ok(m) => m,
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let form = matroidal_product_form(ideal);
    Outcome::expect(minimal == form.is_some(), || {
        format!("taylor_minimal={minimal} but product form={form:?}")
    })
}

fn check_ex34(ideal: &MonomialIdeal) -> Outcome {
    if !ideal.is_squarefree() || ideal.common_degree().is_none() {
        return Outcome::skip("not squarefree equigenerated");
    }
    if !is_squarefree_stable(ideal).unwrap_or(false) {
        return Outcome::skip("not squarefree stable");
    }
    let minimal = match is_minimal_subset_test(ideal.generators()) {
        Ok(m) => m,
        Err(e) => return Outcome::skip(e.to_string()),
    };
    let form = squarefree_stable_form(ideal);
    let out = Outcome::expect(minimal == form.is_some(), || {
        format!("taylor_minimal={minimal} but form={form:?}")
    });
    match form {
        Some((0, q)) => out.noting(format!(
            "matches with u = 1 (p = 0, q = {q}); a bound p ≥ 1 would exclude it"
        )),
        _ => out,
    }
}

fn run_one(ideal: &MonomialIdeal, check: Check) -> Outcome {
    match check {
        Check::Thm13 => check_thm13(ideal),
        Check::Prop21 => check_prop21(ideal),
        Check::Thm22 => check_thm22(ideal),
        Check::Cor23 => check_cor23(ideal),
        Check::Thm31 => check_thm31(ideal),
        Check::Ex33 => check_ex33(ideal),
        Check::Ex34 => check_ex34(ideal),
        Check::BettiAgree => check_betti(ideal),
        Check::ComplexDd0 => check_complex(ideal),
    }
}

/// Applies every selected check to every ideal. Ideals are processed in
/// parallel; records keep stream order.
pub fn run_checks<I>(stream: I, checks: &[Check], meta: RunMeta) -> RunReport
where
    I: IntoIterator<Item = MonomialIdeal>,
{
    let ideals: Vec<MonomialIdeal> = stream.into_iter().collect();
    let per_ideal: Vec<Vec<(CheckRecord, Vec<Finding>)>> = ideals
        .par_iter()
        .map(|ideal| {
            let text = ideal.to_string();
            checks
                .iter()
                .map(|&check| {
                    let o = run_one(ideal, check);
                    let findings = o
                        .findings
                        .into_iter()
                        .map(|note| Finding {
                            ideal: text.clone(),
                            check,
                            note,
                        })
                        .collect();
                    let record = CheckRecord {
                        ideal: text.clone(),
                        check,
                        verdict: o.verdict,
                        witness: o.witness,
                    };
                    (record, findings)
                })
                .collect()
        })
        .collect();

    let mut report = RunReport {
        meta,
        ..RunReport::default()
    };
    report.summary.ideals = ideals.len();
    for (record, findings) in per_ideal.into_iter().flatten() {
        match record.verdict {
            Verdict::Pass => report.summary.passed += 1,
            Verdict::Fail => report.summary.failed += 1,
            Verdict::Skip => report.summary.skipped += 1,
        }
        report.records.push(record);
        report.findings.extend(findings);
    }
    report.summary.checked = report.summary.passed + report.summary.failed;
    report
}
