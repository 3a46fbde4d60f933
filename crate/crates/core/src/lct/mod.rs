//! Annihilators, b-functions and the logarithmic comparison verdict.
//!
//! For a free divisor the comparison holds exactly when the divisor is
//! Spencer and `Ann(1/f)` is generated by the order-one operators
//! `δ_i + α_i`. Koszul freeness implies the Spencer condition; without it
//! the verdict stays undetermined.

mod annihilator;
mod bfunction;

use num_traits::{One, Zero};
use serde::Serialize;

pub use annihilator::{
    annihilator_fs, compare_annihilators, order_one_annihilator, parameter_name, search_witness, specialize_at_minus_one,
    Equality, Witness,
};
pub use bfunction::{bfunction_from_annihilator, bfunction_oracle, verify_functional_equation, BFunction, FunctionalEquation};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::logder::{check_squarefree, Derivation, euler_field, logarithmic_derivations, saito_freeness_test, Freeness, LogDerivationBasis};
use crate::poly::{find_quasihomogeneous_weights, fmt_rational, Polynomial, Positivity, Rational, WeightVector};
use crate::spencer::koszul_test;
use crate::weyl::{LeftIdeal, WeylElement};

/// Final verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "LCT-holds")]
    Holds,
    #[serde(rename = "LCT-fails")]
    Fails,
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "LCT-holds",
            Verdict::Fails => "LCT-fails",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Quasihomogeneity {
    Strict { weights: WeightVector },
    Weak { weights: WeightVector },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpencerStatus {
    Implied,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisSummary {
    pub derivations: Vec<String>,
    pub cofactors: Vec<String>,
    pub determinant: String,
    pub unit: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub operator: String,
    pub normal_form: String,
    pub verified: bool,
    /// How it was found: `search` or `full-annihilator`.
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorSummary {
    pub candidate: Vec<String>,
    /// Generators of `Ann(1/f)` from `Ann(f^s)` at `s = -1`.
    pub full: Option<Vec<String>>,
    pub equality: Equality,
    pub witness: Option<WitnessSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSummary {
    pub root: String,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Confirmed,
    Unconfirmed,
    Timeout,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct BFunctionSummary {
    pub factored: String,
    pub expanded: String,
    pub degree: usize,
    pub roots: Vec<RootSummary>,
    pub integer_roots_below_minus_one: Vec<String>,
    pub symmetric_about_minus_one: bool,
    pub oracle: OracleStatus,
    pub oracle_bound: u32,
}

impl BFunctionSummary {
    pub fn new(b: &BFunction, oracle: OracleStatus, oracle_bound: u32) -> Self {
        BFunctionSummary {
            factored: b.factored("s"),
            expanded: b.expanded("s"),
            degree: b.degree(),
            roots: b.roots.iter().map(|(r, m)| RootSummary { root: fmt_rational(r), multiplicity: *m }).collect(),
            integer_roots_below_minus_one: b.integer_roots_below_minus_one().iter().map(fmt_rational).collect(),
            symmetric_about_minus_one: b.roots_symmetric_about_minus_one(),
            oracle,
            oracle_bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LctReport {
    pub polynomial: String,
    pub variables: Vec<String>,
    pub squarefree: bool,
    /// `None` when the derivation stage timed out.
    pub free: Option<bool>,
    pub basis: Option<BasisSummary>,
    pub quasihomogeneous: Quasihomogeneity,
    pub koszul: Option<bool>,
    pub spencer: SpencerStatus,
    pub annihilator: Option<AnnihilatorSummary>,
    pub bfunction: Option<BFunctionSummary>,
    pub verdict: Verdict,
    pub rule: String,
    /// Stages that exhausted their step budget.
    pub timeouts: Vec<String>,
    pub caveats: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub log_basis: Option<LogDerivationBasis>,
    #[serde(skip)]
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub b: Option<BFunction>,
}

/// Knobs for [`lct_verdict`]. Every stage gets its own copy of the step
/// budget.
#[derive(Clone, Debug)]
pub struct LctOptions {
    /// Order bound of the witness search.
    pub witness_order: u32,
    /// Coefficient degree bound of the witness search; `None` uses `deg f`.
    pub witness_degree: Option<u32>,
    /// Skip `Ann(f^s)` and the b-function.
    pub skip_full_annihilator: bool,
    pub bfunction_max_degree: usize,
    /// Cap on the functional-equation bound used to confirm `b`.
    pub oracle_cap: u32,
}

impl Default for LctOptions {
    fn default() -> Self {
        LctOptions { witness_order: 2, witness_degree: None, skip_full_annihilator: false, bfunction_max_degree: 64, oracle_cap: 4 }
    }
}

/// Outcome of a budgeted stage.
fn staged<T>(stage: &str, r: Result<T>, timeouts: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_timeout() => {
            timeouts.push(stage.to_string());
            Ok(None)
        }
        Err(e) => Err(e.in_stage(stage)),
    }
}

fn names(f: &Polynomial) -> Vec<String> {
    f.ring().names().to_vec()
}

fn summarize_basis(b: &LogDerivationBasis) -> BasisSummary {
    let n = names(&b.f);
    BasisSummary {
        derivations: b.derivations.iter().map(|d| d.display_with(&n)).collect(),
        cofactors: b.derivations.iter().map(|d| d.cofactor.to_string()).collect(),
        determinant: b.determinant.to_string(),
        unit: fmt_rational(&b.unit),
    }
}

fn strings(ops: &[WeylElement]) -> Vec<String> {
    ops.iter().map(|o| o.to_string()).collect()
}

/// Recognizes `c (x1^p - x2^q) prod_{i >= 3} (x1 x_i + x2)` with `n >= 3`.
pub fn match_fpq(f: &Polynomial) -> Option<(u32, u32)> {
    let n = f.nvars();
    if n < 3 {
        return None;
    }
    let ring = f.ring();
    let x = |i| Polynomial::var(ring, i);
    let mut tail = Polynomial::one(ring);
    for i in 2..n {
        tail = &tail * &(&(&x(0) * &x(i)) + &x(1));
    }
    let d = f.total_degree()?;
    let td = 2 * (n - 2) as u32;
    let (fm, fc) = f.terms().next()?;
    for p in 1..=d {
        for q in 1..=d {
            if p.max(q) + td != d {
                continue;
            }
            let g = &(&x(0).pow(p) - &x(1).pow(q)) * &tail;
            let gc = g.coefficient(fm);
            if gc.is_zero() {
                continue;
            }
            if f.scale(&gc) == g.scale(fc) {
                return Some((p, q));
            }
        }
    }
    None
}

/// Runs derivations, freeness, weights, Koszul test, annihilator comparison
/// and the b-function, then applies the verdict rules.
///
/// Holds needs freeness, the Koszul property and equality of `Ann(1/f)` with
/// the order-one ideal; the strict-weights shortcut for free divisors is
/// also accepted, with a caveat. Fails needs freeness, the Koszul property
/// and a verified witness of proper containment. Timeouts leave the verdict
/// undetermined and are listed by stage.
pub fn lct_verdict(f: &Polynomial, budget: &Budget, opts: &LctOptions) -> Result<LctReport> {
    if f.is_constant() {
        return Err(Error::Invalid("the divisor of a constant is empty".into()));
    }
    let mut report = LctReport {
        polynomial: f.to_string(),
        variables: names(f),
        squarefree: true,
        free: None,
        basis: None,
        quasihomogeneous: Quasihomogeneity::None,
        koszul: None,
        spencer: SpencerStatus::Undetermined,
        annihilator: None,
        bfunction: None,
        verdict: Verdict::Undetermined,
        rule: String::new(),
        timeouts: Vec::new(),
        caveats: Vec::new(),
        notes: Vec::new(),
        log_basis: None,
        witness: None,
        b: None,
    };
    let mut timeouts = Vec::new();
    match check_squarefree(f, &budget.fresh()) {
        Ok(()) => {}
        Err(Error::NotSquarefree { factor }) => {
            report.squarefree = false;
            report.rule = format!("not squarefree: repeated factor {factor}");
            return Ok(report);
        }
        Err(e) if e.is_timeout() => {
            report.timeouts.push("squarefree".into());
            report.rule = "timeout in squarefree".into();
            return Ok(report);
        }
        Err(e) => return Err(e),
    }

    // Weights.
    if let Some(w) = find_quasihomogeneous_weights(f, Positivity::Strict)? {
        let e = euler_field(f, &w)?;
        let d = e.cofactor.constant_value().unwrap_or_else(Rational::one);
        let chi = Derivation::new(e.coefficients.iter().map(|c| c.scale(&d.recip())).collect(), Polynomial::one(f.ring()));
        report.notes.push(format!("Euler field {} satisfies chi(f) = f and vanishes at the origin", chi.display_with(&names(f))));
        report.quasihomogeneous = Quasihomogeneity::Strict { weights: w };
    } else if let Some(w) = find_quasihomogeneous_weights(f, Positivity::Weak)? {
        report.quasihomogeneous = Quasihomogeneity::Weak { weights: w };
    }

    // Derivations and freeness.
    let freeness = staged(
        "logder",
        logarithmic_derivations(f, &budget.fresh()).and_then(|g| saito_freeness_test(f, &g)),
        &mut timeouts,
    )?;
    let basis = match freeness {
        None => None,
        Some(Freeness::Free(b)) => {
            report.free = Some(true);
            Some(*b)
        }
        Some(Freeness::NotDetected { .. }) => {
            report.free = Some(false);
            None
        }
    };
    if let Some(b) = &basis {
        report.basis = Some(summarize_basis(b));
        if let Some(k) = staged("koszul", koszul_test(b, &budget.fresh()), &mut timeouts)? {
            report.koszul = Some(k.koszul);
            if k.koszul {
                report.spencer = SpencerStatus::Implied;
            }
        }
    }

    // Order-one candidate and witness search.
    let mut candidate: Option<LeftIdeal> = None;
    let mut equality = Equality::Unknown;
    let mut witness_summary = None;
    if let Some(b) = &basis {
        let cand = order_one_annihilator(f, b)?;
        let dmax = opts.witness_degree.unwrap_or_else(|| f.total_degree().unwrap_or(1));
        let found = staged(
            "witness-search",
            search_witness(f, &cand, opts.witness_order, dmax, &budget.fresh()),
            &mut timeouts,
        )?;
        if let Some(Some(w)) = found {
            let verified = w.verify(f, &cand, &budget.fresh())?;
            if !verified {
                return Err(Error::Certificate(format!("witness {} failed re-verification", w.operator)));
            }
            equality = Equality::Proper;
            witness_summary = Some(WitnessSummary {
                operator: w.operator.to_string(),
                normal_form: w.normal_form.to_string(),
                verified,
                source: "search".into(),
            });
            report.witness = Some(w);
        }
        candidate = Some(cand);
    }

    // Ann(f^s), b-function, Ann(1/f).
    let mut full_strings = None;
    if !opts.skip_full_annihilator {
        if let Some(ann_fs) = staged("annihilator-fs", annihilator_fs(f, &budget.fresh()), &mut timeouts)? {
            let b = staged(
                "bfunction",
                bfunction_from_annihilator(f, &ann_fs, &budget.fresh(), opts.bfunction_max_degree),
                &mut timeouts,
            )?;
            if let Some(b) = &b {
                if !b.evaluate(&-Rational::one()).is_zero() {
                    return Err(Error::Certificate(format!("b(-1) != 0 for b = {b}")));
                }
                let bound = (b.degree() as u32).min(opts.oracle_cap);
                let oracle = if b.degree() as u32 > opts.oracle_cap {
                    OracleStatus::Skipped
                } else {
                    match bfunction_oracle(f, bound, &budget.fresh()) {
                        Ok(Some(eq)) if eq.b == *b => {
                            if !verify_functional_equation(f, &eq)? {
                                return Err(Error::Certificate("functional equation check failed".into()));
                            }
                            OracleStatus::Confirmed
                        }
                        Ok(Some(eq)) if eq.b.degree() <= b.degree() => {
                            return Err(Error::Certificate(format!("oracle b-function {} disagrees with {b}", eq.b)));
                        }
                        Ok(_) => OracleStatus::Unconfirmed,
                        Err(e) if e.is_timeout() => OracleStatus::Timeout,
                        Err(e) => return Err(e),
                    }
                };
                report.bfunction = Some(BFunctionSummary::new(b, oracle, bound));
                if !b.integer_roots_below_minus_one().is_empty() {
                    report.caveats.push("b-function has integer roots below -1; Ann(f^s) at s = -1 may miss part of Ann(1/f)".into());
                }
            }
            let full = specialize_at_minus_one(f, &ann_fs)?;
            full_strings = Some(strings(full.generators()));
            let complete = b.as_ref().map_or(false, |b| b.integer_roots_below_minus_one().is_empty());
            if let Some(cand) = &candidate {
                match staged("annihilator-compare", compare(cand, &full, complete, &budget.fresh()), &mut timeouts)? {
                    Some((eq, w)) => {
                        if equality == Equality::Proper && eq == Equality::Equal {
                            return Err(Error::Certificate("witness contradicts annihilator equality".into()));
                        }
                        if eq != Equality::Unknown {
                            equality = eq;
                        }
                        if let (Some(w), None) = (w, &witness_summary) {
                            let verified = w.verify(f, cand, &budget.fresh())?;
                            witness_summary = Some(WitnessSummary {
                                operator: w.operator.to_string(),
                                normal_form: w.normal_form.to_string(),
                                verified,
                                source: "full-annihilator".into(),
                            });
                            report.witness = Some(w);
                        }
                    }
                    None => {}
                }
            }
            report.b = b;
        }
    }
    if let Some(cand) = &candidate {
        report.annihilator = Some(AnnihilatorSummary {
            candidate: strings(cand.generators()),
            full: full_strings,
            equality,
            witness: witness_summary,
        });
    }

    // Verdict.
    let free = report.free == Some(true);
    let koszul = report.koszul == Some(true);
    let strict = matches!(report.quasihomogeneous, Quasihomogeneity::Strict { .. });
    let (verdict, rule) = if free && koszul && equality == Equality::Equal {
        (Verdict::Holds, "free, Koszul, and Ann(1/f) is generated by the order-one operators".to_string())
    } else if free && koszul && equality == Equality::Proper && report.witness.is_some() {
        (Verdict::Fails, "free, Koszul, and a verified operator in Ann(1/f) lies outside the order-one ideal".to_string())
    } else if free && strict {
        report.caveats.push(
            "quasihomogeneity is certified for the global polynomial only; local quasihomogeneity at other points is not checked"
                .into(),
        );
        (Verdict::Holds, "free with strictly positive weights".to_string())
    } else if report.free == Some(false) {
        (Verdict::Undetermined, "no Saito basis found among the logarithmic derivations".to_string())
    } else if free && !koszul && report.koszul.is_some() {
        (Verdict::Undetermined, "not Koszul, so the Spencer condition is undetermined".to_string())
    } else if !timeouts.is_empty() {
        (Verdict::Undetermined, format!("timeout in {}", timeouts.join(", ")))
    } else {
        (Verdict::Undetermined, "annihilator comparison inconclusive".to_string())
    };
    if let Some((p, q)) = match_fpq(f) {
        report.notes.push(format!("matches the family f_{{p,q}} with p = {p}, q = {q}"));
    }
    report.verdict = verdict;
    report.rule = rule;
    report.timeouts = timeouts;
    Ok(report)
}

/// `Ann(1/f)` from `Ann(f^s)` at `s = -1`.
#[derive(Clone, Debug)]
pub struct InverseAnnihilator {
    pub ann_fs: LeftIdeal,
    pub b: BFunction,
    pub full: LeftIdeal,
    /// `b` has no integer root below `-1`, so `full` is all of `Ann(1/f)`.
    pub complete: bool,
}

pub fn annihilator_inverse(f: &Polynomial, budget: &Budget, max_b_degree: usize) -> Result<InverseAnnihilator> {
    let ann_fs = annihilator_fs(f, budget).map_err(|e| e.in_stage("annihilator-fs"))?;
    let b = bfunction_from_annihilator(f, &ann_fs, budget, max_b_degree).map_err(|e| e.in_stage("bfunction"))?;
    let full = specialize_at_minus_one(f, &ann_fs)?;
    let complete = b.integer_roots_below_minus_one().is_empty();
    Ok(InverseAnnihilator { ann_fs, b, full, complete })
}

/// Two-way comparison against a possibly incomplete `full`; public form of
/// the check used by [`lct_verdict`].
pub fn compare_with_inverse(candidate: &LeftIdeal, inv: &InverseAnnihilator, budget: &Budget) -> Result<(Equality, Option<Witness>)> {
    compare(candidate, &inv.full, inv.complete, budget)
}

/// Two-way comparison. Equality is only claimed when `full` is known to be
/// all of `Ann(1/f)`.
fn compare(candidate: &LeftIdeal, full: &LeftIdeal, complete: bool, budget: &Budget) -> Result<(Equality, Option<Witness>)> {
    if let Some((operator, normal_form)) = candidate.non_members(full, budget)?.into_iter().next() {
        return Ok((Equality::Proper, Some(Witness { operator, normal_form })));
    }
    if !complete {
        return Ok((Equality::Unknown, None));
    }
    compare_annihilators(candidate, full, budget)
}
