//! Top-level classification of a quadratic binomial: can it be APN over
//! infinitely many extensions of its field of definition?
//!
//! The verdict logic, in order:
//!  * s = 0 — never APN, on the base field or any extension;
//!  * i does not divide t — the curve H is absolutely irreducible outright,
//!    so rational points off the diagonal appear on all large extensions
//!    and APN-ness dies out (finitely many exceptional extensions);
//!  * i divides t — the engine eliminates split patterns and hunts a
//!    K-irreducibility witness; a completed proof gives the same verdict,
//!    anything less is reported as undetermined.

use super::decide::{
    decide_absolute_irreducibility, AIVerdict, Budget, Elimination, PatternStatus, SplitPattern,
};
use super::{NormalizationTrace, QuadBinomial};
use crate::error::{Error, Result};
use crate::gf2m::intfactor;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// the binomial is not APN over its field of definition or any
    /// extension of it
    NotAPNAnywhere,
    /// at most finitely many extensions can carry an APN instance
    NotAPNInfinitelyOften,
    /// nothing was proved either way within the budget
    Undetermined,
}

/// Which part of the decision theory settled (or labeled) the instance.
/// The label describes the parameters; the verdict always reflects what was
/// actually established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionFired {
    #[serde(rename = "s=0")]
    SZero,
    /// i does not divide t: unconditional absolute irreducibility
    #[serde(rename = "condition-1")]
    Condition1,
    /// gcd(t, 2^s − 1) = 1: divisibility chains clear every pattern
    #[serde(rename = "condition-2")]
    Condition2,
    /// gcd(t − i, s) = 1: the rational point at infinity clears every
    /// pattern
    #[serde(rename = "condition-3")]
    Condition3,
    #[serde(rename = "full-pipeline")]
    FullPipeline,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyParams {
    pub m: u32,
    pub modulus: String,
    pub i: u32,
    pub s: u32,
    pub t: u32,
    pub delta: String,
    pub exponents: (u64, u64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EliminationRecord {
    pub n: u64,
    pub factor_degree: u64,
    pub mechanism: Elimination,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub beta_trials: u64,
    pub max_beta_trials: u64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub params: ClassifyParams,
    pub normal_form: String,
    /// present when the input was brought to normal form first
    pub normalization: Option<NormalizationTrace>,
    pub verdict: Verdict,
    pub criterion: CriterionFired,
    pub h_degree: Option<u64>,
    pub component_degrees: Option<(u64, u64)>,
    /// substitutions that certified irreducibility over K
    pub witnesses: Vec<String>,
    pub eliminations: Vec<EliminationRecord>,
    pub surviving_patterns: Vec<u64>,
    pub budget_used: BudgetUsed,
}

fn record_patterns(report: &mut ClassificationReport, patterns: &[SplitPattern]) {
    for p in patterns {
        if let PatternStatus::Eliminated(mech) = &p.status {
            report.eliminations.push(EliminationRecord {
                n: p.n,
                factor_degree: p.factor_degree,
                mechanism: mech.clone(),
            });
        }
    }
}

pub fn classify(f: &QuadBinomial, budget: &Budget) -> Result<ClassificationReport> {
    let ctx = f.ctx();
    let (i, s, t) = (f.i(), f.s(), f.t());
    let mut report = ClassificationReport {
        params: ClassifyParams {
            m: ctx.degree(),
            modulus: ctx.modulus_hex(),
            i,
            s,
            t,
            delta: f.delta().to_hex(),
            exponents: f.exponents(),
        },
        normal_form: format!("{f:?}"),
        normalization: None,
        verdict: Verdict::Undetermined,
        criterion: CriterionFired::FullPipeline,
        h_degree: None,
        component_degrees: None,
        witnesses: Vec::new(),
        eliminations: Vec::new(),
        surviving_patterns: Vec::new(),
        budget_used: BudgetUsed {
            beta_trials: 0,
            max_beta_trials: budget.max_beta_trials,
            exhausted: false,
        },
    };

    if s == 0 {
        report.verdict = Verdict::NotAPNAnywhere;
        report.criterion = CriterionFired::SZero;
        return Ok(report);
    }

    report.criterion = if t % i != 0 {
        CriterionFired::Condition1
    } else if intfactor::gcd_u64(t as u64, (1u64 << s) - 1) == 1 {
        CriterionFired::Condition2
    } else if intfactor::gcd_u64((t - i) as u64, s as u64) == 1 {
        CriterionFired::Condition3
    } else {
        CriterionFired::FullPipeline
    };
    report.h_degree = Some(f.h_degree());
    report.component_degrees = Some(f.component_degrees());

    match decide_absolute_irreducibility(f, budget)? {
        AIVerdict::ProvenAbsolutelyIrreducible(trace) => {
            report.verdict = Verdict::NotAPNInfinitelyOften;
            if let Some(w) = trace.k_irreducibility_witness {
                report.witnesses.push(w);
            }
            record_patterns(&mut report, &trace.patterns);
            report.budget_used.beta_trials = trace.beta_trials;
        }
        AIVerdict::Undecided(info) => {
            report.verdict = Verdict::Undetermined;
            if let Some(w) = info.k_irreducibility_witness {
                report.witnesses.push(w);
            }
            record_patterns(&mut report, &info.patterns);
            report.surviving_patterns = info.surviving_patterns;
            report.budget_used.beta_trials = info.beta_trials;
            report.budget_used.exhausted = info.budget_exhausted;
        }
        AIVerdict::ProvenReducible(_) => {
            return Err(Error::Internal(
                "the binomial curve analysis cannot certify reducibility".into(),
            ));
        }
    }
    Ok(report)
}
