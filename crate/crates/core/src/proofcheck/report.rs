use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::check::{Checked, Env};
use super::{Hypothesis, ProofScript, Step, StepError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepVerdict {
    Verified,
    Assumed,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Verdict {
    #[serde(rename = "VERIFIED")]
    Verified,
    #[serde(rename = "VERIFIED-WITH-ASSUMPTIONS")]
    VerifiedWithAssumptions,
    #[serde(rename = "FAILED")]
    Failed { step: String, reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::VerifiedWithAssumptions => "VERIFIED-WITH-ASSUMPTIONS",
            Verdict::Failed { .. } => "FAILED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: String,
    pub kind: String,
    pub line: usize,
    pub verdict: StepVerdict,
    /// Torsion factors cancelled by this step.
    pub factors: Vec<String>,
    /// Semiprimeness, definitions, external theorems and assumptions
    /// invoked by this step.
    pub axioms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// For mismatches, `claimed − computed` one term per entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoalReport {
    pub label: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
    /// Hypotheses the goal identity ultimately rests on.
    pub hypotheses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub theorem: String,
    pub budget: Vec<String>,
    pub steps: Vec<StepReport>,
    pub goals: Vec<GoalReport>,
    /// Every cancelled factor, in order, with multiplicity.
    pub factors_consumed: Vec<String>,
    pub factor_totals: BTreeMap<String, usize>,
    pub external_theorems: Vec<String>,
    pub assumptions: Vec<String>,
    pub verdict: Verdict,
}

fn hyp_strings<'a>(it: impl IntoIterator<Item = &'a Hypothesis>) -> Vec<String> {
    it.into_iter().map(|h| h.to_string()).collect()
}

pub(super) fn build_report(
    script: &ProofScript,
    env: &Env,
    outcomes: Vec<(&Step, Result<Checked, StepError>)>,
) -> AuditReport {
    let mut steps = Vec::new();
    let mut factors_consumed = Vec::new();
    let mut external_theorems: Vec<String> = Vec::new();
    let mut assumptions = Vec::new();
    let mut failure: Option<(String, String)> = None;

    for (step, r) in outcomes {
        match r {
            Ok(c) => {
                let factors: Vec<String> = c.factors.iter().map(|f| f.to_string()).collect();
                factors_consumed.extend(factors.iter().cloned());
                for a in &c.axioms {
                    if let Hypothesis::External(name) = a {
                        if !external_theorems.contains(name) {
                            external_theorems.push(name.clone());
                        }
                    }
                }
                if c.assumed {
                    assumptions.push(step.label.clone());
                }
                steps.push(StepReport {
                    step: step.label.clone(),
                    kind: step.kind.name().to_string(),
                    line: step.line,
                    verdict: if c.assumed {
                        StepVerdict::Assumed
                    } else {
                        StepVerdict::Verified
                    },
                    factors,
                    axioms: hyp_strings(&c.axioms),
                    identity: Some(c.identity.body.to_string()),
                    error: None,
                    difference: None,
                });
            }
            Err(e) => {
                let difference = match &e {
                    StepError::Mismatch { terms, .. } => Some(terms.clone()),
                    _ => None,
                };
                failure = Some((step.label.clone(), e.to_string()));
                steps.push(StepReport {
                    step: step.label.clone(),
                    kind: step.kind.name().to_string(),
                    line: step.line,
                    verdict: StepVerdict::Failed,
                    factors: Vec::new(),
                    axioms: Vec::new(),
                    identity: None,
                    error: Some(e.to_string()),
                    difference,
                });
            }
        }
    }

    let mut goals = Vec::new();
    if failure.is_none() {
        for g in &script.goals {
            let report = match env.get(&g.label) {
                None => GoalReport {
                    label: g.label.clone(),
                    holds: false,
                    difference: Some("identity was never established".into()),
                    hypotheses: Vec::new(),
                },
                Some(id) => {
                    let diff = env
                        .normalize(&(&g.expected - &id.body))
                        .map(|d| d.to_string())
                        .unwrap_or_else(|e| e.to_string());
                    let holds = diff == "0";
                    GoalReport {
                        label: g.label.clone(),
                        holds,
                        difference: (!holds).then_some(diff),
                        hypotheses: hyp_strings(&id.hypotheses_used),
                    }
                }
            };
            if !report.holds && failure.is_none() {
                failure = Some((
                    format!("goal {}", g.label),
                    format!(
                        "goal does not match the established identity: {}",
                        report.difference.clone().unwrap_or_default()
                    ),
                ));
            }
            goals.push(report);
        }
        if script.goals.is_empty() {
            failure = Some(("<goals>".into(), "the script states no goal".into()));
        }
    }

    let mut factor_totals = BTreeMap::new();
    for f in &factors_consumed {
        *factor_totals.entry(f.clone()).or_insert(0) += 1;
    }

    let verdict = match failure {
        Some((step, reason)) => Verdict::Failed { step, reason },
        None if assumptions.is_empty() => Verdict::Verified,
        None => Verdict::VerifiedWithAssumptions,
    };

    AuditReport {
        theorem: script.theorem.clone(),
        budget: script.budget.iter().map(|b| b.to_string()).collect(),
        steps,
        goals,
        factors_consumed,
        factor_totals,
        external_theorems,
        assumptions,
        verdict,
    }
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.theorem.is_empty() {
            let _ = writeln!(s, "theorem: {}", self.theorem);
        }
        let _ = writeln!(s, "budget: {{{}}}", self.budget.join(", "));
        for st in &self.steps {
            let tag = match st.verdict {
                StepVerdict::Verified => "ok     ",
                StepVerdict::Assumed => "ASSUMED",
                StepVerdict::Failed => "FAILED ",
            };
            let _ = write!(s, "{tag} {:<10} {:<16}", st.step, st.kind);
            if !st.factors.is_empty() {
                let _ = write!(s, " factors [{}]", st.factors.join(", "));
            }
            let extra: Vec<&String> = st.axioms.iter().filter(|a| !a.starts_with("definition:")).collect();
            if !extra.is_empty() {
                let list: Vec<&str> = extra.iter().map(|a| a.as_str()).collect();
                let _ = write!(s, " uses [{}]", list.join(", "));
            }
            s.push('\n');
            if let Some(e) = &st.error {
                let _ = writeln!(s, "        line {}: {e}", st.line);
                if let Some(d) = &st.difference {
                    for t in d {
                        let _ = writeln!(s, "          {t}");
                    }
                }
            }
        }
        for g in &self.goals {
            let _ = writeln!(
                s,
                "goal {}: {}",
                g.label,
                if g.holds { "holds" } else { "DOES NOT HOLD" }
            );
        }
        let totals: Vec<String> = self
            .factor_totals
            .iter()
            .map(|(f, k)| if *k == 1 { f.clone() } else { format!("({f})^{k}") })
            .collect();
        let _ = writeln!(s, "torsion factors consumed: {{{}}}", totals.join(", "));
        let _ = writeln!(s, "external theorems: [{}]", self.external_theorems.join(", "));
        let _ = writeln!(s, "assumed steps: [{}]", self.assumptions.join(", "));
        match &self.verdict {
            Verdict::Failed { step, reason } => {
                let _ = writeln!(s, "verdict: FAILED at {step}: {reason}");
            }
            v => {
                let _ = writeln!(s, "verdict: {}", v.label());
            }
        }
        s
    }
}
