use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::predicates::{is_semiprime, maps_into_center, verify_derivation, verify_two_sided};
use super::ring::{FinRing, RingSpec};
use super::solve::{eval_compiled, law_holds, solve_identity, Compiled, LawSpec, Solution};
use super::{Bounds, FinRingError};
use crate::laws::Law;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Hypotheses hold and every solution satisfies the conclusion.
    Verified,
    /// Hypotheses hold but some solution violates the conclusion.
    Counterexample,
    /// Some hypothesis fails, so nothing is claimed.
    HypothesesUnmet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Counterexample => "COUNTEREXAMPLE",
            Verdict::HypothesesUnmet => "hypotheses unmet",
        })
    }
}

fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub ring: String,
    pub size: u64,
    pub law: Law,
    pub m: i64,
    pub n: i64,
    /// Torsion product the theorem assumes.
    pub torsion: u64,
    pub hypotheses: BTreeMap<String, bool>,
    #[serde(serialize_with = "as_string")]
    pub solutions: num_bigint::BigUint,
    /// Whether every solution satisfies the conclusion, regardless of the
    /// hypotheses.
    pub conclusion_holds: bool,
    /// A solution violating the conclusion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Solution>,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.values().all(|&v| v)
    }
}

/// The theorem's conclusion for one solution.
pub fn check_conclusion(ring: &FinRing, spec: &LawSpec, sol: &Solution) -> bool {
    match spec.law {
        Law::Centralizer => verify_two_sided(ring, &sol.main),
        Law::GenCentralizer => sol.aux.as_ref() == Some(&sol.main) && verify_two_sided(ring, &sol.main),
        Law::Derivation => verify_derivation(ring, &sol.main) && maps_into_center(ring, &sol.main),
        Law::GenDerivation => {
            sol.aux.as_ref() == Some(&sol.main)
                && verify_derivation(ring, &sol.main)
                && maps_into_center(ring, &sol.main)
        }
    }
}

/// Evaluates the hypotheses, solves the law and checks the conclusion on
/// every solution. When the solutions are too many to list, the conclusion
/// is checked on generators, which suffices because each conclusion defines
/// a subgroup.
pub fn check_theorem(ring: &FinRing, spec: &LawSpec, bounds: &Bounds) -> Result<TheoremReport, FinRingError> {
    if spec.law.is_derivation_type() && spec.m == spec.n {
        return Err(FinRingError::Precondition(format!(
            "the {} theorem needs m ≠ n",
            spec.law
        )));
    }
    let torsion = spec.torsion();
    let mut hypotheses = BTreeMap::new();
    hypotheses.insert("semiprime".to_string(), is_semiprime(ring, bounds)?);
    hypotheses.insert(format!("{torsion}-torsion-free"), ring.is_torsion_free(torsion));

    let set = solve_identity(ring, spec, bounds)?;
    let candidates = set.solutions.as_ref().unwrap_or(&set.generators);
    let witness = candidates
        .par_iter()
        .find_first(|s| !check_conclusion(ring, spec, s))
        .cloned();
    let conclusion_holds = witness.is_none();
    let hold = hypotheses.values().all(|&v| v);
    let verdict = match (hold, conclusion_holds) {
        (false, _) => Verdict::HypothesesUnmet,
        (true, true) => Verdict::Verified,
        (true, false) => Verdict::Counterexample,
    };
    Ok(TheoremReport {
        ring: ring.name().to_string(),
        size: ring.size(),
        law: spec.law,
        m: spec.m,
        n: spec.n,
        torsion,
        hypotheses,
        solutions: set.count,
        conclusion_holds,
        witness,
        verdict,
    })
}

/// Checks the xyx-expansion of the law at every pair `(x, y)` for maps
/// that satisfy the law.
pub fn cross_check_lemma(
    ring: &FinRing,
    spec: &LawSpec,
    sol: &Solution,
    bounds: &Bounds,
) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    if spec.law.is_generalized() != sol.aux.is_some() {
        return Err(FinRingError::Precondition(format!(
            "the {} law takes {} map(s)",
            spec.law,
            if spec.law.is_generalized() { 2 } else { 1 }
        )));
    }
    if !law_holds(ring, spec, sol)? {
        return Err(FinRingError::Precondition(format!(
            "{sol} does not satisfy the {} law",
            spec
        )));
    }
    let (main, aux) = spec.symbols();
    let lemma = Compiled::new(ring, &spec.law.xyx_lemma(main, aux), spec.m, spec.n);
    let size = ring.size();
    (0..size * size)
        .into_par_iter()
        .map(|idx| {
            let x = ring.element(idx / size);
            let y = ring.element(idx % size);
            eval_compiled(ring, spec, sol, &lemma, &x, &y).map(|v| v.is_zero())
        })
        .try_reduce(|| true, |a, b| Ok(a && b))
}

/// A family of rings to scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `ℤ_n` for `2 ≤ n ≤ max`.
    Zn { max: u64 },
    /// `Mat(k, ℤ_p)` for each listed `p`.
    Mat { k: usize, ps: Vec<u64> },
    /// An explicit list, e.g. direct products.
    Rings(Vec<RingSpec>),
}

impl Family {
    pub fn specs(&self) -> Vec<RingSpec> {
        match self {
            Family::Zn { max } => (2..=*max).map(RingSpec::zn).collect(),
            Family::Mat { k, ps } => ps.iter().map(|&p| RingSpec::mat(*k, p)).collect(),
            Family::Rings(v) => v.clone(),
        }
    }
}

/// One `check_theorem` row per ring of the family, in family order.
pub fn search_family(family: &Family, spec: &LawSpec, bounds: &Bounds) -> Result<Vec<TheoremReport>, FinRingError> {
    family
        .specs()
        .par_iter()
        .map(|rs| {
            let ring = rs.build()?;
            check_theorem(&ring, spec, bounds)
        })
        .collect()
}
