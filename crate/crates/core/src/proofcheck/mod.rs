//! Line-oriented proof scripts whose every step is a checkable certificate.
//!
//! A script declares a theorem, the torsion factors its hypothesis allows,
//! a sequence of steps and the goal identities. Each step names the rule
//! that justifies it and the identity it claims; the checker recomputes
//! the identity from the cited ones and compares normal forms.
//!
//! ```text
//! theorem generalized centralizer
//! budget 2, m, n, m+n, 2m+n
//! step law Define gen-centralizer T T0 => (m+n)T[x^2] = mT[x]x + nxT0[x]
//! step lin Combine use law{x->x+y} - use law - use law{x->y} => \
//!     (m+n)T[xy+yx] - mT[x]y - mT[y]x - nxT0[y] - nyT0[x]
//! goal lin => (m+n)T[xy+yx] - mT[x]y - mT[y]x - nxT0[y] - nyT0[x]
//! ```

mod check;
mod parse;
mod report;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::freealg::{Expr, FreeAlgError, Generator, MapSym, NCPoly, ScalarPoly};
use crate::laws::Law;

pub use check::{check_step, replay, Checked, Env};
pub use parse::parse_script;
pub use report::{AuditReport, GoalReport, StepReport, StepVerdict, Verdict};

/// Hypotheses an identity depends on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Hypothesis {
    Semiprime,
    /// Torsion-freeness for the given factor.
    Factor(String),
    External(String),
    Definition(String),
    Assumption(String),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Semiprime => f.write_str("semiprime"),
            Hypothesis::Factor(s) => write!(f, "{s}-torsion-free"),
            Hypothesis::External(s) => write!(f, "theorem:{s}"),
            Hypothesis::Definition(s) => write!(f, "definition:{s}"),
            Hypothesis::Assumption(s) => write!(f, "assumed:{s}"),
        }
    }
}

/// An established identity `body ≡ 0`, quantified over all generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub label: String,
    pub body: NCPoly,
    pub provenance: String,
    pub hypotheses_used: BTreeSet<Hypothesis>,
}

/// Named transforms justified by results proved elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExternalTheorem {
    /// `[[M(x),x],x] = 0` on a 2-torsion free semiprime ring implies
    /// `[M(x),x] = 0`.
    Commuting,
    /// A centralizer-law map on an mn(m+n)-torsion free semiprime ring is a
    /// two-sided centralizer; licenses the `T0` rewrite rule.
    T0TwoSided,
    /// A derivation-law map on an mn(m+n)|m−n|-torsion free semiprime ring
    /// is a derivation into the center; licenses the `D` rewrite rules.
    DCentralDerivation,
}

impl ExternalTheorem {
    pub fn name(self) -> &'static str {
        match self {
            ExternalTheorem::Commuting => "commuting",
            ExternalTheorem::T0TwoSided => "t0-two-sided",
            ExternalTheorem::DCentralDerivation => "d-central-derivation",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            ExternalTheorem::Commuting,
            ExternalTheorem::T0TwoSided,
            ExternalTheorem::DCentralDerivation,
        ]
        .into_iter()
        .find(|t| t.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    /// `map` satisfies `law`, with `aux` as the auxiliary map of a
    /// generalized law.
    Law { law: Law, map: MapSym, aux: Option<MapSym> },
    /// `new := minuend − subtrahend`.
    Difference {
        new: MapSym,
        minuend: MapSym,
        subtrahend: MapSym,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    Define(Definition),
    Substitute {
        source: String,
        subst: Vec<(Generator, Expr)>,
    },
    PolarizeEven {
        source: String,
        generator: Generator,
    },
    MulLeft {
        source: String,
        factor: Expr,
    },
    MulRight {
        source: String,
        factor: Expr,
    },
    /// A linear combination of instances of established identities,
    /// written as an expression with `use` references.
    Combine {
        expr: Expr,
    },
    Cancel {
        source: String,
        factor: Expr,
    },
    /// `a·g·b + b·g·c = 0` for all `g` gives `(a+c)·g·b = 0`.
    PatternAbc {
        source: String,
        generator: Generator,
        a: Expr,
        b: Expr,
        c: Expr,
    },
    /// `W·g·W = 0` for all `g` gives `W = 0`.
    SemiprimeSquash {
        source: String,
        generator: Generator,
        w: Expr,
    },
    External {
        theorem: ExternalTheorem,
        source: String,
    },
    Assume,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Define(_) => "Define",
            StepKind::Substitute { .. } => "Substitute",
            StepKind::PolarizeEven { .. } => "PolarizeEven",
            StepKind::MulLeft { .. } => "MulLeft",
            StepKind::MulRight { .. } => "MulRight",
            StepKind::Combine { .. } => "Combine",
            StepKind::Cancel { .. } => "Cancel",
            StepKind::PatternAbc { .. } => "PatternABC",
            StepKind::SemiprimeSquash { .. } => "SemiprimeSquash",
            StepKind::External { .. } => "ExternalTheorem",
            StepKind::Assume => "Assume",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub label: String,
    pub kind: StepKind,
    pub claimed: NCPoly,
    /// Physical line of the `step` directive.
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Goal {
    pub label: String,
    pub expected: NCPoly,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ProofScript {
    pub theorem: String,
    pub maps: Vec<MapSym>,
    /// Integer factors the hypothesis allows cancelling; products of these
    /// (up to sign) are admissible.
    pub budget: Vec<ScalarPoly>,
    pub steps: Vec<Step>,
    pub goals: Vec<Goal>,
}

/// Syntax or reference error in a script.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ScriptError {
    pub line: usize,
    pub column: usize,
    pub kind: ScriptErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScriptErrorKind {
    #[error("unknown step kind '{0}'")]
    UnknownStepKind(String),
    #[error("identity '{0}' is used before it is defined")]
    UndefinedLabel(String),
    #[error("label '{0}' is defined twice")]
    DuplicateLabel(String),
    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),
    #[error("{0}")]
    Syntax(String),
}

/// Why a step was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("claimed identity differs from the computed one; claimed − computed = {difference}")]
    Mismatch {
        difference: String,
        /// The difference, one term per entry.
        terms: Vec<String>,
    },
    #[error("unknown identity '{0}'")]
    UnknownLabel(String),
    #[error("factor {factor} is not a product of the torsion budget {{{budget}}}")]
    OutsideBudget { factor: String, budget: String },
    #[error("witness {name} mentions the quantified generator {generator}")]
    WitnessMentionsGenerator { name: String, generator: Generator },
    #[error("cited identity does not have the required shape: {0}")]
    Shape(String),
    #[error("invalid definition: {0}")]
    Definition(String),
    #[error("evaluation failed: {0}")]
    Eval(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}
