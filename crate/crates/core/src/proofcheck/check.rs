use std::collections::{BTreeMap, BTreeSet};

use crate::freealg::{
    normalize_with, parse_poly, Atom, EvalError, Expr, Generator, MapSym, NCPoly, NoRefs, Resolver, Rules, ScalarPoly,
    Substitution,
};
use crate::laws::Law;

use super::report::{build_report, AuditReport};
use super::{Definition, ExternalTheorem, Hypothesis, Identity, ProofScript, Step, StepError, StepKind};

/// Identities verified so far, plus the rewrite licenses granted by
/// external theorems.
#[derive(Clone, Debug, Default)]
pub struct Env {
    identities: BTreeMap<String, Identity>,
    rules: Rules,
    budget: Vec<ScalarPoly>,
    defined: BTreeMap<MapSym, String>,
}

/// What a single step established and what it cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Checked {
    pub identity: Identity,
    /// Torsion factors cancelled by this step.
    pub factors: Vec<ScalarPoly>,
    /// Structural hypotheses invoked by this step itself.
    pub axioms: Vec<Hypothesis>,
    pub assumed: bool,
}

impl Env {
    pub fn new(budget: Vec<ScalarPoly>) -> Self {
        Env {
            budget,
            ..Env::default()
        }
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn get(&self, label: &str) -> Option<&Identity> {
        self.identities.get(label)
    }

    pub fn normalize(&self, p: &NCPoly) -> Result<NCPoly, StepError> {
        Ok(normalize_with(p, self.rules)?)
    }

    fn body(&self, label: &str) -> Result<&Identity, StepError> {
        self.identities
            .get(label)
            .ok_or_else(|| StepError::UnknownLabel(label.to_string()))
    }

    /// Body of `label` in normal form under the current licenses.
    fn current(&self, label: &str) -> Result<NCPoly, StepError> {
        self.normalize(&self.body(label)?.body)
    }

    fn mentions(&self, f: MapSym) -> bool {
        self.identities.values().any(|i| i.body.contains_map(f))
    }

    fn budget_text(&self) -> String {
        self.budget.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    }

    fn admit(&self, factor: &ScalarPoly) -> Result<Vec<ScalarPoly>, StepError> {
        if factor.is_zero() {
            return Err(StepError::FreeAlg(crate::freealg::FreeAlgError::DivisionByZero));
        }
        factor
            .factor_over(&self.budget)
            .ok_or_else(|| StepError::OutsideBudget {
                factor: factor.to_string(),
                budget: self.budget_text(),
            })
    }
}

impl Resolver for Env {
    fn resolve(&self, label: &str, subst: &Substitution) -> Result<NCPoly, EvalError> {
        let id = self
            .identities
            .get(label)
            .ok_or_else(|| EvalError::UnknownLabel(label.to_string()))?;
        let inst = if subst.is_empty() {
            id.body.clone()
        } else {
            id.body.substitute_all(subst)?
        };
        Ok(normalize_with(&inst, self.rules)?)
    }
}

fn eval_elem(e: &Expr) -> Result<NCPoly, StepError> {
    e.eval_element(&NoRefs)
        .map(|(p, _)| p)
        .map_err(|err| StepError::Eval(err.to_string()))
}

fn eval_scalar(e: &Expr) -> Result<ScalarPoly, StepError> {
    e.eval_scalar().map_err(|err| StepError::Eval(err.to_string()))
}

fn witness(e: &Expr, name: &str, g: Generator) -> Result<NCPoly, StepError> {
    let p = eval_elem(e)?;
    if p.contains_generator(g) {
        return Err(StepError::WitnessMentionsGenerator {
            name: name.to_string(),
            generator: g,
        });
    }
    Ok(p)
}

fn mismatch(diff: &NCPoly) -> StepError {
    let terms = diff
        .terms()
        .map(|(m, c)| NCPoly::term(c.clone(), m.clone()).to_string())
        .collect();
    StepError::Mismatch {
        difference: diff.to_string(),
        terms,
    }
}

fn two() -> ScalarPoly {
    ScalarPoly::constant(2)
}

/// Finds `M` and `g` with `body = ±[[M(g),g],g]`.
fn commuting_shape(body: &NCPoly) -> Option<NCPoly> {
    let mut candidates = BTreeSet::new();
    for (m, _) in body.terms() {
        for a in m.atoms() {
            if let Atom::App(f, arg) = a {
                if let [Atom::Gen(g)] = arg.atoms() {
                    candidates.insert((*f, *g));
                }
            }
        }
    }
    for (f, g) in candidates {
        let inner = NCPoly::apply(f, &NCPoly::gen(g)).commutator(&NCPoly::gen(g));
        let outer = inner.commutator(&NCPoly::gen(g));
        if *body == outer || *body == -outer {
            return Some(inner);
        }
    }
    None
}

/// Verifies `step` against `env` and, on success, records the new identity.
pub fn check_step(env: &mut Env, step: &Step) -> Result<Checked, StepError> {
    let mut factors = Vec::new();
    let mut axioms = Vec::new();
    let mut cited: Vec<String> = Vec::new();
    let mut assumed = false;
    let mut new_rules = env.rules;

    let computed = match &step.kind {
        StepKind::Define(def) => {
            let (computed, name, subject) = define(env, def)?;
            axioms.push(Hypothesis::Definition(name));
            env.defined.insert(subject, step.label.clone());
            computed
        }
        StepKind::Substitute { source, subst } => {
            let body = env.current(source)?;
            cited.push(source.clone());
            let mut sigma = Substitution::new();
            for (g, e) in subst {
                sigma.insert(*g, eval_elem(e)?);
            }
            body.substitute_all(&sigma)?
        }
        StepKind::PolarizeEven { source, generator } => {
            cited.push(source.clone());
            factors = env.admit(&two())?;
            env.current(source)?.polarize_even(*generator)
        }
        StepKind::MulLeft { source, factor } => {
            cited.push(source.clone());
            &eval_elem(factor)? * &env.current(source)?
        }
        StepKind::MulRight { source, factor } => {
            cited.push(source.clone());
            &env.current(source)? * &eval_elem(factor)?
        }
        StepKind::Combine { expr } => {
            let (poly, derived) = expr.eval_element(env).map_err(|e| StepError::Eval(e.to_string()))?;
            if !derived && !env.normalize(&poly)?.is_zero() {
                return Err(StepError::Shape("a combination must cite at least one identity".into()));
            }
            let mut labels = Vec::new();
            super::parse::cited_labels(expr, &mut labels);
            cited.extend(labels);
            poly
        }
        StepKind::Cancel { source, factor } => {
            cited.push(source.clone());
            let c = eval_scalar(factor)?;
            factors = env.admit(&c)?;
            env.current(source)?.exact_divide(&c)?
        }
        StepKind::PatternAbc {
            source,
            generator,
            a,
            b,
            c,
        } => {
            cited.push(source.clone());
            let g = NCPoly::gen(*generator);
            let (a, b, c) = (
                witness(a, "a", *generator)?,
                witness(b, "b", *generator)?,
                witness(c, "c", *generator)?,
            );
            let shape = &(&(&a * &g) * &b) + &(&(&b * &g) * &c);
            let diff = env.normalize(&(&env.current(source)? - &shape))?;
            if !diff.is_zero() {
                return Err(StepError::Shape(format!(
                    "body − (a·{generator}·b + b·{generator}·c) = {diff}"
                )));
            }
            axioms.push(Hypothesis::Semiprime);
            &(&(&a + &c) * &g) * &b
        }
        StepKind::SemiprimeSquash { source, generator, w } => {
            cited.push(source.clone());
            let g = NCPoly::gen(*generator);
            let w = witness(w, "W", *generator)?;
            let diff = env.normalize(&(&env.current(source)? - &(&(&w * &g) * &w)))?;
            if !diff.is_zero() {
                return Err(StepError::Shape(format!("body − W·{generator}·W = {diff}")));
            }
            axioms.push(Hypothesis::Semiprime);
            w
        }
        StepKind::External { theorem, source } => {
            cited.push(source.clone());
            let body = env.current(source)?;
            axioms.push(Hypothesis::Semiprime);
            axioms.push(Hypothesis::External(theorem.name().to_string()));
            match theorem {
                ExternalTheorem::Commuting => {
                    factors = env.admit(&two())?;
                    commuting_shape(&body)
                        .ok_or_else(|| StepError::Shape(format!("expected ±[[M(g),g],g], found {body}")))?
                }
                ExternalTheorem::T0TwoSided | ExternalTheorem::DCentralDerivation => {
                    let (law, map) = if *theorem == ExternalTheorem::T0TwoSided {
                        new_rules.two_sided_t0 = true;
                        (Law::Centralizer, MapSym::T0)
                    } else {
                        new_rules.central_d = true;
                        (Law::Derivation, MapSym::D)
                    };
                    let expected = env.normalize(&law.identity(map, map))?;
                    if body != expected {
                        return Err(StepError::Shape(format!(
                            "{} needs the {law} law of {map}, found {body}",
                            theorem.name()
                        )));
                    }
                    for f in law.torsion_factors() {
                        factors.extend(env.admit(&f)?);
                    }
                    if map == MapSym::D {
                        // D(xy) is central: [D(xy), x] expands to D(x)[y, x].
                        parse_poly("D[x*y]*x - x*D[x*y]").expect("well formed")
                    } else {
                        NCPoly::zero()
                    }
                }
            }
        }
        StepKind::Assume => {
            assumed = true;
            axioms.push(Hypothesis::Assumption(step.label.clone()));
            step.claimed.clone()
        }
    };

    let computed = normalize_with(&computed, new_rules)?;
    let claimed = normalize_with(&step.claimed, new_rules)?;
    let diff = &claimed - &computed;
    if !diff.is_zero() {
        return Err(mismatch(&diff));
    }

    let mut hyps: BTreeSet<Hypothesis> = BTreeSet::new();
    for l in &cited {
        hyps.extend(env.body(l)?.hypotheses_used.iter().cloned());
    }
    hyps.extend(axioms.iter().cloned());
    hyps.extend(factors.iter().map(|f| Hypothesis::Factor(f.to_string())));

    let provenance = match &step.kind {
        StepKind::Assume => "assumed".to_string(),
        StepKind::Define(_) => "axiom".to_string(),
        k => {
            let mut uniq: Vec<&str> = Vec::new();
            for l in &cited {
                if !uniq.contains(&l.as_str()) {
                    uniq.push(l);
                }
            }
            format!("{}({})", k.name(), uniq.join(", "))
        }
    };
    let identity = Identity {
        label: step.label.clone(),
        body: computed,
        provenance,
        hypotheses_used: hyps,
    };
    env.rules = new_rules;
    env.identities.insert(step.label.clone(), identity.clone());
    Ok(Checked {
        identity,
        factors,
        axioms,
        assumed,
    })
}

fn define(env: &Env, def: &Definition) -> Result<(NCPoly, String, MapSym), StepError> {
    match *def {
        Definition::Law { law, map, aux } => {
            if let Some(prev) = env.defined.get(&map) {
                return Err(StepError::Definition(format!("{map} is already defined by '{prev}'")));
            }
            if env.mentions(map) {
                return Err(StepError::Definition(format!(
                    "{map} already occurs in earlier identities"
                )));
            }
            let required = match map {
                MapSym::T0 => Some(Law::Centralizer),
                MapSym::D => Some(Law::Derivation),
                _ => None,
            };
            if required.is_some_and(|r| r != law) {
                return Err(StepError::Definition(format!(
                    "{map} is reserved for the {} law",
                    required.expect("checked")
                )));
            }
            let aux = match (law.is_generalized(), aux) {
                (true, Some(a)) => {
                    if a == map {
                        return Err(StepError::Definition(
                            "the auxiliary map must differ from the defined map".into(),
                        ));
                    }
                    let ok = env
                        .defined
                        .get(&a)
                        .and_then(|l| env.identities.get(l))
                        .is_some_and(|id| {
                            id.body == normalize_with(&law.base().identity(a, a), env.rules).unwrap_or_default()
                        });
                    if !ok {
                        return Err(StepError::Definition(format!(
                            "{law} needs {a} to be defined earlier by the {} law",
                            law.base()
                        )));
                    }
                    a
                }
                (false, None) => map,
                _ => return Err(StepError::Definition(format!("wrong number of maps for the {law} law"))),
            };
            let name = if law.is_generalized() {
                format!("{map} {law} with {aux}")
            } else {
                format!("{map} {law}")
            };
            Ok((law.identity(map, aux), name, map))
        }
        Definition::Difference {
            new,
            minuend,
            subtrahend,
        } => {
            if env.defined.contains_key(&new) || env.mentions(new) {
                return Err(StepError::Definition(format!("{new} is not a fresh symbol")));
            }
            if new == minuend || new == subtrahend || minuend == subtrahend {
                return Err(StepError::Definition("difference needs three distinct maps".into()));
            }
            let x = NCPoly::x();
            let body = &(&NCPoly::apply(new, &x) - &NCPoly::apply(minuend, &x)) + &NCPoly::apply(subtrahend, &x);
            Ok((body, format!("{new} = {minuend} - {subtrahend}"), new))
        }
    }
}

/// Checks every step in order, stopping at the first failure, then the goals.
pub fn replay(script: &ProofScript) -> AuditReport {
    let mut env = Env::new(script.budget.clone());
    let mut outcomes = Vec::new();
    for step in &script.steps {
        let r = check_step(&mut env, step);
        let failed = r.is_err();
        outcomes.push((step, r));
        if failed {
            break;
        }
    }
    build_report(script, &env, outcomes)
}
