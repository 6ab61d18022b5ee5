use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::addmap::AddMap;
use super::lattice::{invariant_factors, Lattice};
use super::ring::{FinRing, RingElem};
use super::{Bounds, FinRingError};
use crate::freealg::{Atom, Generator, MapSym, Monomial, NCPoly};
use crate::laws::Law;

/// A law with concrete parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LawSpec {
    pub law: Law,
    pub m: i64,
    pub n: i64,
}

impl LawSpec {
    pub fn new(law: Law, m: i64, n: i64) -> Result<Self, FinRingError> {
        if m < 1 || n < 1 {
            return Err(FinRingError::Spec(format!("(m, n) = ({m}, {n}) must be positive")));
        }
        Ok(LawSpec { law, m, n })
    }

    /// Symbols for the unknown map and, for generalized laws, its auxiliary map.
    pub fn symbols(&self) -> (MapSym, MapSym) {
        if self.law.is_derivation_type() {
            (MapSym::F, MapSym::D)
        } else {
            (MapSym::T, MapSym::T0)
        }
    }

    /// The identities the unknowns must satisfy, as `(identity, main, aux)`.
    pub(crate) fn conditions(&self) -> Vec<(NCPoly, MapSym, MapSym)> {
        let (main, aux) = self.symbols();
        if self.law.is_generalized() {
            vec![
                (self.law.identity(main, aux), main, aux),
                (self.law.base().identity(aux, aux), aux, aux),
            ]
        } else {
            vec![(self.law.identity(main, main), main, main)]
        }
    }

    /// Product of the torsion factors the theorem for this law assumes.
    pub fn torsion(&self) -> u64 {
        self.law.torsion_product(self.m, self.n)
    }
}

impl fmt::Display for LawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({},{})", self.law, self.m, self.n)
    }
}

/// One solution: the map, plus the auxiliary map for generalized laws.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    pub main: AddMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<AddMap>,
}

impl Solution {
    /// The auxiliary map, which is the main map itself for plain laws.
    pub fn aux_or_main(&self) -> &AddMap {
        self.aux.as_ref().unwrap_or(&self.main)
    }

    fn map_for(&self, spec: &LawSpec, f: MapSym) -> Option<&AddMap> {
        let (main, aux) = spec.symbols();
        if f == main {
            Some(&self.main)
        } else if f == aux {
            Some(self.aux_or_main())
        } else {
            None
        }
    }

    pub fn add(&self, ring: &FinRing, other: &Solution) -> Solution {
        Solution {
            main: self.main.add(ring, &other.main),
            aux: match (&self.aux, &other.aux) {
                (Some(a), Some(b)) => Some(a.add(ring, b)),
                _ => None,
            },
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.aux {
            None => write!(f, "{}", self.main),
            Some(a) => write!(f, "({}, {})", self.main, a),
        }
    }
}

/// All additive solutions of a law on a ring.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub spec: LawSpec,
    /// Number of solutions.
    pub count: BigUint,
    /// Every solution in canonical order, when `count` is within the bound.
    pub solutions: Option<Vec<Solution>>,
    /// Generators of the solution group.
    pub generators: Vec<Solution>,
    /// Hermite pivots of the solution lattice, one per unknown entry.
    pub pivots: Vec<u64>,
    /// Invariant factors of the solution group.
    pub invariants: Vec<u64>,
}

impl SolutionSet {
    pub fn count_u64(&self) -> Option<u64> {
        self.count.to_u64()
    }

    pub fn is_enumerated(&self) -> bool {
        self.solutions.is_some()
    }
}

/// Ring element whose components are linear forms in the unknown entries.
#[derive(Clone, Debug, PartialEq)]
struct LinElem {
    vars: usize,
    coef: Vec<i64>,
}

impl LinElem {
    fn zero(k: usize, vars: usize) -> Self {
        LinElem {
            vars,
            coef: vec![0; k * vars],
        }
    }

    fn component(&self, r: usize) -> &[i64] {
        &self.coef[r * self.vars..(r + 1) * self.vars]
    }

    fn reduce(&mut self, ring: &FinRing) {
        for (r, &d) in ring.moduli().iter().enumerate() {
            for c in &mut self.coef[r * self.vars..(r + 1) * self.vars] {
                *c = c.rem_euclid(d as i64);
            }
        }
    }

    fn add(&self, ring: &FinRing, other: &LinElem) -> LinElem {
        let mut out = LinElem {
            vars: self.vars,
            coef: self.coef.iter().zip(&other.coef).map(|(a, b)| a + b).collect(),
        };
        out.reduce(ring);
        out
    }

    fn scale(&self, ring: &FinRing, c: i64) -> LinElem {
        let mut out = LinElem {
            vars: self.vars,
            coef: self.coef.iter().map(|a| a * c).collect(),
        };
        out.reduce(ring);
        out
    }

    /// `a·self` when `left`, else `self·a`.
    fn mul_concrete(&self, ring: &FinRing, a: &RingElem, left: bool) -> LinElem {
        let k = ring.rank();
        let mut out = LinElem::zero(k, self.vars);
        for r in 0..k {
            let src = self.component(r);
            if src.iter().all(|&c| c == 0) {
                continue;
            }
            let er = ring.basis(r);
            let p = if left { ring.mul(a, &er) } else { ring.mul(&er, a) };
            for (s, &ps) in p.0.iter().enumerate() {
                if ps == 0 {
                    continue;
                }
                let dst = &mut out.coef[s * self.vars..(s + 1) * self.vars];
                for (d, &c) in dst.iter_mut().zip(src) {
                    *d += c * ps as i64;
                }
            }
        }
        out.reduce(ring);
        out
    }
}

/// Value of a polynomial: a concrete element, or linear in the unknowns.
#[derive(Clone, Debug)]
enum Val {
    C(RingElem),
    L(LinElem),
}

fn val_mul(ring: &FinRing, a: Val, b: Val) -> Result<Val, FinRingError> {
    Ok(match (a, b) {
        (Val::C(x), Val::C(y)) => Val::C(ring.mul(&x, &y)),
        (Val::C(x), Val::L(l)) => Val::L(l.mul_concrete(ring, &x, true)),
        (Val::L(l), Val::C(y)) => Val::L(l.mul_concrete(ring, &y, false)),
        (Val::L(_), Val::L(_)) => {
            return Err(FinRingError::Evaluation(
                "identity is not linear in the unknown maps".into(),
            ))
        }
    })
}

fn val_add(ring: &FinRing, a: Val, b: Val) -> Result<Val, FinRingError> {
    Ok(match (a, b) {
        (Val::C(x), Val::C(y)) => Val::C(ring.add(&x, &y)),
        (Val::L(l), Val::L(r)) => Val::L(l.add(ring, &r)),
        (Val::C(x), Val::L(l)) | (Val::L(l), Val::C(x)) if x.is_zero() => Val::L(l),
        _ => {
            return Err(FinRingError::Evaluation(
                "identity mixes terms with and without unknown maps".into(),
            ))
        }
    })
}

fn val_scale(ring: &FinRing, c: i64, v: Val) -> Val {
    match v {
        Val::C(x) => Val::C(ring.scale(c, &x)),
        Val::L(l) => Val::L(l.scale(ring, c)),
    }
}

struct Evaluator<'a, F> {
    ring: &'a FinRing,
    x: &'a RingElem,
    y: &'a RingElem,
    map: F,
}

impl<F> Evaluator<'_, F>
where
    F: Fn(MapSym, &RingElem) -> Result<Val, FinRingError>,
{
    fn monomial(&self, w: &Monomial) -> Result<Val, FinRingError> {
        let mut acc: Option<Val> = None;
        for atom in w.atoms() {
            let v = match atom {
                Atom::Gen(g) if *g == Generator::x() => Val::C(self.x.clone()),
                Atom::Gen(g) if *g == Generator::y() => Val::C(self.y.clone()),
                Atom::Gen(g) => return Err(FinRingError::Evaluation(format!("no value for generator {g}"))),
                Atom::App(f, arg) => match self.monomial(arg)? {
                    Val::C(a) => (self.map)(*f, &a)?,
                    Val::L(_) => return Err(FinRingError::Evaluation(format!("unknown map nested inside {f}"))),
                },
            };
            acc = Some(match acc {
                None => v,
                Some(a) => val_mul(self.ring, a, v)?,
            });
        }
        acc.ok_or_else(|| FinRingError::Evaluation("empty monomial".into()))
    }

    fn poly(&self, p: &Compiled) -> Result<Val, FinRingError> {
        let mut acc = Val::C(self.ring.zero());
        for (w, c) in &p.terms {
            let term = val_scale(self.ring, *c, self.monomial(w)?);
            acc = val_add(self.ring, acc, term)?;
        }
        Ok(acc)
    }
}

/// A polynomial with coefficients evaluated at `(m, n)` and reduced
/// modulo the characteristic of a ring.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    terms: Vec<(Monomial, i64)>,
}

impl Compiled {
    pub(crate) fn new(ring: &FinRing, p: &NCPoly, m: i64, n: i64) -> Self {
        let modulus = BigInt::from(ring.characteristic());
        let terms = p
            .terms()
            .map(|(w, c)| {
                let c = (c.eval(m, n) % &modulus)
                    .to_i64()
                    .expect("reduced below the characteristic");
                (w.clone(), c)
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        Compiled { terms }
    }
}

/// Evaluates `p` at `(x, y)` with concrete maps. Map symbols other than
/// the law's are rejected.
pub fn eval_identity(
    ring: &FinRing,
    spec: &LawSpec,
    sol: &Solution,
    p: &NCPoly,
    x: &RingElem,
    y: &RingElem,
) -> Result<RingElem, FinRingError> {
    eval_compiled(ring, spec, sol, &Compiled::new(ring, p, spec.m, spec.n), x, y)
}

pub(crate) fn eval_compiled(
    ring: &FinRing,
    spec: &LawSpec,
    sol: &Solution,
    p: &Compiled,
    x: &RingElem,
    y: &RingElem,
) -> Result<RingElem, FinRingError> {
    let ev = Evaluator {
        ring,
        x,
        y,
        map: |f: MapSym, a: &RingElem| {
            sol.map_for(spec, f)
                .map(|t| Val::C(t.apply(ring, a)))
                .ok_or_else(|| FinRingError::Evaluation(format!("no map bound to {f}")))
        },
    };
    match ev.poly(p)? {
        Val::C(v) => Ok(v),
        Val::L(_) => unreachable!("concrete maps give concrete values"),
    }
}

/// The law holds at every element, decided on basis elements and their
/// pairwise sums (the law is quadratic in `x`).
pub fn law_holds(ring: &FinRing, spec: &LawSpec, sol: &Solution) -> Result<bool, FinRingError> {
    let k = ring.rank();
    for (p, _, _) in spec.conditions() {
        let p = Compiled::new(ring, &p, spec.m, spec.n);
        let q = |x: &RingElem| eval_compiled(ring, spec, sol, &p, x, &ring.zero());
        for i in 0..k {
            let ei = ring.basis(i);
            let qi = q(&ei)?;
            if !qi.is_zero() {
                return Ok(false);
            }
            for j in i + 1..k {
                let ej = ring.basis(j);
                if !q(&ring.add(&ei, &ej))?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Index of entry `(i, j)` of map `block` among the unknowns.
fn var(k: usize, block: usize, i: usize, j: usize) -> usize {
    block * k * k + i * k + j
}

/// Solves the law for all additive maps of `ring`.
///
/// Each identity `Q(x) = 0` is quadratic in `x`, so it holds everywhere iff
/// `Q(eᵢ) = 0` and `Q(eᵢ + eⱼ) − Q(eᵢ) − Q(eⱼ) = 0` for all basis elements.
/// These give linear congruences in the matrix entries, solved over the
/// lifted lattice.
pub fn solve_identity(ring: &FinRing, spec: &LawSpec, bounds: &Bounds) -> Result<SolutionSet, FinRingError> {
    bounds.check_size(ring.size(), bounds.max_size)?;
    let k = ring.rank();
    let d = ring.moduli();
    let blocks = if spec.law.is_generalized() { 2 } else { 1 };
    let vars = blocks * k * k;
    let var_mod: Vec<u64> = (0..vars).map(|v| d[(v % (k * k)) / k]).collect();
    let mut lat = Lattice::full(vars, ring.characteristic());

    for b in 0..blocks {
        for i in 0..k {
            for j in 0..k {
                if !d[j].is_multiple_of(d[i]) {
                    let mut row = vec![0i64; vars];
                    row[var(k, b, i, j)] = d[j] as i64;
                    lat.constrain(&row, d[i]);
                }
            }
        }
    }

    let (main_sym, aux_sym) = spec.symbols();
    let block_of = |f: MapSym| -> Option<usize> {
        if f == main_sym {
            Some(0)
        } else if f == aux_sym && blocks == 2 {
            Some(1)
        } else {
            None
        }
    };
    let unknown = |f: MapSym, a: &RingElem| -> Result<Val, FinRingError> {
        let b = block_of(f).ok_or_else(|| FinRingError::Evaluation(format!("no unknown named {f}")))?;
        let mut l = LinElem::zero(k, vars);
        for (j, &aj) in a.0.iter().enumerate() {
            if aj != 0 {
                for i in 0..k {
                    l.coef[i * vars + var(k, b, i, j)] += aj as i64;
                }
            }
        }
        l.reduce(ring);
        Ok(Val::L(l))
    };

    let zero = ring.zero();
    for (p, _, _) in spec.conditions() {
        let p = Compiled::new(ring, &p, spec.m, spec.n);
        let q = |x: &RingElem| -> Result<LinElem, FinRingError> {
            let ev = Evaluator {
                ring,
                x,
                y: &zero,
                map: &unknown,
            };
            match ev.poly(&p)? {
                Val::L(l) => Ok(l),
                Val::C(c) if c.is_zero() => Ok(LinElem::zero(k, vars)),
                Val::C(_) => Err(FinRingError::Evaluation("identity has a constant term".into())),
            }
        };
        let diag: Vec<LinElem> = (0..k).map(|i| q(&ring.basis(i))).collect::<Result<_, _>>()?;
        let mut forms = diag.clone();
        for i in 0..k {
            for j in i + 1..k {
                let s = q(&ring.add(&ring.basis(i), &ring.basis(j)))?;
                let b = s
                    .add(ring, &diag[i].scale(ring, -1))
                    .add(ring, &diag[j].scale(ring, -1));
                forms.push(b);
            }
        }
        for f in &forms {
            for (r, &dr) in d.iter().enumerate() {
                let row = f.component(r);
                if row.iter().any(|&c| c != 0) {
                    lat.constrain(row, dr);
                }
            }
        }
    }

    for (v, &mv) in var_mod.iter().enumerate() {
        let mut u = vec![0i128; vars];
        u[v] = mv as i128;
        if !lat.contains(&u) {
            return Err(FinRingError::Evaluation(format!(
                "conditions are not well defined on the additive group (unknown {v})"
            )));
        }
    }

    let pivots = lat.pivots();
    let radix: Vec<u64> = pivots.iter().zip(&var_mod).map(|(p, m)| m / p).collect();
    let count: BigUint = radix.iter().map(|&r| BigUint::from(r)).product();

    let to_solution = |u: &[i128]| -> Solution {
        let block = |b: usize| -> AddMap {
            let entries: Vec<i64> = (0..k * k)
                .map(|e| u[b * k * k + e].rem_euclid(var_mod[b * k * k + e] as i128) as i64)
                .collect();
            AddMap::from_entries(ring, &entries).expect("lattice respects additivity")
        };
        Solution {
            main: block(0),
            aux: (blocks == 2).then(|| block(1)),
        }
    };

    let generators: Vec<Solution> = (0..vars)
        .filter(|&v| radix[v] > 1)
        .map(|v| to_solution(&lat.rows()[v]))
        .collect();

    let solutions = match count.to_u64() {
        Some(c) if c <= bounds.max_solutions => {
            let active: Vec<usize> = (0..vars).filter(|&v| radix[v] > 1).collect();
            let mut digits = vec![0u64; active.len()];
            let mut out = Vec::with_capacity(c as usize);
            loop {
                let mut u = vec![0i128; vars];
                for (&v, &dv) in active.iter().zip(&digits) {
                    if dv != 0 {
                        for (x, &r) in u.iter_mut().zip(&lat.rows()[v]) {
                            *x += dv as i128 * r;
                        }
                    }
                }
                out.push(to_solution(&u));
                let mut pos = 0;
                loop {
                    if pos == active.len() {
                        break;
                    }
                    digits[pos] += 1;
                    if digits[pos] < radix[active[pos]] {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == active.len() {
                    break;
                }
            }
            out.sort();
            Some(out)
        }
        _ => None,
    };

    let invariants = solution_invariants(&lat, &var_mod);

    Ok(SolutionSet {
        spec: *spec,
        count,
        solutions,
        generators,
        pivots,
        invariants,
    })
}

/// Invariant factors of `L / ⊕ cᵥℤ`: Smith form of the moduli expressed in
/// the Hermite basis of `L`.
fn solution_invariants(lat: &Lattice, var_mod: &[u64]) -> Vec<u64> {
    let b = lat.rows();
    let dim = b.len();
    let rel: Vec<Vec<BigInt>> = (0..dim)
        .map(|v| {
            let mut c = vec![0i128; dim];
            for t in 0..dim {
                let target = if t == v { var_mod[v] as i128 } else { 0 };
                let acc: i128 = (0..t).map(|s| c[s] * b[s][t]).sum();
                c[t] = (target - acc) / b[t][t];
            }
            c.into_iter().map(BigInt::from).collect()
        })
        .collect();
    invariant_factors(&rel)
        .into_iter()
        .map(|f| f.to_u64().expect("invariants divide the exponent"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(law: Law, m: i64, n: i64) -> LawSpec {
        LawSpec::new(law, m, n).unwrap()
    }

    #[test]
    fn z5_centralizers_are_scalars() {
        let r = FinRing::zn(5).unwrap();
        let s = solve_identity(&r, &spec(Law::Centralizer, 1, 1), &Bounds::default()).unwrap();
        assert_eq!(s.count_u64(), Some(5));
        let sols = s.solutions.unwrap();
        for (c, sol) in sols.iter().enumerate() {
            assert_eq!(sol.main, AddMap::from_entries(&r, &[c as i64]).unwrap());
        }
        assert_eq!(s.invariants, vec![5]);
    }

    #[test]
    fn zero_map_always_solves() {
        for law in Law::ALL {
            let r = FinRing::mat(2, 3).unwrap();
            let s = solve_identity(&r, &spec(law, 1, 2), &Bounds::default()).unwrap();
            let sols = s.solutions.unwrap();
            let zero = Solution {
                main: AddMap::zero(&r),
                aux: law.is_generalized().then(|| AddMap::zero(&r)),
            };
            assert!(sols.contains(&zero));
        }
    }

    #[test]
    fn every_enumerated_solution_satisfies_the_law() {
        let r = FinRing::product(&FinRing::zn(2).unwrap(), &FinRing::zn(3).unwrap()).unwrap();
        for law in Law::ALL {
            let sp = spec(law, 1, 2);
            let s = solve_identity(&r, &sp, &Bounds::default()).unwrap();
            for sol in s.solutions.unwrap() {
                assert!(law_holds(&r, &sp, &sol).unwrap(), "{law}: {sol}");
            }
        }
    }

    #[test]
    fn enumeration_cutoff_keeps_count_and_generators() {
        // zero multiplication: every additive map solves every law
        let zero = vec![vec![vec![0u64; 2]; 2]; 2];
        let r = FinRing::from_table(vec![3, 3], zero).unwrap();
        let bounds = Bounds {
            max_solutions: 10,
            ..Bounds::default()
        };
        let s = solve_identity(&r, &spec(Law::GenCentralizer, 1, 1), &bounds).unwrap();
        assert_eq!(s.count, BigUint::from(3u64.pow(8)));
        assert!(s.solutions.is_none());
        assert_eq!(s.generators.len(), 8);
        assert_eq!(s.invariants, vec![3; 8]);
    }
}
