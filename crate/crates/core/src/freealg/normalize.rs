//! Canonical forms modulo the structural laws of `T0` and `D`.
//!
//! Rules, applied bottom-up until nothing changes:
//!
//! * (a) `u·T0(w)·v → T0(u·w·v)`; a monomial with `k` occurrences of `T0`
//!   becomes `T0` nested `k` times around the flattened word.
//! * (b) `D(a₁…a_k) → Σᵢ a₁…a_{i−1}·D(aᵢ)·a_{i+1}…a_k` for words of
//!   generators with `k > 1`.
//! * (c) `D` atoms commute with everything; they are moved to the right end
//!   and sorted.

use super::{Atom, FreeAlgError, MapSym, Monomial, NCPoly, ScalarPoly};

/// Which structural rule families are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rules {
    pub two_sided_t0: bool,
    pub central_d: bool,
}

impl Rules {
    pub const NONE: Rules = Rules {
        two_sided_t0: false,
        central_d: false,
    };

    pub const ALL: Rules = Rules {
        two_sided_t0: true,
        central_d: true,
    };
}

/// Normal form with every rule active.
pub fn normalize(p: &NCPoly) -> Result<NCPoly, FreeAlgError> {
    normalize_with(p, Rules::ALL)
}

pub fn normalize_with(p: &NCPoly, rules: Rules) -> Result<NCPoly, FreeAlgError> {
    let mut out = NCPoly::zero();
    for (m, c) in p.terms() {
        out.add_scaled(c, &norm_monomial(m, rules)?);
    }
    Ok(out)
}

fn norm_monomial(m: &Monomial, rules: Rules) -> Result<NCPoly, FreeAlgError> {
    let mut acc: Option<NCPoly> = None;
    for a in m.atoms() {
        let f = norm_atom(a, rules)?;
        acc = Some(match acc {
            None => f,
            Some(p) => &p * &f,
        });
    }
    let raw = acc.unwrap_or_default();
    let mut out = NCPoly::zero();
    for (w, c) in raw.terms() {
        out.add_term(word_rules(w.clone(), rules), c.clone());
    }
    Ok(out)
}

fn norm_atom(a: &Atom, rules: Rules) -> Result<NCPoly, FreeAlgError> {
    let (f, arg) = match a {
        Atom::Gen(_) => return Ok(NCPoly::monomial(Monomial::atom(a.clone()))),
        Atom::App(f, arg) => (*f, arg),
    };
    let arg = norm_monomial(arg, rules)?;
    let mut out = NCPoly::zero();
    for (w, c) in arg.terms() {
        if f == MapSym::D && rules.central_d && w.len() > 1 {
            if let Some(bad) = w.atoms().iter().find(|b| b.is_app()) {
                return Err(FreeAlgError::UndefinedRule {
                    atom: Atom::App(f, w.clone()).to_string(),
                    reason: format!("Leibniz expansion over the map atom {bad}"),
                });
            }
            out.add_scaled(c, &leibniz(w, rules));
        } else {
            let m = Monomial::atom(Atom::App(f, w.clone()));
            out.add_term(word_rules(m, rules), c.clone());
        }
    }
    Ok(out)
}

fn leibniz(w: &Monomial, rules: Rules) -> NCPoly {
    let atoms = w.atoms();
    let mut out = NCPoly::zero();
    for i in 0..atoms.len() {
        let mut v: Vec<Atom> = Vec::with_capacity(atoms.len());
        v.extend_from_slice(&atoms[..i]);
        v.push(Atom::App(MapSym::D, Monomial::atom(atoms[i].clone())));
        v.extend_from_slice(&atoms[i + 1..]);
        out.add_term(word_rules(Monomial::new(v), rules), ScalarPoly::one());
    }
    out
}

fn is_d(a: &Atom) -> bool {
    matches!(a, Atom::App(MapSym::D, _))
}

fn sort_central(atoms: Vec<Atom>) -> Vec<Atom> {
    let (mut ds, mut rest): (Vec<Atom>, Vec<Atom>) = atoms.into_iter().partition(is_d);
    ds.sort();
    rest.append(&mut ds);
    rest
}

fn flatten_t0(atoms: &[Atom], depth: &mut usize, out: &mut Vec<Atom>) {
    for a in atoms {
        match a {
            Atom::App(MapSym::T0, w) => {
                *depth += 1;
                flatten_t0(w.atoms(), depth, out);
            }
            _ => out.push(a.clone()),
        }
    }
}

/// Monomial-level rules (a) and (c). Arguments are already normal.
fn word_rules(m: Monomial, rules: Rules) -> Monomial {
    let mut atoms = m.into_atoms();
    if rules.two_sided_t0 && atoms.iter().any(|a| matches!(a, Atom::App(MapSym::T0, _))) {
        let mut depth = 0;
        let mut flat = Vec::with_capacity(atoms.len());
        flatten_t0(&atoms, &mut depth, &mut flat);
        if rules.central_d {
            flat = sort_central(flat);
        }
        let mut inner = Monomial::new(flat);
        for _ in 0..depth {
            inner = Monomial::atom(Atom::App(MapSym::T0, inner));
        }
        return inner;
    }
    if rules.central_d {
        atoms = sort_central(atoms);
    }
    Monomial::new(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;

    fn x() -> NCPoly {
        NCPoly::x()
    }
    fn y() -> NCPoly {
        NCPoly::y()
    }
    fn app(f: MapSym, p: &NCPoly) -> NCPoly {
        NCPoly::apply(f, p)
    }

    #[test]
    fn two_sided_absorption() {
        let mn2 = ScalarPoly::constant(2) * ScalarPoly::m() * ScalarPoly::n();
        let xyx = &(&x() * &y()) * &x();
        let lhs = (&(&x() * &app(MapSym::T0, &y())) * &x()).scale(&mn2);
        let rhs = app(MapSym::T0, &xyx).scale(&mn2);
        assert!(normalize(&(&lhs - &rhs)).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule() {
        let xy = &x() * &y();
        let p = &(&app(MapSym::D, &xy) - &(&app(MapSym::D, &x()) * &y())) - &(&x() * &app(MapSym::D, &y()));
        assert!(normalize(&p).unwrap().is_zero());
    }

    #[test]
    fn centrality() {
        let dx = app(MapSym::D, &x());
        let p = &(&y() * &dx) - &(&dx * &y());
        assert!(normalize(&p).unwrap().is_zero());
    }

    #[test]
    fn commutators_vanish_under_central_derivation() {
        let p = &app(MapSym::D, &(&x() * &y())) - &app(MapSym::D, &(&y() * &x()));
        assert!(normalize(&p).unwrap().is_zero());
    }

    #[test]
    fn opaque_maps_untouched() {
        let p = &(&app(MapSym::T, &x()) * &y()) - &(&y() * &app(MapSym::T, &x()));
        assert_eq!(normalize(&p).unwrap(), p);
    }

    #[test]
    fn rules_can_be_disabled() {
        let p = &x() * &app(MapSym::T0, &y());
        assert_eq!(normalize_with(&p, Rules::NONE).unwrap(), p);
        let q = normalize(&p).unwrap();
        assert_eq!(q.to_string(), "T0[x*y]");
    }

    #[test]
    fn two_t0_atoms_nest() {
        let p = &app(MapSym::T0, &x()) * &app(MapSym::T0, &y());
        let q = normalize(&p).unwrap();
        assert_eq!(q.to_string(), "T0[T0[x*y]]");
        assert_eq!(normalize(&q).unwrap(), q);
    }

    #[test]
    fn leibniz_over_map_atom_errors() {
        let inner = &x() * &app(MapSym::T, &y());
        let p = app(MapSym::D, &inner);
        assert!(matches!(normalize(&p), Err(FreeAlgError::UndefinedRule { .. })));
    }

    #[test]
    fn d_squared_argument() {
        let p = app(MapSym::D, &(&x() * &x()));
        let q = normalize(&p).unwrap();
        let dx = app(MapSym::D, &x());
        assert_eq!(q, (&x() * &dx).scale(&ScalarPoly::constant(2)));
        assert_eq!(q.max_degree_in(Generator::x()), 2);
    }
}
