use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{Atom, FreeAlgError, Generator, MapSym, Monomial, ScalarPoly};

/// Noncommutative polynomial over ℤ[m,n]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, ScalarPoly>,
}

/// Simultaneous substitution of generators by polynomials.
pub type Substitution = BTreeMap<Generator, NCPoly>;

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(ScalarPoly::one(), m)
    }

    pub fn term(c: ScalarPoly, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn gen(g: Generator) -> Self {
        Self::monomial(Monomial::gen(g))
    }

    pub fn x() -> Self {
        Self::gen(Generator::x())
    }

    pub fn y() -> Self {
        Self::gen(Generator::y())
    }

    /// Applies the additive map `f` to `arg`, distributing over the terms.
    pub fn apply(f: MapSym, arg: &NCPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &arg.terms {
            out.add_term(Monomial::atom(Atom::App(f, m.clone())), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ScalarPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &ScalarPoly, other: &NCPoly) {
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &ScalarPoly) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
        }
    }

    /// `pq − qp`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        assert!(k >= 1, "no unit element for a zeroth power");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = &acc * self;
        }
        acc
    }

    /// Occurrences of `g` per monomial, largest first.
    pub fn max_degree_in(&self, g: Generator) -> usize {
        self.terms.keys().map(|m| m.degree_in(g)).max().unwrap_or(0)
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.terms.keys().any(|m| m.degree_in(g) > 0)
    }

    pub fn contains_map(&self, f: MapSym) -> bool {
        self.terms.keys().any(|m| m.contains_map(f))
    }

    /// Replaces every occurrence of `g` (also inside map arguments) by `r`.
    pub fn substitute(&self, g: Generator, r: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        let mut sigma = Substitution::new();
        sigma.insert(g, r.clone());
        self.substitute_all(&sigma)
    }

    /// Simultaneous substitution. Each image must not contain a map applied
    /// to an argument mentioning the generator it replaces.
    pub fn substitute_all(&self, sigma: &Substitution) -> Result<NCPoly, FreeAlgError> {
        for (g, r) in sigma {
            for m in r.terms.keys() {
                if let Some(bad) = nesting_violation(m, *g) {
                    return Err(FreeAlgError::NestedSubstitution {
                        generator: *g,
                        atom: bad.to_string(),
                    });
                }
            }
        }
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(c, &subst_monomial(m, sigma));
        }
        Ok(out)
    }

    /// Keeps exactly the monomials of even `g`-degree: `½(p(g) + p(−g))`.
    pub fn polarize_even(&self, g: Generator) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(g) % 2 == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Returns `q` with `c·q = self`, failing on the first coefficient that
    /// is not a multiple of `c` in ℤ[m,n].
    pub fn exact_divide(&self, c: &ScalarPoly) -> Result<NCPoly, FreeAlgError> {
        if c.is_zero() {
            return Err(FreeAlgError::DivisionByZero);
        }
        let mut out = NCPoly::zero();
        for (m, d) in &self.terms {
            match d.exact_div(c) {
                Some(q) => out.add_term(m.clone(), q),
                None => {
                    return Err(FreeAlgError::Indivisible {
                        monomial: m.to_string(),
                        coefficient: d.to_string(),
                        divisor: c.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

fn nesting_violation(m: &Monomial, g: Generator) -> Option<&Atom> {
    m.atoms()
        .iter()
        .find(|a| matches!(a, Atom::App(_, arg) if arg.degree_in(g) > 0))
}

fn subst_monomial(m: &Monomial, sigma: &Substitution) -> NCPoly {
    let mut acc: Option<NCPoly> = None;
    for a in m.atoms() {
        let f = subst_atom(a, sigma);
        acc = Some(match acc {
            None => f,
            Some(p) => &p * &f,
        });
    }
    acc.unwrap_or_default()
}

fn subst_atom(a: &Atom, sigma: &Substitution) -> NCPoly {
    match a {
        Atom::Gen(g) => sigma.get(g).cloned().unwrap_or_else(|| NCPoly::gen(*g)),
        Atom::App(f, arg) => NCPoly::apply(*f, &subst_monomial(arg, sigma)),
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&ScalarPoly::one(), rhs);
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&ScalarPoly::constant(-1), rhs);
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $f(self, rhs: NCPoly) -> NCPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

fn leading_negative(c: &ScalarPoly) -> bool {
    c.terms().all(|(_, v)| v.is_negative())
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = leading_negative(c);
            let shown = if neg { -c } else { c.clone() };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !shown.is_one() {
                if shown.num_terms() > 1 {
                    write!(f, "({shown})*")?;
                } else {
                    write!(f, "{shown}*")?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}
