use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(i, j)` standing for `m^i n^j`.
pub type Exponent = (u32, u32);

/// Exact polynomial in the two symbolic parameters `m` and `n` with integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<I: Into<BigInt>>(c: I) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term<I: Into<BigInt>>(c: I, i: u32, j: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    /// The parameter `m`.
    pub fn m() -> Self {
        Self::term(1, 1, 0)
    }

    /// The parameter `n`.
    pub fn n() -> Self {
        Self::term(1, 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(|c| c.is_one())
    }

    /// Returns the value when the polynomial has no `m` or `n` dependence.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Evaluates at concrete integers `m`, `n`.
    pub fn eval(&self, m: i64, n: i64) -> BigInt {
        let m = BigInt::from(m);
        let n = BigInt::from(n);
        self.terms
            .iter()
            .map(|((i, j), c)| c * num_traits::pow(m.clone(), *i as usize) * num_traits::pow(n.clone(), *j as usize))
            .sum()
    }

    /// Leading term under lexicographic order with `m > n`.
    fn leading(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division in ℤ[m,n] by lexicographic long division. Returns
    /// `None` unless `self = divisor * q` for some `q`.
    pub fn exact_div(&self, divisor: &ScalarPoly) -> Option<ScalarPoly> {
        let ((da, db), dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = ScalarPoly::zero();
        while let Some(((ra, rb), rc)) = rem.leading() {
            if ra < da || rb < db {
                return None;
            }
            let (q, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let t = ScalarPoly::term(q, ra - da, rb - db);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// True when `self` is, up to sign, a product of members of `factors`.
    /// The members are expected to be pairwise non-associate irreducibles,
    /// which makes greedy division complete.
    pub fn is_product_of(&self, factors: &[ScalarPoly]) -> bool {
        if self.is_zero() {
            return false;
        }
        let mut rest = self.clone();
        'outer: loop {
            if let Some(c) = rest.as_integer() {
                if c.abs().is_one() {
                    return true;
                }
            }
            for f in factors {
                if f.as_integer().is_some_and(|c| c.abs().is_one()) {
                    continue;
                }
                if let Some(q) = rest.exact_div(f) {
                    rest = q;
                    continue 'outer;
                }
            }
            return false;
        }
    }

    /// Splits `self` into a sequence of members of `factors` (with sign
    /// absorbed). Used for the torsion ledger of an audit report.
    pub fn factor_over(&self, factors: &[ScalarPoly]) -> Option<Vec<ScalarPoly>> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        'outer: loop {
            if let Some(c) = rest.as_integer() {
                if c.abs().is_one() {
                    return Some(out);
                }
            }
            for f in factors {
                if f.as_integer().is_some_and(|c| c.abs().is_one()) {
                    continue;
                }
                if let Some(q) = rest.exact_div(f) {
                    rest = q;
                    out.push(f.clone());
                    continue 'outer;
                }
            }
            return None;
        }
    }

    /// Same polynomial up to a unit sign.
    pub fn associate(&self, other: &ScalarPoly) -> bool {
        self == other || *self == -other
    }

    /// Display order: higher total degree first, then larger `m` exponent.
    fn display_order(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| match (b.0 + b.1).cmp(&(a.0 + a.1)) {
            Ordering::Equal => b.0.cmp(&a.0),
            o => o,
        });
        v
    }
}

impl PartialOrd for ScalarPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScalarPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl From<i64> for ScalarPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for ScalarPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ScalarPoly {
            type Output = ScalarPoly;
            fn $f(self, rhs: ScalarPoly) -> ScalarPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: u32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if !abs.is_one() || (*i == 0 && *j == 0) {
                write!(f, "{abs}")?;
                first = false;
            }
            write_power(f, 'm', *i, &mut first)?;
            write_power(f, 'n', *j, &mut first)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> ScalarPoly {
        ScalarPoly::m()
    }
    fn n() -> ScalarPoly {
        ScalarPoly::n()
    }
    fn c(v: i64) -> ScalarPoly {
        ScalarPoly::constant(v)
    }

    #[test]
    fn zero_has_no_terms() {
        let p = &m() - &m();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn binomial_cube() {
        let s = &m() + &n();
        let cube = s.pow(3);
        assert_eq!(cube.to_string(), "m^3 + 3*m^2*n + 3*m*n^2 + n^3");
        assert_eq!(cube.eval(2, 3), BigInt::from(125));
    }

    #[test]
    fn exact_division_recovers_factor() {
        let f = &n() * &(&(&c(2) * &m()) + &n());
        let w = &(&m() * &m()) - &(&c(3) * &n());
        let prod = &f * &w;
        assert_eq!(prod.exact_div(&f), Some(w));
    }

    #[test]
    fn indivisible_is_rejected() {
        let p = &m() + &n();
        assert_eq!(p.exact_div(&(&m() - &n())), None);
        assert_eq!(c(3).exact_div(&c(2)), None);
        assert_eq!(m().exact_div(&ScalarPoly::zero()), None);
    }

    #[test]
    fn product_membership_up_to_sign() {
        let budget = [c(2), m(), n(), &m() + &n(), &(&c(2) * &m()) + &n()];
        let f = &(&c(-4) * &n()) * &(&(&c(2) * &m()) + &n());
        assert!(f.is_product_of(&budget));
        assert!(!c(3).is_product_of(&budget));
        assert!(!(&m() - &n()).is_product_of(&budget));
        let parts = f.factor_over(&budget).unwrap();
        assert_eq!(parts.len(), 4);
    }

    #[test]
    fn display_signs() {
        let p = &(&n() - &m()) - &c(1);
        assert_eq!(p.to_string(), "-m + n - 1");
    }
}
