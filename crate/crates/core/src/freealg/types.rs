use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A universally quantified ring element. The alphabet is `{x, y, z}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator(char);

impl Generator {
    pub const ALPHABET: [char; 3] = ['x', 'y', 'z'];

    pub fn new(c: char) -> Option<Self> {
        Self::ALPHABET.contains(&c).then_some(Generator(c))
    }

    pub fn x() -> Self {
        Generator('x')
    }

    pub fn y() -> Self {
        Generator('y')
    }

    pub fn name(self) -> char {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rewrite behaviour attached to a map symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Opaque,
    TwoSidedCentralizer,
    CentralDerivation,
}

/// The additive maps that may appear in an identity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MapSym {
    T,
    T0,
    D,
    F,
    /// `F − D` in the derivation argument.
    Fcal,
}

impl MapSym {
    pub const ALL: [MapSym; 5] = [MapSym::T, MapSym::T0, MapSym::D, MapSym::F, MapSym::Fcal];

    pub fn kind(self) -> MapKind {
        match self {
            MapSym::T0 => MapKind::TwoSidedCentralizer,
            MapSym::D => MapKind::CentralDerivation,
            _ => MapKind::Opaque,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MapSym::T => "T",
            MapSym::T0 => "T0",
            MapSym::D => "D",
            MapSym::F => "F",
            MapSym::Fcal => "Fc",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "T" => Some(MapSym::T),
            "T0" => Some(MapSym::T0),
            "D" => Some(MapSym::D),
            "F" => Some(MapSym::F),
            "Fc" | "Fcal" => Some(MapSym::Fcal),
            _ => None,
        }
    }
}

impl fmt::Display for MapSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for MapSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A letter of a monomial: a generator or a map applied to a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Gen(Generator),
    App(MapSym, Monomial),
}

impl Atom {
    pub fn gen(g: Generator) -> Self {
        Atom::Gen(g)
    }

    pub fn app(f: MapSym, arg: Monomial) -> Self {
        Atom::App(f, arg)
    }

    /// Occurrences of `g`, counting those inside map arguments.
    pub fn degree_in(&self, g: Generator) -> usize {
        match self {
            Atom::Gen(h) => usize::from(*h == g),
            Atom::App(_, arg) => arg.degree_in(g),
        }
    }

    pub fn is_app(&self) -> bool {
        matches!(self, Atom::App(..))
    }

    pub fn contains_map(&self, f: MapSym) -> bool {
        match self {
            Atom::Gen(_) => false,
            Atom::App(h, arg) => *h == f || arg.contains_map(f),
        }
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.degree_in(g) > 0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Gen(g) => write!(f, "{g}"),
            Atom::App(s, arg) => write!(f, "{s}[{arg}]"),
        }
    }
}

/// Nonempty word of atoms. Ordered length-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<Atom>);

impl Monomial {
    /// Panics on an empty word: there is no unit monomial.
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "monomials are nonempty");
        Monomial(atoms)
    }

    pub fn try_new(atoms: Vec<Atom>) -> Option<Self> {
        (!atoms.is_empty()).then_some(Monomial(atoms))
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![a])
    }

    pub fn gen(g: Generator) -> Self {
        Monomial(vec![Atom::Gen(g)])
    }

    /// Word of generators, e.g. `"xyx"`.
    pub fn word(s: &str) -> Option<Self> {
        let atoms = s
            .chars()
            .map(|c| Generator::new(c).map(Atom::Gen))
            .collect::<Option<Vec<_>>>()?;
        Self::try_new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn degree_in(&self, g: Generator) -> usize {
        self.0.iter().map(|a| a.degree_in(g)).sum()
    }

    pub fn contains_map(&self, f: MapSym) -> bool {
        self.0.iter().any(|a| a.contains_map(f))
    }

    pub fn has_app(&self) -> bool {
        self.0.iter().any(Atom::is_app)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let a = &self.0[i];
            let mut run = 1;
            if let Atom::Gen(_) = a {
                while i + run < self.0.len() && self.0[i + run] == *a {
                    run += 1;
                }
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{a}^{run}")?;
            } else {
                write!(f, "{a}")?;
            }
            i += run;
        }
        Ok(())
    }
}
