//! The four defining functional identities and their xyx-expansions, in
//! symbolic form. Both the proof checker and the finite-ring verifier read
//! their definitions from here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::freealg::{parse_poly, parse_scalar, MapSym, NCPoly, ScalarPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// `(m+n)T(x²) = mT(x)x + nxT(x)`
    Centralizer,
    /// `(m+n)T(x²) = mT(x)x + nxT₀(x)` with `T₀` a centralizer of the above kind
    GenCentralizer,
    /// `(m+n)D(x²) = 2mD(x)x + 2nxD(x)`
    Derivation,
    /// `(m+n)F(x²) = 2mF(x)x + 2nxD(x)` with `D` a derivation of the above kind
    GenDerivation,
}

impl Law {
    pub const ALL: [Law; 4] = [
        Law::Centralizer,
        Law::GenCentralizer,
        Law::Derivation,
        Law::GenDerivation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Centralizer => "centralizer",
            Law::GenCentralizer => "gen-centralizer",
            Law::Derivation => "derivation",
            Law::GenDerivation => "gen-derivation",
        }
    }

    /// Generalized laws involve a second, auxiliary map.
    pub fn is_generalized(self) -> bool {
        matches!(self, Law::GenCentralizer | Law::GenDerivation)
    }

    /// The law the auxiliary map has to satisfy.
    pub fn base(self) -> Law {
        match self {
            Law::Centralizer | Law::GenCentralizer => Law::Centralizer,
            Law::Derivation | Law::GenDerivation => Law::Derivation,
        }
    }

    pub fn is_derivation_type(self) -> bool {
        matches!(self, Law::Derivation | Law::GenDerivation)
    }

    /// The identity `lhs − rhs` of the law for `main` (and `aux` for the
    /// generalized laws; ignored otherwise).
    pub fn identity(self, main: MapSym, aux: MapSym) -> NCPoly {
        let src = match self {
            Law::Centralizer => format!("(m+n)*{main}[x^2] - m*{main}[x]*x - n*x*{main}[x]"),
            Law::GenCentralizer => format!("(m+n)*{main}[x^2] - m*{main}[x]*x - n*x*{aux}[x]"),
            Law::Derivation => format!("(m+n)*{main}[x^2] - 2*m*{main}[x]*x - 2*n*x*{main}[x]"),
            Law::GenDerivation => format!("(m+n)*{main}[x^2] - 2*m*{main}[x]*x - 2*n*x*{aux}[x]"),
        };
        parse_poly(&src).expect("law templates are well formed")
    }

    /// Integer factors whose torsion-freeness the corresponding theorem
    /// assumes, as polynomials in m, n.
    pub fn torsion_factors(self) -> Vec<ScalarPoly> {
        let src: &[&str] = match self {
            Law::Centralizer => &["m", "n", "m+n"],
            Law::GenCentralizer => &["m", "n", "m+n", "2m+n"],
            Law::Derivation | Law::GenDerivation => &["m", "n", "m+n", "n-m"],
        };
        src.iter().map(|s| parse_scalar(s).expect("well formed")).collect()
    }

    /// Product of the torsion factors at concrete `(m, n)`, taken positive.
    pub fn torsion_product(self, m: i64, n: i64) -> u64 {
        self.torsion_factors()
            .iter()
            .map(|f| {
                let v: i64 = f.eval(m, n).try_into().expect("small parameters");
                v.unsigned_abs()
            })
            .product()
    }

    /// The xyx-expansion satisfied by maps obeying the law, as `lhs − rhs`.
    /// For the non-generalized laws the auxiliary map is the main map.
    pub fn xyx_lemma(self, main: MapSym, aux: MapSym) -> NCPoly {
        let (f, g) = if self.is_generalized() {
            (main, aux)
        } else {
            (main, main)
        };
        let src = if self.is_derivation_type() {
            format!(
                "(m+n)^2*{f}[x*y*x] - m*(n-m)*{f}[x]*x*y - m*(m-n)*{f}[y]*x^2 - n*(n-m)*x^2*{g}[y] \
                 - n*(m-n)*y*x*{g}[x] - m*(3*m+n)*{f}[x]*y*x - 4*m*n*x*{g}[y]*x - n*(3*n+m)*x*y*{g}[x]"
            )
        } else {
            format!(
                "2*(m+n)^2*{f}[x*y*x] - m*n*{f}[x]*x*y - m*(2*m+n)*{f}[x]*y*x + m*n*{f}[y]*x^2 \
                 - 2*m*n*x*{g}[y]*x + m*n*x^2*{g}[y] - n*(m+2*n)*x*y*{g}[x] - m*n*y*x*{g}[x]"
            )
        };
        parse_poly(&src).expect("lemma templates are well formed")
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| {
            format!("unknown law '{s}' (expected one of centralizer, gen-centralizer, derivation, gen-derivation)")
        })
    }
}
