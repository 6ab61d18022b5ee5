//! Noncommutative polynomials over ℤ[m,n] in ring generators and
//! applications of additive maps.

mod expr;
mod normalize;
mod poly;
mod scalar;
mod types;

pub use expr::{
    parse_poly, parse_scalar, EvalError, Expr, NoRefs, ParseError, Parser, PolyParseError, Resolver, Value,
};
pub use normalize::{normalize, normalize_with, Rules};
pub use poly::{NCPoly, Substitution};
pub use scalar::{Exponent, ScalarPoly};
pub use types::{Atom, Generator, MapKind, MapSym, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeAlgError {
    #[error("substituting for {generator} would nest a map around itself at {atom}")]
    NestedSubstitution { generator: Generator, atom: String },
    #[error("no rewrite rule for {atom}: {reason}")]
    UndefinedRule { atom: String, reason: String },
    #[error("coefficient {coefficient} of {monomial} is not divisible by {divisor}")]
    Indivisible {
        monomial: String,
        coefficient: String,
        divisor: String,
    },
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
