//! Finite rings given by structure constants on `ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}`,
//! ring-theoretic predicates, and exact solution of the defining identities
//! over all additive maps.

mod addmap;
mod lattice;
pub mod oracle;
mod predicates;
mod ring;
mod solve;
mod tables;
mod theorem;

pub use addmap::AddMap;
pub use lattice::{invariant_factors, Lattice};
pub use predicates::{center, is_prime, is_semiprime, maps_into_center, verify_derivation, verify_two_sided};
pub use ring::{FinRing, NamedRing, RingElem, RingSpec};
pub use solve::{eval_identity, law_holds, solve_identity, LawSpec, Solution, SolutionSet};
pub use tables::{associative_tables, small_rings};
pub use theorem::{check_conclusion, check_theorem, cross_check_lemma, search_family, Family, TheoremReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinRingError {
    #[error("invalid ring specification: {0}")]
    Spec(String),
    #[error("structure constants for e{i}·e{j} do not respect the additive orders")]
    IllDefined { i: usize, j: usize },
    #[error("multiplication is not associative on (e{i}, e{j}, e{l})")]
    NonAssociative { i: usize, j: usize, l: usize },
    #[error("entry ({i}, {j}) does not define an additive map")]
    NotAdditive { i: usize, j: usize },
    #[error("ring of size {size} exceeds the bound {bound}")]
    SizeExceeded { size: u64, bound: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cannot evaluate identity: {0}")]
    Evaluation(String),
}

/// Resource limits for exhaustive scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest ring scanned element by element, and solved.
    pub max_size: u64,
    /// Largest ring scanned over all pairs of elements.
    pub pair_size: u64,
    /// Largest ring scanned over all triples of elements.
    pub triple_size: u64,
    /// Largest solution set listed explicitly.
    pub max_solutions: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_size: 20_000,
            pair_size: 10_000,
            triple_size: 2_000,
            max_solutions: 1_000_000,
        }
    }
}

impl Bounds {
    pub(crate) fn check_size(&self, size: u64, bound: u64) -> Result<(), FinRingError> {
        if size > bound {
            Err(FinRingError::SizeExceeded { size, bound })
        } else {
            Ok(())
        }
    }
}
