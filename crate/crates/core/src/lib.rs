//! Certificate checking for identities of generalized (m,n)-Jordan maps on
//! semiprime rings, together with an exhaustive finite-ring verifier.
//!
//! * [`freealg`] implements the noncommutative polynomial algebra over
//!   ℤ[m,n] whose monomials mix ring generators with applications of
//!   additive maps.
//! * [`proofcheck`] parses and replays line-oriented proof scripts in which
//!   every step is an explicit certificate.
//! * [`finring`] builds finite rings from structure constants, decides the
//!   ring-theoretic hypotheses and solves the defining functional identities
//!   for all additive maps.

pub mod finring;
pub mod freealg;
pub mod laws;
pub mod proofcheck;

pub use freealg::{Atom, Generator, MapSym, Monomial, NCPoly, ScalarPoly};
pub use laws::Law;
pub use proofcheck::{check_step, parse_script, replay, AuditReport, Identity, ProofScript, Step, StepKind, Verdict};
