//! Symbolic computation of equivariant classes of equioriented type-A
//! quiver orbits: rank conditions and lace diagrams, double Schubert and
//! Grothendieck polynomials, the component formula with its diagram moves,
//! quiver coefficients, and the K-theoretic factorization sets.

pub mod error;
pub mod lace;
pub mod partition;
pub mod schubert;
pub mod perm;
pub mod quiver;
pub mod report;
pub mod poly;
pub mod symmetric;

pub use error::{Error, Result};
pub use lace::{KMoveVariant, LaceDiagram, MoveDirection, PermSeq, RankConditions};
pub use partition::Partition;
pub use perm::Permutation;
pub use poly::{Monomial, Poly, Subst, Variable};
pub use quiver::{KmsConditionsReport, QuiverExpansion, VerifyCheck, VerifyReport};
