//! Exact decomposition of the Alexander module of a knot.
//!
//! Given an integer Seifert matrix `S`, the presentation matrix
//! `A(t) = S^T - t S` determines the Alexander module over `C[t, t^-1]`,
//! which splits into cyclic summands `C[t]/(t-a)^q` at each root `a` of the
//! Alexander polynomial. This crate computes that splitting by two
//! independent routes:
//!
//! * a filtration of twisted-equivariance solution spaces, level by level,
//!   whose dimension drops recover the exponent multiset `{q_i}` and certify
//!   explicit triangular (metabelian) representations, and
//! * a Smith-normal-form oracle over `Q[t]` that reads the exponents straight
//!   off the invariant factors.
//!
//! All arithmetic is exact: arbitrary-precision rationals, dense univariate
//! polynomials, and quotient rings `Q[x]/(f)` with dynamic splitting when a
//! squarefree but reducible modulus exposes a zero divisor.

pub mod corpus;
pub mod linalg;
pub mod metabelian;
pub mod numfield;
pub mod obstruction;
pub mod poly;
pub mod seifert;
pub mod snf;

pub use linalg::Mat;
pub use metabelian::{HomCheck, Laurent, MetabelianElement, RepBuilder, RepMatrix};
pub use numfield::{NFElement, NumberField, SplitEvent};
pub use obstruction::{
    Decomposition, FiltrationBranch, KnotFiltration, LevelRecord, ObstructionSystem, Provenance,
    RootClassFiltration,
};
pub use poly::{Poly, Rat};
pub use seifert::{AlexanderPresentation, NormalizedAlexanderPoly, RootClassSet, SeifertData};
pub use snf::InvariantFactors;
