//! Finite pre-semifields and semifields over GF(p), their isotopism
//! classification at small orders, and the ultraspecial p-groups G(F) built
//! from them: construction, structural checkers, abelian-subgroup censuses,
//! and exact character-table invariants.
//!
//! Everything is exact arithmetic over GF(p); there is no floating point in
//! the crate.

pub mod classify;
pub mod gfp;
pub mod semifield;
pub mod sfgroup;
pub mod verify;

pub use gfp::{FpMatrix, FpVector, Subspace};
pub use semifield::{PreSemifield, Semifield};
pub use sfgroup::SemifieldGroup;
