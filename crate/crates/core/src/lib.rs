//! Global transfer systems on finite truncations of families of groups.
//!
//! The crate builds finite registries of groups (one representative per
//! isomorphism class, closed under subgroups), computes their complete
//! homomorphism catalogues, and works with transfer systems on them: closure
//! under the pullback and transitivity rules, lattice operations, the
//! restriction and right-adjoint change-of-family functors, and the
//! classification of all systems by generalized prime factorizations.
//!
//! Module map:
//!
//! - [`groups`]: exact finite group arithmetic (abelian groups in primary
//!   decomposition, Cayley tables, subgroups, homomorphisms, quotients).
//! - [`families`]: truncated families with their subgroup tables and hom
//!   catalogues.
//! - [`transfer`]: the [`TransferSystem`] type, the closure engine and JSON.
//! - [`functors`]: restriction, right adjoint, prime splitting and merging.
//! - [`classify`]: enumeration, labels, theorem checks, Hasse diagrams.
//! - [`pair`]: the `H : generators` pair syntax used by the CLI.

pub mod arith;
pub mod classify;
pub mod families;
pub mod functors;
pub mod groups;
pub mod pair;
pub mod parse;
pub mod transfer;

pub use classify::{Exponent, GeneralizedFactorization};
pub use families::{Family, FamilySpec};
pub use groups::{ElementSet, FinAbGroup, FiniteGroup, Group, Homomorphism, Limits, Subgroup};
pub use transfer::TransferSystem;
