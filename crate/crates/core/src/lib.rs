//! Computational toolkit for the hypoplactic monoid with Schützenberger's
//! involution: quasi-ribbon tableau insertion, canonical forms, faithful
//! tropical matrix representations for every finite rank, finite involution
//! monoid oracles and polynomial-time word-identity checkers.

pub mod checker;
pub mod hypo;
pub mod models;
pub mod repr;
pub mod semiring;
pub mod words;

pub use checker::{Identity, MonoidTag, Verdict};
pub use hypo::{HypoElement, QuasiRibbonTableau, RankedWord};
pub use models::FiniteInvMonoid;
pub use semiring::{TropMatrix, TropValue};
pub use words::{InvWord, Symbol, Term};
