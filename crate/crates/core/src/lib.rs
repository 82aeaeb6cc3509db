//! Square-free monomial ideals, perfect sets and f-ideals.
//!
//! A square-free monomial ideal `I` is an f-ideal when its facet complex
//! `δ_F(I)` and its Stanley–Reisner complex `δ_N(I)` have the same f-vector.
//! For ideals generated in one degree `d` this reduces to a covering
//! condition on `G(I)` (perfection) plus `|G(I)| = C(n, d) / 2`.
//!
//! Modules:
//! - [`monomial`]: monomials as bitmask supports, layers, products
//! - [`perfect`]: upper/lower perfection and the relative variants
//! - [`complex`]: facet-list complexes, f-vectors, Alexander duals
//! - [`ideal`]: ideals, their two complexes, f-ideal and unmixedness tests
//! - [`construct`]: constructions of perfect sets and f-ideals
//! - [`search`]: exact perfect numbers by branch and bound
//! - [`format`]: text formats for monomial sets and complexes

pub mod complex;
pub mod construct;
pub mod error;
pub mod format;
pub mod golden;
pub mod ideal;
pub mod monomial;
pub mod perfect;
pub mod search;

pub use complex::{FVector, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use ideal::{Ideal, UnmixedMethod};
pub use monomial::{Monomial, MonomialSet, Restriction, MAX_VARS};
pub use perfect::{Direction, PerfectVerdict};
