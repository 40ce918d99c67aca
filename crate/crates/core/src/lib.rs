//! Exact construction and verification of Krawtchouk-Griffiths systems.
//!
//! Everything is computed over the Gaussian rationals Q(i) with
//! arbitrary-precision integers, so every identity is checked by exact
//! equality:
//!
//! - [`sympow`]: symmetric tensor powers `Ā`, the multinomial diagonal `B`,
//!   and the Lie-algebra map `Γ`.
//! - [`kg_system`]: the K-condition `A* p A = D`, Krawtchouk matrices
//!   `Φ = Ā*`, orthogonality, and recurrence/spectrum pairs.
//! - [`reflection`]: systems generated by unitary reflections.
//! - [`oracle`]: a slow, independent expansion engine used for cross-checks.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod kg_system;
pub mod matrix;
pub mod multiindex;
pub mod oracle;
pub mod reflection;
pub mod report;
pub mod scalar;
pub mod sympow;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
pub use kg_system::{
    classical_binomial, higher_recurrences, infer_weights, krawtchouk, quantum_variables, recurrence_identity,
    verify_k_condition, verify_orthogonality, ClassicalBinomial, KgSystem, KrawtchoukDegree, RecSpec,
};
pub use matrix::{ExactMatrix, Matrix};
pub use multiindex::{multinomial, IndexTable, MultiIndex, DEFAULT_GUARD};
pub use reflection::{kg_from_reflection, reflection_from_vector, verify_reflection_properties, ReflectionSystem};
pub use report::{Check, Report};
pub use scalar::{GaussianRational, Rational, Ring, UniPoly};
pub use sympow::{bar, bar_incremental, gamma, multinomial_diag, sym_trace, Conjugation};
