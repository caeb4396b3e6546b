//! Exact computer algebra for post-Lie algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite-dimensional Lie algebras over the rationals, linear
//!   endomorphisms, classical r-matrices and post-Lie products, with exhaustive
//!   axiom checks.
//! * [`uea`]: the enveloping algebra `U(g)` in PBW normal form together with its
//!   standard Hopf structure and t-graded exponential/logarithm series.
//! * [`lift`]: the post-Lie product lifted to `U(g)` and the associated
//!   `*`-product and antipode.
//! * [`partition`]: set partitions and the isomorphism `phi` between the
//!   enveloping algebra of the second bracket and `(U(g), *)`.
//! * [`magnus`]: the post-Lie Magnus expansion and the identities it satisfies.
//! * [`factor`]: the r-matrix map `F`, the alternative `*`-formulas and the
//!   factorization of group-like elements.
//! * [`numeric`]: the floating-point matrix check of the factorization.
//! * [`verify`]: the aggregated identity suite used by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod exec;
pub mod factor;
pub mod lift;
pub mod magnus;
pub mod numeric;
pub mod partition;
pub mod scalar;
pub mod uea;
pub mod verify;

pub use algebra::{
    GVector, LieAlgebra, LinearEndo, PostLieAlgebra, PostLieProduct, Provenance, Report,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use factor::RMatrixSetting;
pub use lift::Lifted;
pub use magnus::MagnusSeries;
pub use partition::SetPartition;
pub use scalar::Scalar;
pub use uea::{Enveloping, Monomial, Series, TensorElement, UeaElement};
