//! The enveloping algebra `U(g)` in PBW normal form.
//!
//! Elements are finite sums of sorted monomials with exact coefficients. The
//! [`Enveloping`] engine owns the Lie algebra and performs every operation that
//! needs the bracket (normalization, products, antipode); the element types
//! here are plain data.

mod element;
mod engine;
mod series;

pub use element::{Monomial, TensorElement, UeaElement};
pub use engine::{Enveloping, DEFAULT_TRUNC};
pub use series::Series;

pub(crate) use engine::{accumulate, cached, collect, Linear};
