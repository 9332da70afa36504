//! Exact arithmetic and symbolic dynamics for the cubic Arnoux-Yoccoz
//! scale-invariant interval exchange and its scaling shift γ.

pub mod error;
pub mod field;
pub mod iet;
pub mod coding;
pub mod cycles;
pub mod format;
pub mod numeric;
pub mod order;

pub use error::{Error, Result};
pub use field::{FieldElement, IntTriple, Rational, ResidueElement};
