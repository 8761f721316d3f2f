//! Exact-arithmetic root systems, Weyl groups, adjoint Chevalley operators,
//! and a fully enumerable symplectic strata model.
//!
//! Everything is computed over the integers, the rationals, or a prime
//! field — never floating point — so every reported number is exact and
//! every run is reproducible.

pub mod adjoint;
pub mod b2model;
pub mod cache;
pub mod cartan;
pub mod error;
pub mod linalg;
pub mod roots;
pub mod verification;
pub mod weyl;

pub use adjoint::{AdjointModule, AdjointOperator};
pub use cache::Cache;
pub use cartan::{CartanDatum, LieType};
pub use error::{Error, Result};
pub use roots::RootSystem;
pub use weyl::WeylGroup;

/// Default seed for every sampling operation that does not receive one.
pub const DEFAULT_SEED: u64 = 0xD1CE_5EED;
