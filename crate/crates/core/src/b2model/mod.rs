//! A fully enumerable finite model for the rank-2 symplectic geometry:
//! the group of form-preserving 4×4 matrices over F_q (q ∈ {2, 3, 5}),
//! its central quotient, conjugacy classes with exact dimensions,
//! isotropic flags, Weyl-valued relative position, and the strata that
//! relative position cuts out of the class set.

pub mod ext;
pub mod flags;
pub mod fp4;
pub mod group;
pub mod strata;

pub use flags::{B2Bridge, Flag, FlagSet, StratumLabel};
pub use group::{ClassSignature, GroupClass, GroupModel};
pub use strata::{cross_field_dimension_report, StrataDocument, StrataModel, StratumRecord};
