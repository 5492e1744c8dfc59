//! Exact finite-stage model of a simple AH algebra carrying an approximately
//! inner action of a finite group, together with the crossed-product and
//! Cuntz-comparison arithmetic needed to audit it.
//!
//! The pipeline runs bottom-up:
//!
//! * [`group`]: finite groups, the left regular representation and
//!   irreducible-representation dimensions.
//! * [`linalg`]: exact Gaussian-rational matrices, tensor identifications
//!   and the Fell absorption unitary.
//! * [`seq`]: the greedy dimension sequence and its stage ledger.
//! * [`stages`]: sample-point evaluation of the connecting maps, the group
//!   action and the iterated Bott projection.
//! * [`crossed`]: finite-dimensional crossed products by inner actions.
//! * [`comparison`]: rank-based comparison, bound tables and
//!   non-comparison certificates.
//! * [`checks`]: named verification checks behind a common trait.

pub mod checks;
pub mod comparison;
pub mod crossed;
pub mod error;
pub mod group;
pub mod linalg;
pub mod scalar;
pub mod seq;
pub mod stages;

pub use error::{Error, Result};
