//! Exact linear algebra over the Gaussian rationals.

pub mod echelon;
mod fell;
mod identify;
mod matrix;
mod perm;
pub mod spectral;

pub use echelon::exact_rank;
pub use fell::{fell_absorption_permutation, fell_absorption_unitary, verify_fell_absorption};
pub use identify::{IdentKind, Identification};
pub use matrix::{ExactMatrix, DEFAULT_CAP};
pub use perm::Permutation;
pub use spectral::{approx_rank, cut_down, cut_down_spectrum, is_positive_semidefinite, CutDown};
