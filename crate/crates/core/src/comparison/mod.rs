//! Rank-based Cuntz comparison in finite dimensions, bound tables for the
//! radius of comparison, the non-comparison certificate and the unit-scalar
//! approximation of almost central normal elements.

mod approx;
mod certificate;
mod rank;
mod table;

pub use approx::{scalar_approximation, ScalarApproximation, Witness};
pub use certificate::{find_certificate, rank_inequalities, search_certificate, ComparisonCertificate, RankInequality, BIG_RANK_ASSUMPTION};
pub use rank::{
    cuntz_leq_fd, d_tau, d_tau_matrix, pointwise_rank_condition, NecessaryCheck, RankVector, NECESSARY_ONLY,
};
pub use table::{rc_upper_table, RcRow, RcTable, TABLE_NOTE};
