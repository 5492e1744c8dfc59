//! Finite stages of the inductive system: sample points of `X_n`, the
//! connecting maps, the group action and the iterated Bott projection.
//!
//! Stages are evaluated in two tiers. The integer ledger covers every stage;
//! matrices are materialized only while the fiber dimension `ν·r(n)` stays
//! under the plan's cap.

mod gamma;
mod matfunc;
mod plan;
mod sphere;
mod verify;

pub use gamma::{act, bott_at_stage, corner_block, gamma_step, push_forward, required_points};
pub use matfunc::{random_gaussian_matrix, MatFunc};
pub use plan::{build_construction, ConstructionPlan, PlanSummary, StagePoint, StageSummary};
pub use sphere::{bott_projection, SpherePoint};
pub use verify::{
    check_equivariance, constant_rank_recursion, outerness_gap, rank_ledger, reduction_identity_holds,
    EquivarianceVerdict, Mismatch, OuternessGap, RankLedgerEntry, RankLedgerReport, RankSpotCheck,
    EQUIVARIANCE_TARGETS,
};
