//! Finite groups, their regular representation and representation-theoretic
//! invariants.

mod families;
mod invariants;
mod rep;
mod table;

pub use families::{
    build_group, Cyclic, Dihedral, FamilyRegistry, GroupFamily, Quaternion, Symmetric, MAX_BUILD_ORDER,
};
pub use invariants::{
    commutator_subgroup, conjugacy_classes, group_invariants, irrep_dimensions, irrep_dimensions_with,
    GroupInvariants, DEFAULT_CLUSTER_TOL, DEFAULT_ORDER_CAP, DEFAULT_RETRIES,
};
pub use rep::{regular_permutations, regular_representation, UnitaryRep};
pub use table::{GroupTable, TableDocument, TableEntry};

/// Group specs exercised by the verification suite.
pub const STANDARD_GROUPS: [&str; 7] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8"];
