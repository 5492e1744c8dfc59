use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupInvariants;
use crate::scalar::{self, serde_str};
use crate::seq::StageLedger;

pub const TABLE_NOTE: &str = "finite-stage upper bounds under the canonical trace; not rc computations";

#[derive(Debug, Clone, Serialize)]
pub struct RcRow {
    pub stage: usize,
    #[serde(with = "serde_str::bigint")]
    pub dim_x: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub fiber: BigInt,
    /// `s(n) / (ν r(n))`
    #[serde(with = "serde_str::rational")]
    pub algebra_bound: BigRational,
    /// `max_j s(n) / (t(j) ν r(n))` over the irreducible dimensions `t(j)`.
    #[serde(with = "serde_str::rational")]
    pub crossed_bound: BigRational,
    #[serde(with = "serde_str::rational")]
    pub gap: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct RcTable {
    pub note: &'static str,
    pub nu: u64,
    #[serde(with = "serde_str::rational")]
    pub eta: BigRational,
    pub irrep_dims: Vec<usize>,
    pub rows: Vec<RcRow>,
}

impl RcTable {
    /// First stage whose gap to `η` is below `tol`.
    pub fn first_stage_within(&self, tol: f64) -> Option<usize> {
        self.rows.iter().find(|r| scalar::to_f64(&r.gap) < tol).map(|r| r.stage)
    }

    pub fn columns_coincide(&self) -> bool {
        self.rows.iter().all(|r| r.algebra_bound == r.crossed_bound)
    }

    pub fn strictly_decreasing_above_eta(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].algebra_bound < w[0].algebra_bound)
            && self.rows.iter().all(|r| r.algebra_bound > self.eta)
    }
}

/// Bound table for stages `1..=ledger.len()`.
pub fn rc_upper_table(ledger: &StageLedger, invariants: &GroupInvariants) -> Result<RcTable> {
    let nu = ledger.m;
    invariants.check(nu as usize).map_err(|e| Error::Inconsistent(format!("invariants do not match the ledger: {e}")))?;
    let nu_big = BigInt::from(nu);
    let eta = &ledger.target / BigRational::from_integer(nu_big.clone());
    let rows = (1..=ledger.len())
        .map(|n| {
            let (s, r) = (ledger.s(n), ledger.r(n));
            let fiber = &nu_big * &r;
            let algebra_bound = BigRational::new(s.clone(), fiber.clone());
            let crossed_bound = invariants
                .irrep_dims
                .iter()
                .map(|&t| BigRational::new(s.clone(), &fiber * BigInt::from(t)))
                .max()
                .expect("a group has at least one irreducible representation");
            RcRow {
                stage: n,
                dim_x: BigInt::from(2) * &s,
                gap: &algebra_bound - &eta,
                fiber,
                algebra_bound,
                crossed_bound,
            }
        })
        .collect();
    Ok(RcTable {
        note: TABLE_NOTE,
        nu,
        eta,
        irrep_dims: invariants.irrep_dims.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn z2() -> GroupInvariants {
        GroupInvariants {
            conjugacy_class_count: 2,
            abelianization_order: 2,
            irrep_dims: vec![1, 1],
        }
    }

    #[test]
    fn z2_quarter_bounds() {
        let ledger = StageLedger::generate(2, &rat(1, 2), 3).unwrap();
        let t = rc_upper_table(&ledger, &z2()).unwrap();
        let bounds: Vec<_> = t.rows.iter().map(|r| r.algebra_bound.clone()).collect();
        assert_eq!(bounds, vec![rat(3, 10), rat(33, 130), rat(4323, 17290)]);
        assert!(t.columns_coincide());
        assert!(t.strictly_decreasing_above_eta());
        assert_eq!(t.rows[2].gap, rat(1, 34580));
    }

    #[test]
    fn mismatched_group_rejected() {
        let ledger = StageLedger::generate(3, &rat(1, 2), 2).unwrap();
        assert!(rc_upper_table(&ledger, &z2()).is_err());
    }
}
