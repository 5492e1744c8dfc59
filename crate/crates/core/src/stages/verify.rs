use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{exact_rank, ExactMatrix, Permutation};
use crate::scalar::{self, serde_str};
use crate::stages::{act, bott_at_stage, gamma_step, required_points, ConstructionPlan, MatFunc, StagePoint};

/// Target points of `X_{n+1}` sampled per equivariance trial batch.
pub const EQUIVARIANCE_TARGETS: usize = 2;

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub group_element: String,
    pub trial: usize,
    pub point: usize,
    pub entry: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivarianceVerdict {
    pub stage: usize,
    pub trials: usize,
    pub seed: u64,
    pub group_elements: usize,
    pub points_per_trial: usize,
    pub comparisons: usize,
    pub reduction_identity_holds: bool,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

/// `(1 ⊗ z_g*) w* (z_g ⊗ 1) w = z_g ⊗ 1` with full matrix products.
pub fn reduction_identity_holds(plan: &ConstructionPlan, g: usize) -> Result<bool> {
    let nu = plan.nu();
    let one = Permutation::identity(nu);
    let z = plan.z(g);
    let w = plan.w().to_matrix();
    let z_one = z.kron(&one).to_matrix();
    let one_z_star = one.kron(&z.inverse()).to_matrix();
    let lhs = &(&(&one_z_star * &w.adjoint()) * &z_one) * &w;
    Ok(lhs == z_one)
}

/// Checks `Γ_{n+1,n} ∘ α^{(n)}_g = α^{(n+1)}_g ∘ Γ_{n+1,n}` entrywise on
/// random Gaussian-integer functions, for every group element.
pub fn check_equivariance(plan: &ConstructionPlan, n: usize, trials: usize, seed: u64) -> Result<EquivarianceVerdict> {
    plan.materializable_dim(n + 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu = plan.nu();
    let dim = plan.materializable_dim(n)?;
    let mut mismatches = Vec::new();
    let mut comparisons = 0;

    let mut reduction = true;
    for g in 0..nu {
        reduction &= reduction_identity_holds(plan, g)?;
    }

    for trial in 0..trials {
        let targets: Vec<StagePoint> = (0..EQUIVARIANCE_TARGETS)
            .map(|_| plan.random_point(n + 1, &mut rng))
            .collect::<Result<_>>()?;
        let support = required_points(plan, n, &targets)?;
        let f = MatFunc::random(n, dim, &support, &mut rng)?;
        let gamma_f = gamma_step(&f, plan, &targets)?;
        for g in 0..nu {
            let lhs = gamma_step(&act(g, &f, plan)?, plan, &targets)?;
            let rhs = act(g, &gamma_f, plan)?;
            for (k, x) in targets.iter().enumerate() {
                comparisons += 1;
                if let Some(entry) = lhs.eval(x)?.first_difference(rhs.eval(x)?) {
                    mismatches.push(Mismatch {
                        group_element: plan.group().label(g).to_string(),
                        trial,
                        point: k,
                        entry,
                    });
                }
            }
        }
    }
    Ok(EquivarianceVerdict {
        stage: n,
        trials,
        seed,
        group_elements: nu,
        points_per_trial: EQUIVARIANCE_TARGETS,
        comparisons,
        reduction_identity_holds: reduction,
        passed: reduction && mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RankLedgerEntry {
    pub stage: usize,
    /// Rank-one Bott pullback blocks, `s(n)`.
    #[serde(with = "serde_str::bigint")]
    pub bott_block_count: BigInt,
    /// Rank of the constant part, from the recursion.
    #[serde(with = "serde_str::bigint")]
    pub constant_rank: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub total_rank: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub fiber_dim: BigInt,
    #[serde(with = "serde_str::rational")]
    pub normalized_trace: BigRational,
    /// `constant_rank = r(n) − s(n)`.
    pub closed_form_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankSpotCheck {
    pub stage: usize,
    pub points: usize,
    pub ranks: Vec<usize>,
    /// `rank − s(n)` at each point.
    pub constant_ranks: Vec<usize>,
    #[serde(with = "serde_str::rational_vec")]
    pub normalized_traces: Vec<BigRational>,
    pub all_projections: bool,
    pub matches_ledger: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankLedgerReport {
    pub entries: Vec<RankLedgerEntry>,
    pub spot_checks: Vec<RankSpotCheck>,
    /// Stages whose fiber exceeds the matrix cap.
    pub skipped_stages: Vec<usize>,
}

/// Recursion for the constant rank of `p_n`:
/// `c(n+1) = [r(n) − s(n)]·d(n+1) + ν[r(n) − s(n)] + ν·s(n)`, `c(0) = 0`.
pub fn constant_rank_recursion(plan: &ConstructionPlan, up_to: usize) -> Vec<BigInt> {
    let ledger = plan.ledger();
    let nu = BigInt::from(plan.nu());
    let mut c = vec![BigInt::zero()];
    for n in 0..up_to {
        let diff = ledger.r(n) - ledger.s(n);
        c.push(&diff * ledger.d(n + 1) + &nu * &diff + &nu * ledger.s(n));
    }
    c
}

/// Rank/trace ledger of the iterated Bott projection, with exact spot checks
/// of materialized `p_n` at `points_per_stage` random points wherever the
/// fiber fits under the cap.
pub fn rank_ledger(plan: &ConstructionPlan, up_to_stage: usize, points_per_stage: usize, seed: u64) -> Result<RankLedgerReport> {
    let up_to = up_to_stage.min(plan.stage_count());
    let ledger = plan.ledger();
    let nu = BigInt::from(plan.nu());
    let constant = constant_rank_recursion(plan, up_to);
    let mut entries = Vec::new();
    for (n, c) in constant.iter().enumerate() {
        let s = ledger.s(n);
        let total = &s + c;
        let fiber = &nu * ledger.r(n);
        entries.push(RankLedgerEntry {
            stage: n,
            closed_form_agrees: *c == ledger.r(n) - &s,
            bott_block_count: s,
            constant_rank: c.clone(),
            normalized_trace: BigRational::new(total.clone(), fiber.clone()),
            total_rank: total,
            fiber_dim: fiber,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spot_checks = Vec::new();
    let mut skipped_stages = Vec::new();
    for n in 0..=up_to {
        if !plan.is_materializable(n) {
            skipped_stages.push(n);
            continue;
        }
        let targets: Vec<StagePoint> = (0..points_per_stage)
            .map(|_| plan.random_point(n, &mut rng))
            .collect::<Result<_>>()?;
        let p = bott_at_stage(plan, n, &targets)?;
        let entry = &entries[n];
        let s = plan.sphere_count(n)?;
        let dim = plan.materializable_dim(n)?;
        let mut check = RankSpotCheck {
            stage: n,
            points: targets.len(),
            ranks: Vec::new(),
            constant_ranks: Vec::new(),
            normalized_traces: Vec::new(),
            all_projections: true,
            matches_ledger: true,
        };
        for x in &targets {
            let v = p.eval(x)?;
            let rank = exact_rank(v);
            let trace = v.trace();
            let normalized = &trace.re / BigRational::from_integer(BigInt::from(dim));
            check.all_projections &= v.is_projection();
            check.matches_ledger &= BigInt::from(rank) == entry.total_rank
                && BigInt::from(rank.saturating_sub(s)) == entry.constant_rank
                && trace.im.is_zero()
                && normalized == entry.normalized_trace;
            check.ranks.push(rank);
            check.constant_ranks.push(rank.saturating_sub(s));
            check.normalized_traces.push(normalized);
        }
        if !(check.all_projections && check.matches_ledger) {
            return Err(Error::Inconsistent(format!(
                "materialized p_{n} disagrees with the rank ledger: ranks {:?}, ledger {}",
                check.ranks, entry.total_rank
            )));
        }
        spot_checks.push(check);
    }
    Ok(RankLedgerReport {
        entries,
        spot_checks,
        skipped_stages,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OuternessGap {
    pub group_element: String,
    /// `‖w(e_{1,1} ⊗ 1)w* − w(e_{g,g} ⊗ 1)w*‖`
    #[serde(with = "serde_str::rational")]
    pub norm: BigRational,
    /// Numerical cross-check of the exact value.
    pub norm_float: f64,
}

/// The difference `D` of the two conjugated rank-`ν` projections is exactly
/// computed; `D²` being a nonzero projection certifies `‖D‖ = 1`.
pub fn outerness_gap(plan: &ConstructionPlan, g: usize) -> Result<OuternessGap> {
    if g == plan.group().identity() {
        return Err(Error::OutOfRange("outerness gap needs a non-identity element".into()));
    }
    let nu = plan.nu();
    let unit = |k: usize| {
        let mut e = ExactMatrix::zeros(nu, nu);
        e.set(k, k, scalar::one());
        e.kron_with_cap(&ExactMatrix::identity(nu), usize::MAX)
    };
    let w = plan.w();
    let diff = &w.conjugate(&unit(0)?) - &w.conjugate(&unit(g)?);
    let sq = &diff * &diff;
    if !diff.is_hermitian() || sq.is_zero() || !sq.is_projection() {
        return Err(Error::Inconsistent(format!(
            "difference for {} is not a difference of orthogonal projections",
            plan.group().label(g)
        )));
    }
    Ok(OuternessGap {
        group_element: plan.group().label(g).to_string(),
        norm: BigRational::one(),
        norm_float: crate::linalg::spectral::operator_norm(&diff.to_c64()),
    })
}
