//! The connecting maps `Γ_{n+1,n}` and the stage actions, evaluated at
//! sample points.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Identification};
use crate::stages::{bott_projection, ConstructionPlan, MatFunc, StagePoint};

/// `c_f(x) = φ(θ(w) ⊗ 1) · ψ(1_ν ⊗ f(x)) · φ(θ(w*) ⊗ 1)`.
pub fn corner_block(plan: &ConstructionPlan, n: usize, value: &ExactMatrix) -> Result<ExactMatrix> {
    let nu = plan.nu();
    let dim = plan.materializable_dim(n)?;
    if value.rows() != dim {
        return Err(Error::Dimension(format!("stage-{n} value has size {}, expected {dim}", value.rows())));
    }
    let r = dim / nu;
    let inner = Identification::psi(nu, r).apply_pair(&ExactMatrix::identity(nu), value)?;
    Ok(plan.corner_permutation(n)?.conjugate(&inner))
}

fn d_next(plan: &ConstructionPlan, n: usize) -> Result<usize> {
    if n >= plan.stage_count() {
        return Err(Error::OutOfRange(format!(
            "stage {} is beyond the plan's {} stages",
            n + 1,
            plan.stage_count()
        )));
    }
    plan.ledger()
        .d(n + 1)
        .to_usize()
        .ok_or_else(|| Error::OutOfRange(format!("d({}) too large", n + 1)))
}

/// Evaluates `Γ_{n+1,n}(f)` at each target point of `X_{n+1}`: the
/// `d(n+1)` pullbacks `f ∘ P_j` followed by the corner `c_f(x_n)`.
pub fn gamma_step(f: &MatFunc, plan: &ConstructionPlan, targets: &[StagePoint]) -> Result<MatFunc> {
    let n = f.stage();
    let d = d_next(plan, n)?;
    let out_dim = plan.materializable_dim(n + 1)?;
    let in_dim = plan.materializable_dim(n)?;
    if f.dim() != in_dim {
        return Err(Error::Dimension(format!("stage-{n} function has fiber {}, expected {in_dim}", f.dim())));
    }
    let chunk = plan.sphere_count(n)?;
    let base = plan
        .base_point(n)
        .ok_or_else(|| Error::MissingPoint(format!("no base point for stage {n}")))?;
    let corner = corner_block(plan, n, f.eval(base)?)?;

    let mut out = MatFunc::new(n + 1, out_dim);
    for x in targets {
        if x.stage() != n + 1 || x.coords().len() != chunk * d {
            return Err(Error::Dimension(format!(
                "target has stage {} and {} coordinates, expected stage {} and {}",
                x.stage(),
                x.coords().len(),
                n + 1,
                chunk * d
            )));
        }
        let pulled: Vec<&ExactMatrix> = (0..d).map(|j| f.eval(&x.project(j, chunk))).collect::<Result<_>>()?;
        let mut blocks = pulled;
        blocks.push(&corner);
        let value = ExactMatrix::direct_sum(&blocks);
        if value.rows() != out_dim {
            return Err(Error::Inconsistent(format!(
                "Γ output has size {}, ledger says {out_dim}",
                value.rows()
            )));
        }
        out.insert(x.clone(), value)?;
    }
    Ok(out)
}

/// `α^{(n)}_g(f) = Ad(σ_{r(n)}(z_g ⊗ 1_{r(n)})) ∘ f`.
pub fn act(g: usize, f: &MatFunc, plan: &ConstructionPlan) -> Result<MatFunc> {
    let u = plan.action_permutation(g, f.stage())?;
    if u.len() != f.dim() {
        return Err(Error::Dimension(format!("fiber {} does not match stage {}", f.dim(), f.stage())));
    }
    Ok(f.map(|v| u.conjugate(v)))
}

/// Points of `X_n` at which a stage-`n` function must be known to evaluate
/// `Γ_{n+1,n}` at `targets`: all coordinate projections plus `x_n`.
pub fn required_points(plan: &ConstructionPlan, n: usize, targets: &[StagePoint]) -> Result<BTreeSet<StagePoint>> {
    let d = d_next(plan, n)?;
    let chunk = plan.sphere_count(n)?;
    let mut pts: BTreeSet<StagePoint> = targets
        .iter()
        .flat_map(|x| (0..d).map(move |j| x.project(j, chunk)))
        .collect();
    let base = plan
        .base_point(n)
        .ok_or_else(|| Error::MissingPoint(format!("no base point for stage {n}")))?;
    pts.insert(base.clone());
    Ok(pts)
}

/// `Γ_{n,0}(f₀)` at `targets`, where `f₀` is produced on demand at the
/// stage-0 points the iteration needs.
pub fn push_forward(
    plan: &ConstructionPlan,
    n: usize,
    targets: &[StagePoint],
    stage0: impl Fn(&StagePoint) -> Result<ExactMatrix>,
) -> Result<MatFunc> {
    // needed[k] = points of X_k required to produce the stage-n targets
    let mut needed: Vec<Vec<StagePoint>> = vec![Vec::new(); n + 1];
    needed[n] = targets.to_vec();
    for k in (0..n).rev() {
        needed[k] = required_points(plan, k, &needed[k + 1])?.into_iter().collect();
    }
    let dim0 = plan.materializable_dim(0)?;
    let mut f = MatFunc::from_fn(0, dim0, &needed[0], &stage0)?;
    for k in 0..n {
        f = gamma_step(&f, plan, &needed[k + 1])?;
    }
    Ok(f)
}

/// `p_n = Γ_{n,0}(p)` at `targets`, where `p` is the (padded) Bott projection.
pub fn bott_at_stage(plan: &ConstructionPlan, n: usize, targets: &[StagePoint]) -> Result<MatFunc> {
    let nu = plan.nu();
    push_forward(plan, n, targets, |pt| bott_projection(&pt.coords()[0], nu))
}
