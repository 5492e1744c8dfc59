use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{regular_permutations, GroupTable};
use crate::linalg::{fell_absorption_permutation, verify_fell_absorption, Identification, Permutation};
use crate::scalar::{self, serde_str};
use crate::seq::{generate_stages, StageLedger};
use crate::stages::SpherePoint;

/// A point of `X_n = (S²)^{s(n)}`.
///
/// A point of `X_{n+1}` is the concatenation of `d(n+1)` points of `X_n`, so
/// the coordinate projections are slices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StagePoint {
    stage: usize,
    coords: Vec<SpherePoint>,
}

impl StagePoint {
    pub fn new(stage: usize, coords: Vec<SpherePoint>) -> Self {
        Self { stage, coords }
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn coords(&self) -> &[SpherePoint] {
        &self.coords
    }

    /// The `j`-th (0-based) coordinate projection to `X_{stage−1}`, whose
    /// points have `chunk = s(stage−1)` sphere coordinates.
    pub fn project(&self, j: usize, chunk: usize) -> StagePoint {
        StagePoint {
            stage: self.stage - 1,
            coords: self.coords[j * chunk..(j + 1) * chunk].to_vec(),
        }
    }

    pub fn random(stage: usize, sphere_count: usize, rng: &mut impl Rng) -> Self {
        Self {
            stage,
            coords: (0..sphere_count).map(|_| SpherePoint::random(rng)).collect(),
        }
    }
}

/// Everything needed to evaluate the stages of the construction for one
/// group and one target radius `η`.
#[derive(Debug, Clone)]
pub struct ConstructionPlan {
    group: GroupTable,
    eta: BigRational,
    ledger: StageLedger,
    w: Permutation,
    z: Vec<Permutation>,
    base_points: Vec<Option<StagePoint>>,
    matrix_cap: usize,
    seed: u64,
}

pub fn build_construction(
    group: &GroupTable,
    eta: &BigRational,
    stage_count: usize,
    matrix_cap: usize,
    seed: u64,
) -> Result<ConstructionPlan> {
    ConstructionPlan::new(group, eta, stage_count, matrix_cap, seed)
}

impl ConstructionPlan {
    pub fn new(group: &GroupTable, eta: &BigRational, stage_count: usize, matrix_cap: usize, seed: u64) -> Result<Self> {
        let nu = group.order();
        let nu_big = BigRational::from_integer(BigInt::from(nu));
        if !eta.is_positive() || eta * &nu_big >= scalar::int(1) {
            return Err(Error::OutOfRange(format!(
                "eta = {} must lie in (0, 1/{nu})",
                scalar::fmt_rational(eta)
            )));
        }
        let ledger = generate_stages(nu as u64, &(eta * &nu_big), stage_count)?;
        let first_fiber = BigInt::from(nu) * ledger.r(1);
        if BigInt::from(matrix_cap) < first_fiber {
            return Err(Error::OutOfRange(format!(
                "matrix cap {matrix_cap} is below the stage-1 fiber dimension {first_fiber}"
            )));
        }
        let w = fell_absorption_permutation(group);
        verify_fell_absorption(group, &w)?;

        // x_n is drawn only where the step n -> n+1 can be materialized.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base_points = (0..stage_count)
            .map(|n| {
                let out_fiber = BigInt::from(nu) * ledger.r(n + 1);
                if out_fiber > BigInt::from(matrix_cap) {
                    return None;
                }
                let sphere_count = ledger.s(n).to_usize()?;
                Some(StagePoint::random(n, sphere_count, &mut rng))
            })
            .collect();
        Ok(Self {
            group: group.clone(),
            eta: eta.clone(),
            ledger,
            w,
            z: regular_permutations(group),
            base_points,
            matrix_cap,
            seed,
        })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn nu(&self) -> usize {
        self.group.order()
    }

    pub fn eta(&self) -> &BigRational {
        &self.eta
    }

    pub fn ledger(&self) -> &StageLedger {
        &self.ledger
    }

    pub fn stage_count(&self) -> usize {
        self.ledger.len()
    }

    pub fn matrix_cap(&self) -> usize {
        self.matrix_cap
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fell absorption unitary in standard Kronecker layout.
    pub fn w(&self) -> &Permutation {
        &self.w
    }

    /// Left regular representation `z_g` as permutations.
    pub fn z(&self, g: usize) -> &Permutation {
        &self.z[g]
    }

    pub fn base_point(&self, n: usize) -> Option<&StagePoint> {
        self.base_points.get(n).and_then(Option::as_ref)
    }

    /// `ν·r(n)`, the matrix size of `A_n`.
    pub fn fiber_dim(&self, n: usize) -> BigInt {
        BigInt::from(self.nu()) * self.ledger.r(n)
    }

    /// Fiber dimension when it fits under the matrix cap.
    pub fn materializable_dim(&self, n: usize) -> Result<usize> {
        let dim = self.fiber_dim(n);
        match dim.to_usize() {
            Some(d) if d <= self.matrix_cap => Ok(d),
            _ => Err(Error::SizeCap {
                rows: dim.to_usize().unwrap_or(usize::MAX),
                cols: dim.to_usize().unwrap_or(usize::MAX),
                cap: self.matrix_cap,
            }),
        }
    }

    pub fn is_materializable(&self, n: usize) -> bool {
        n <= self.stage_count() && self.materializable_dim(n).is_ok()
    }

    /// Number of sphere coordinates of a point of `X_n`.
    pub fn sphere_count(&self, n: usize) -> Result<usize> {
        self.ledger
            .s(n)
            .to_usize()
            .ok_or_else(|| Error::OutOfRange(format!("s({n}) does not fit in memory")))
    }

    pub fn random_point(&self, n: usize, rng: &mut impl Rng) -> Result<StagePoint> {
        Ok(StagePoint::random(n, self.sphere_count(n)?, rng))
    }

    /// The stage-`n` action unitary `σ_{r(n)}(z_g ⊗ 1_{r(n)})`.
    pub fn action_permutation(&self, g: usize, n: usize) -> Result<Permutation> {
        let dim = self.materializable_dim(n)?;
        let r = dim / self.nu();
        let sigma = Identification::sigma(self.nu(), r);
        Ok(sigma.apply_perm(&self.z[g].kron(&Permutation::identity(r))))
    }

    /// `φ_{r(n)}(θ(w) ⊗ 1_{r(n)})`, the conjugating unitary of the corner block.
    pub fn corner_permutation(&self, n: usize) -> Result<Permutation> {
        let dim = self.materializable_dim(n)?;
        let r = dim / self.nu();
        let theta_w = Identification::theta(self.nu()).apply_perm(&self.w);
        Ok(Identification::phi(self.nu(), r).apply_perm(&theta_w.kron(&Permutation::identity(r))))
    }

    pub fn summary(&self) -> PlanSummary {
        let nu = self.nu();
        PlanSummary {
            group: self.group.name().to_string(),
            elements: self.group.elements().to_vec(),
            nu,
            eta: self.eta.clone(),
            target: self.ledger.target.clone(),
            seed: self.seed,
            matrix_cap: self.matrix_cap,
            d: self.ledger.d_values(),
            fiber_dims: (1..=self.stage_count()).map(|n| self.fiber_dim(n)).collect(),
            stages: (0..=self.stage_count())
                .map(|n| StageSummary {
                    stage: n,
                    fiber_dim: self.fiber_dim(n),
                    dim_x: BigInt::from(2) * self.ledger.s(n),
                    materialized: self.is_materializable(n),
                })
                .collect(),
            ledger: self.ledger.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageSummary {
    pub stage: usize,
    #[serde(with = "serde_str::bigint")]
    pub fiber_dim: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub dim_x: BigInt,
    /// False when the stage exceeds the matrix cap and only ledgers apply.
    pub materialized: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanSummary {
    pub group: String,
    pub elements: Vec<String>,
    pub nu: usize,
    #[serde(with = "serde_str::rational")]
    pub eta: BigRational,
    #[serde(with = "serde_str::rational")]
    pub target: BigRational,
    pub seed: u64,
    pub matrix_cap: usize,
    #[serde(with = "serde_str::bigint_vec")]
    pub d: Vec<BigInt>,
    #[serde(with = "serde_str::bigint_vec")]
    pub fiber_dims: Vec<BigInt>,
    pub stages: Vec<StageSummary>,
    pub ledger: StageLedger,
}
