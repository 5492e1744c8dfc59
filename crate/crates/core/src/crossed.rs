//! Crossed products `C*(G, M_k, Ad z)` of a full matrix algebra by an inner
//! action, stored as coefficient families `Σ a_g u_g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{regular_permutations, GroupTable, UnitaryRep};
use crate::linalg::echelon::{EchelonBasis, SparseRow};
use crate::linalg::spectral::{hermitian_eigenvalues, operator_norm};
use crate::linalg::{ExactMatrix, Permutation};
use crate::scalar::{self, serde_str, Scalar};
use crate::stages::ConstructionPlan;

/// Largest `k²` the fixed-point solver accepts.
pub const FIXED_POINT_UNKNOWN_CAP: usize = 20_000;

/// `α_g = Ad z_g` for an exact unitary representation `z`.
#[derive(Debug, Clone)]
pub struct InnerAction {
    group: GroupTable,
    z: Vec<ExactMatrix>,
    /// Present when every `z_g` is a permutation; conjugation is then a relabeling.
    perms: Option<Vec<Permutation>>,
}

impl InnerAction {
    pub fn new(rep: UnitaryRep) -> Self {
        let perms = rep
            .matrices()
            .iter()
            .map(Permutation::from_matrix)
            .collect::<Option<Vec<_>>>();
        Self {
            group: rep.group().clone(),
            z: rep.matrices().to_vec(),
            perms,
        }
    }

    /// Checks the representation property before accepting the family.
    pub fn from_matrices(group: &GroupTable, z: Vec<ExactMatrix>) -> Result<Self> {
        Ok(Self::new(UnitaryRep::new(group.clone(), z)?))
    }

    pub fn from_permutations(group: &GroupTable, perms: Vec<Permutation>) -> Result<Self> {
        let z = perms.iter().map(Permutation::to_matrix).collect();
        Self::from_matrices(group, z)
    }

    /// The left regular representation acting on `M_ν`.
    pub fn regular(group: &GroupTable) -> Self {
        let perms = regular_permutations(group);
        Self {
            group: group.clone(),
            z: perms.iter().map(Permutation::to_matrix).collect(),
            perms: Some(perms),
        }
    }

    /// The stage-`n` action `Ad σ_{r(n)}(z_g ⊗ 1_{r(n)})` on `M_{νr(n)}`.
    pub fn stage(plan: &ConstructionPlan, n: usize) -> Result<Self> {
        let perms = (0..plan.nu())
            .map(|g| plan.action_permutation(g, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_permutations(plan.group(), perms)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.z[0].rows()
    }

    pub fn z(&self, g: usize) -> &ExactMatrix {
        &self.z[g]
    }

    pub fn alpha(&self, g: usize, a: &ExactMatrix) -> ExactMatrix {
        match &self.perms {
            Some(p) => p[g].conjugate(a),
            None => &(&self.z[g] * a) * &self.z[g].adjoint(),
        }
    }
}

/// `Σ_g a_g u_g` with one `k × k` coefficient per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedElement {
    k: usize,
    coeffs: Vec<ExactMatrix>,
}

impl CrossedElement {
    pub fn zero(order: usize, k: usize) -> Self {
        Self {
            k,
            coeffs: vec![ExactMatrix::zeros(k, k); order],
        }
    }

    pub fn from_coeffs(coeffs: Vec<ExactMatrix>) -> Result<Self> {
        let k = coeffs.first().map_or(0, ExactMatrix::rows);
        if coeffs.iter().any(|c| c.rows() != k || c.cols() != k) {
            return Err(Error::Dimension("coefficients must share one square size".into()));
        }
        Ok(Self { k, coeffs })
    }

    /// `a · u_g`.
    pub fn monomial(order: usize, g: usize, a: ExactMatrix) -> Self {
        let mut x = Self::zero(order, a.rows());
        x.coeffs[g] = a;
        x
    }

    pub fn one(order: usize, k: usize) -> Self {
        Self::monomial(order, 0, ExactMatrix::identity(k))
    }

    /// Random Gaussian-integer coefficients; each entry is nonzero with
    /// probability `density`.
    pub fn random(order: usize, k: usize, density: f64, rng: &mut impl Rng) -> Self {
        let coeffs = (0..order)
            .map(|_| {
                ExactMatrix::from_fn(k, k, |_, _| {
                    if rng.gen_bool(density) {
                        scalar::gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect();
        Self { k, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The coefficient extraction `E_g`.
    pub fn coeff(&self, g: usize) -> &ExactMatrix {
        &self.coeffs[g]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            k: self.k,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            k: self.k,
            coeffs: self.coeffs.iter().map(|a| a.scale(s)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.order() != other.order() {
            return Err(Error::Dimension(format!(
                "crossed elements over (|G|={}, k={}) and (|G|={}, k={})",
                self.order(),
                self.k,
                other.order(),
                other.k
            )));
        }
        Ok(())
    }

    fn check_action(&self, act: &InnerAction) -> Result<()> {
        if self.order() != act.group().order() || self.k != act.dim() {
            return Err(Error::Dimension(format!(
                "element over (|G|={}, k={}) with an action over (|G|={}, k={})",
                self.order(),
                self.k,
                act.group().order(),
                act.dim()
            )));
        }
        Ok(())
    }

    /// Coefficients keyed by element label, entries as exact strings.
    pub fn to_json(&self, group: &GroupTable) -> serde_json::Value {
        let map: BTreeMap<&str, Vec<Vec<String>>> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(g, a)| (group.label(g), a.to_strings()))
            .collect();
        serde_json::json!(map)
    }
}

/// `(a u_g)(b u_h) = a α_g(b) u_{gh}`, extended bilinearly.
pub fn cp_mul(x: &CrossedElement, y: &CrossedElement, act: &InnerAction) -> Result<CrossedElement> {
    x.check_compatible(y)?;
    x.check_action(act)?;
    let group = act.group();
    let mut out = CrossedElement::zero(x.order(), x.k);
    for h in 0..y.order() {
        let b = &y.coeffs[h];
        if b.is_zero() {
            continue;
        }
        for g in 0..x.order() {
            let a = &x.coeffs[g];
            if a.is_zero() {
                continue;
            }
            let gh = group.mul(g, h);
            let term = a * &act.alpha(g, b);
            out.coeffs[gh] = &out.coeffs[gh] + &term;
        }
    }
    Ok(out)
}

/// `(a u_g)* = α_{g⁻¹}(a*) u_{g⁻¹}`.
pub fn cp_star(x: &CrossedElement, act: &InnerAction) -> Result<CrossedElement> {
    x.check_action(act)?;
    let group = act.group();
    let mut out = CrossedElement::zero(x.order(), x.k);
    for g in 0..x.order() {
        let gi = group.inv(g);
        out.coeffs[gi] = act.alpha(gi, &x.coeffs[g].adjoint());
    }
    Ok(out)
}

/// `τ(Σ a_g u_g) = tr(a_1)/k`.
pub fn canonical_trace(x: &CrossedElement) -> Scalar {
    let k = BigRational::from_integer(BigInt::from(x.k));
    let t = x.coeffs[0].trace();
    Scalar::new(t.re / &k, t.im / &k)
}

/// `p = (1/|G|) Σ_g u_g`.
pub fn averaging_projection(group: &GroupTable, k: usize) -> CrossedElement {
    let n = group.order();
    let c = scalar::real(scalar::rat(1, n as i64));
    CrossedElement {
        k,
        coeffs: vec![ExactMatrix::identity(k).scale(&c); n],
    }
}

/// `Σ a_g u_g ↦ Σ a_g z_g`.
pub fn psi_map(x: &CrossedElement, act: &InnerAction) -> Result<ExactMatrix> {
    x.check_action(act)?;
    let mut out = ExactMatrix::zeros(x.k, x.k);
    for (g, a) in x.coeffs.iter().enumerate() {
        if !a.is_zero() {
            out = &out + &(a * act.z(g));
        }
    }
    Ok(out)
}

/// Regular representation on `ℓ²(G, ℂ^k)`:
/// `π(a u_g)` has block `α_{h⁻¹}(a)` at position `(h, g⁻¹h)`.
pub fn matrixize(x: &CrossedElement, act: &InnerAction) -> Result<ExactMatrix> {
    x.check_action(act)?;
    let group = act.group();
    let (n, k) = (x.order(), x.k);
    let mut out = ExactMatrix::zeros(n * k, n * k);
    for g in 0..n {
        if x.coeffs[g].is_zero() {
            continue;
        }
        for h in 0..n {
            let block = act.alpha(group.inv(h), &x.coeffs[g]);
            let col = group.mul(group.inv(g), h);
            for i in 0..k {
                for j in 0..k {
                    let v = block.get(i, j);
                    if !v.is_zero() {
                        let cur = out.get(h * k + i, col * k + j).clone();
                        out.set(h * k + i, col * k + j, cur + v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// C*-norm through the (faithful) regular representation, in floating point.
pub fn cp_norm(x: &CrossedElement, act: &InnerAction) -> Result<f64> {
    Ok(operator_norm(&matrixize(x, act)?.to_c64()))
}

/// Dimension of `{a ∈ M_k : z_g a = a z_g for all g}` by exact elimination.
pub fn fixed_point_dimension(act: &InnerAction) -> Result<usize> {
    let k = act.dim();
    if k * k > FIXED_POINT_UNKNOWN_CAP {
        return Err(Error::SizeCap {
            rows: k * k,
            cols: k * k,
            cap: FIXED_POINT_UNKNOWN_CAP,
        });
    }
    let var = |i: usize, j: usize| i * k + j;
    let mut basis = EchelonBasis::new();
    for g in 1..act.group().order() {
        let z = act.z(g);
        // nonzeros of z by row and by column
        let by_row: Vec<Vec<(usize, &Scalar)>> = (0..k)
            .map(|i| (0..k).filter(|&l| !z.get(i, l).is_zero()).map(|l| (l, z.get(i, l))).collect())
            .collect();
        let by_col: Vec<Vec<(usize, &Scalar)>> = (0..k)
            .map(|j| (0..k).filter(|&l| !z.get(l, j).is_zero()).map(|l| (l, z.get(l, j))).collect())
            .collect();
        for i in 0..k {
            for j in 0..k {
                // (z a − a z)_{ij} = Σ_l z_il a_lj − Σ_l a_il z_lj
                let mut row = SparseRow::new();
                for &(l, c) in &by_row[i] {
                    let e = row.entry(var(l, j)).or_insert_with(Scalar::zero);
                    *e = &*e + c;
                }
                for &(l, c) in &by_col[j] {
                    let e = row.entry(var(i, l)).or_insert_with(Scalar::zero);
                    *e = &*e - c;
                }
                basis.insert(row);
            }
        }
    }
    Ok(k * k - basis.rank())
}

/// Slack allowed in floating-point norm inequalities.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Randomized audit of the crossed-product identities for one action.
#[derive(Debug, Clone, Serialize)]
pub struct CrossedReport {
    pub order: usize,
    pub k: usize,
    /// `|G|·k²`
    pub total_dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub density: f64,
    pub associative: bool,
    /// `x** = x` and `(xy)* = y*x*`
    pub involutive: bool,
    pub trace_tracial: bool,
    /// `τ(x*x) ≥ 0`, with the regular-representation form of `x*x` positive
    /// semidefinite up to the norm tolerance.
    pub trace_positive: bool,
    pub averaging_is_projection: bool,
    #[serde(with = "serde_str::rational")]
    pub averaging_trace: BigRational,
    pub psi_unital: bool,
    pub psi_identity_on_coefficients: bool,
    pub psi_multiplicative: bool,
    pub psi_star_preserving: bool,
    /// Largest `‖ψ(x)‖ / ‖x‖` seen.
    pub psi_norm_ratio_max: f64,
    pub psi_norm_bound: bool,
    pub fixed_point_dimension: Option<usize>,
    pub passed: bool,
}

pub fn crossed_report(act: &InnerAction, samples: usize, density: f64, seed: u64) -> Result<CrossedReport> {
    let (order, k) = (act.group().order(), act.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = CrossedElement::one(order, k);
    let mut r = CrossedReport {
        order,
        k,
        total_dim: order * k * k,
        samples,
        seed,
        density,
        associative: true,
        involutive: true,
        trace_tracial: true,
        trace_positive: true,
        averaging_is_projection: false,
        averaging_trace: BigRational::zero(),
        psi_unital: psi_map(&one, act)? == ExactMatrix::identity(k),
        psi_identity_on_coefficients: true,
        psi_multiplicative: true,
        psi_star_preserving: true,
        psi_norm_ratio_max: 0.0,
        psi_norm_bound: true,
        fixed_point_dimension: fixed_point_dimension(act).ok(),
        passed: false,
    };
    let p = averaging_projection(act.group(), k);
    r.averaging_is_projection = cp_mul(&p, &p, act)? == p && cp_star(&p, act)? == p;
    let tau_p = canonical_trace(&p);
    r.averaging_trace = tau_p.re.clone();
    let averaging_trace_ok = tau_p.im.is_zero() && tau_p.re == scalar::rat(1, order as i64);

    for _ in 0..samples {
        let x = CrossedElement::random(order, k, density, &mut rng);
        let y = CrossedElement::random(order, k, density, &mut rng);
        let z = CrossedElement::random(order, k, density, &mut rng);
        let xy = cp_mul(&x, &y, act)?;
        r.associative &= cp_mul(&xy, &z, act)? == cp_mul(&x, &cp_mul(&y, &z, act)?, act)?;

        let xs = cp_star(&x, act)?;
        let ys = cp_star(&y, act)?;
        r.involutive &= cp_star(&xs, act)? == x && cp_star(&xy, act)? == cp_mul(&ys, &xs, act)?;

        let yx = cp_mul(&y, &x, act)?;
        r.trace_tracial &= canonical_trace(&xy) == canonical_trace(&yx);
        let xsx = cp_mul(&xs, &x, act)?;
        let t = canonical_trace(&xsx);
        let min_eig = hermitian_eigenvalues(&matrixize(&xsx, act)?.to_c64()).first().copied().unwrap_or(0.0);
        r.trace_positive &= t.im.is_zero() && !t.re.is_negative() && min_eig >= -NORM_TOLERANCE;

        let (px, py) = (psi_map(&x, act)?, psi_map(&y, act)?);
        r.psi_multiplicative &= psi_map(&xy, act)? == &px * &py;
        r.psi_star_preserving &= psi_map(&xs, act)? == px.adjoint();
        let a = x.coeff(0).clone();
        r.psi_identity_on_coefficients &= psi_map(&CrossedElement::monomial(order, 0, a.clone()), act)? == a;

        let norm_x = cp_norm(&x, act)?;
        let norm_psi = operator_norm(&px.to_c64());
        if norm_x > 0.0 {
            r.psi_norm_ratio_max = r.psi_norm_ratio_max.max(norm_psi / norm_x);
        }
        r.psi_norm_bound &= norm_psi <= order as f64 * norm_x + NORM_TOLERANCE * norm_x.max(1.0);
    }
    r.passed = r.associative
        && r.involutive
        && r.trace_tracial
        && r.trace_positive
        && r.averaging_is_projection
        && averaging_trace_ok
        && r.psi_unital
        && r.psi_identity_on_coefficients
        && r.psi_multiplicative
        && r.psi_star_preserving
        && r.psi_norm_bound;
    Ok(r)
}
