use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{regular_permutations, GroupTable};

pub const DEFAULT_ORDER_CAP: usize = 64;
pub const DEFAULT_RETRIES: usize = 8;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Gaps between tol and this multiple of tol count as ambiguous.
const AMBIGUITY_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub conjugacy_class_count: usize,
    pub abelianization_order: usize,
    /// Nondecreasing irreducible-representation dimensions.
    pub irrep_dims: Vec<usize>,
}

impl GroupInvariants {
    /// Checks `Σ t² = |G|`, the count of linear characters and the class count.
    pub fn check(&self, order: usize) -> Result<()> {
        let sum_sq: usize = self.irrep_dims.iter().map(|t| t * t).sum();
        let ones = self.irrep_dims.iter().filter(|&&t| t == 1).count();
        if sum_sq != order {
            return Err(Error::Inconsistent(format!("sum of squared dims {sum_sq} != |G| = {order}")));
        }
        if ones != self.abelianization_order {
            return Err(Error::Inconsistent(format!(
                "{ones} one-dimensional irreps but |G^ab| = {}",
                self.abelianization_order
            )));
        }
        if self.irrep_dims.len() != self.conjugacy_class_count {
            return Err(Error::Inconsistent(format!(
                "{} irreps but {} conjugacy classes",
                self.irrep_dims.len(),
                self.conjugacy_class_count
            )));
        }
        if self.irrep_dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Inconsistent("irrep dims not sorted".into()));
        }
        Ok(())
    }
}

pub fn conjugacy_classes(group: &GroupTable) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|g| group.mul(group.mul(g, x), group.inv(g))).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

/// Subgroup generated by all commutators `g h g⁻¹ h⁻¹`.
pub fn commutator_subgroup(group: &GroupTable) -> Vec<usize> {
    let n = group.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0];
    for g in 0..n {
        for h in 0..n {
            let c = group.mul(group.mul(g, h), group.mul(group.inv(g), group.inv(h)));
            if !member[c] {
                member[c] = true;
                elems.push(c);
            }
        }
    }
    // Close under multiplication; finite, so closure is a subgroup.
    let mut i = 0;
    while i < elems.len() {
        for j in 0..elems.len() {
            for p in [group.mul(elems[i], elems[j]), group.mul(elems[j], elems[i])] {
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

/// `(conjugacy class count, abelianization order)`.
pub fn group_invariants(group: &GroupTable) -> (usize, usize) {
    (
        conjugacy_classes(group).len(),
        group.order() / commutator_subgroup(group).len(),
    )
}

/// Irreducible-representation dimensions from the eigenvalue multiplicities
/// of a random Hermitian element of the group algebra acting by the regular
/// representation: an irreducible of dimension `t` contributes `t` distinct
/// eigenvalues, each with multiplicity `t`.
pub fn irrep_dimensions(group: &GroupTable, seed: u64, tol: f64) -> Result<GroupInvariants> {
    irrep_dimensions_with(group, seed, tol, DEFAULT_ORDER_CAP, DEFAULT_RETRIES)
}

pub fn irrep_dimensions_with(
    group: &GroupTable,
    seed: u64,
    tol: f64,
    order_cap: usize,
    retries: usize,
) -> Result<GroupInvariants> {
    let n = group.order();
    if n > order_cap {
        return Err(Error::GroupTooLarge { order: n, cap: order_cap });
    }
    let (classes, ab) = group_invariants(group);
    for attempt in 0..retries.max(1) {
        let eigs = random_hermitian_spectrum(group, seed.wrapping_add(attempt as u64));
        let Some(mults) = cluster_multiplicities(&eigs, tol) else {
            continue;
        };
        let Some(irrep_dims) = dims_from_multiplicities(&mults) else {
            continue;
        };
        let inv = GroupInvariants {
            conjugacy_class_count: classes,
            abelianization_order: ab,
            irrep_dims,
        };
        if inv.check(n).is_ok() {
            return Ok(inv);
        }
    }
    Err(Error::DegenerateSample { attempts: retries.max(1) })
}

fn random_hermitian_spectrum(group: &GroupTable, seed: u64) -> Vec<f64> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = vec![Complex::new(0.0, 0.0); n];
    for g in 0..n {
        let gi = group.inv(g);
        if gi < g {
            continue;
        }
        let re = rng.gen_range(-1.0..1.0);
        if gi == g {
            coeff[g] = Complex::new(re, 0.0);
        } else {
            let c = Complex::new(re, rng.gen_range(-1.0..1.0));
            coeff[g] = c;
            coeff[gi] = c.conj();
        }
    }
    let mut h = DMatrix::<Complex<f64>>::zeros(n, n);
    for (g, p) in regular_permutations(group).iter().enumerate() {
        for col in 0..n {
            h[(p.apply(col), col)] += coeff[g];
        }
    }
    let mut eigs: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.total_cmp(b));
    eigs
}

/// Sizes of runs of sorted eigenvalues closer than `tol`, or `None` when a
/// gap is too close to `tol` to call.
fn cluster_multiplicities(sorted: &[f64], tol: f64) -> Option<Vec<usize>> {
    let mut mults = Vec::new();
    let mut run = 1;
    for w in sorted.windows(2) {
        let gap = w[1] - w[0];
        if gap <= tol {
            run += 1;
        } else if gap < tol * AMBIGUITY_FACTOR {
            return None;
        } else {
            mults.push(run);
            run = 1;
        }
    }
    mults.push(run);
    Some(mults)
}

fn dims_from_multiplicities(mults: &[usize]) -> Option<Vec<usize>> {
    let mut by_mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &m in mults {
        *by_mult.entry(m).or_default() += 1;
    }
    let mut dims = Vec::new();
    for (t, count) in by_mult {
        if count % t != 0 {
            return None;
        }
        dims.extend(std::iter::repeat(t).take(count / t));
    }
    Some(dims)
}
