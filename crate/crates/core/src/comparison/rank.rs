use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{exact_rank, is_positive_semidefinite, ExactMatrix};
use crate::stages::MatFunc;

/// Blockwise ranks of an element of `⊕_j M_{k_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankVector {
    ranks: Vec<usize>,
    sizes: Vec<usize>,
}

impl RankVector {
    pub fn new(ranks: Vec<usize>, sizes: Vec<usize>) -> Result<Self> {
        if ranks.len() != sizes.len() {
            return Err(Error::Dimension(format!("{} ranks for {} blocks", ranks.len(), sizes.len())));
        }
        if let Some(j) = (0..ranks.len()).find(|&j| ranks[j] > sizes[j]) {
            return Err(Error::OutOfRange(format!("rank {} in a block of size {}", ranks[j], sizes[j])));
        }
        Ok(Self { ranks, sizes })
    }

    /// Exact ranks of positive blocks.
    pub fn from_blocks(blocks: &[ExactMatrix]) -> Result<Self> {
        for b in blocks {
            if !is_positive_semidefinite(b) {
                return Err(Error::NotPositive(format!("block of size {}", b.rows())));
            }
        }
        Self::new(blocks.iter().map(exact_rank).collect(), blocks.iter().map(ExactMatrix::rows).collect())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `a ⊕ c` inside `M_2` of the same block algebra.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            ranks: self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect(),
            sizes: self.sizes.iter().zip(&other.sizes).map(|(a, b)| a + b).collect(),
        }
    }
}

/// In a finite-dimensional algebra `a ≾ b` exactly when every block rank of
/// `a` is at most that of `b`.
pub fn cuntz_leq_fd(a: &RankVector, b: &RankVector) -> Result<bool> {
    if a.sizes != b.sizes {
        return Err(Error::Dimension(format!("block sizes {:?} and {:?}", a.sizes, b.sizes)));
    }
    Ok(a.ranks.iter().zip(&b.ranks).all(|(x, y)| x <= y))
}

/// `d_ρ` for `ρ = Σ_j w_j tr_j / k_j`: the weighted normalized rank.
pub fn d_tau(a: &RankVector, weights: &[BigRational]) -> Result<BigRational> {
    if weights.len() != a.ranks.len() {
        return Err(Error::Dimension(format!("{} weights for {} blocks", weights.len(), a.ranks.len())));
    }
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::OutOfRange("trace weights must be nonnegative".into()));
    }
    let mut total = BigRational::zero();
    for ((w, &r), &k) in weights.iter().zip(&a.ranks).zip(&a.sizes) {
        if k > 0 {
            total += w * BigRational::new(BigInt::from(r), BigInt::from(k));
        }
    }
    Ok(total)
}

/// `d_tr` of a positive matrix under the normalized trace of `M_k`.
pub fn d_tau_matrix(a: &ExactMatrix) -> Result<BigRational> {
    let rv = RankVector::from_blocks(std::slice::from_ref(a))?;
    d_tau(&rv, &[BigRational::from_integer(BigInt::from(1))])
}

/// Pointwise rank domination of two functions on their common sample points.
/// Over `C(X)` this is necessary for `a ≾ b`, never sufficient.
#[derive(Debug, Clone, Serialize)]
pub struct NecessaryCheck {
    pub label: &'static str,
    pub points: usize,
    pub holds: bool,
}

pub const NECESSARY_ONLY: &str = "NECESSARY-ONLY";

pub fn pointwise_rank_condition(a: &MatFunc, b: &MatFunc) -> Result<NecessaryCheck> {
    if a.stage() != b.stage() || a.dim() != b.dim() {
        return Err(Error::Dimension("functions on different stages".into()));
    }
    let mut points = 0;
    let mut holds = true;
    for (x, va) in a.iter() {
        let vb = b.eval(x)?;
        points += 1;
        holds &= exact_rank(va) <= exact_rank(vb);
    }
    Ok(NecessaryCheck {
        label: NECESSARY_ONLY,
        points,
        holds,
    })
}
