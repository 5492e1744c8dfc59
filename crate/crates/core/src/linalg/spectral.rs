//! Functional calculus and rank. Exact where the input allows it, floating
//! point otherwise.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{echelon, ExactMatrix};
use crate::scalar;

pub type C64Matrix = DMatrix<Complex<f64>>;

/// `t ↦ max(0, t − eps)` applied to an exact spectrum.
pub fn cut_down_spectrum(eigs: &[BigRational], eps: &BigRational) -> Vec<BigRational> {
    eigs.iter()
        .map(|t| {
            let s = t - eps;
            if s.is_positive() {
                s
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum CutDown {
    /// Diagonal input: the result is exact.
    Exact(ExactMatrix),
    /// General Hermitian input: computed through a floating eigendecomposition.
    Approx(C64Matrix),
}

impl CutDown {
    pub fn exact(&self) -> Option<&ExactMatrix> {
        match self {
            CutDown::Exact(m) => Some(m),
            CutDown::Approx(_) => None,
        }
    }
}

/// `(a − eps)_+` for a Hermitian matrix.
pub fn cut_down(a: &ExactMatrix, eps: &BigRational) -> Result<CutDown> {
    if eps.is_negative() {
        return Err(Error::OutOfRange(format!("cut-down level {} < 0", scalar::fmt_rational(eps))));
    }
    if !a.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if a.is_diagonal() {
        let diag: Vec<BigRational> = a.diagonal_entries().into_iter().map(|z| z.re).collect();
        let cut = cut_down_spectrum(&diag, eps);
        return Ok(CutDown::Exact(ExactMatrix::diagonal(
            &cut.into_iter().map(scalar::real).collect::<Vec<_>>(),
        )));
    }
    let eps = scalar::to_f64(eps);
    let eig = a.to_c64().symmetric_eigen();
    let shifted = eig.eigenvalues.map(|t| Complex::new((t - eps).max(0.0), 0.0));
    let v = &eig.eigenvectors;
    Ok(CutDown::Approx(v * C64Matrix::from_diagonal(&shifted) * v.adjoint()))
}

/// Number of singular values above `tol`; `tol = 0` uses exact row reduction.
pub fn approx_rank(a: &ExactMatrix, tol: f64) -> usize {
    if tol <= 0.0 {
        return echelon::exact_rank(a);
    }
    a.to_c64().singular_values().iter().filter(|&&s| s > tol).count()
}

/// Exact positive-semidefiniteness test by symmetric elimination: a zero
/// pivot forces its whole row to vanish, a negative pivot fails.
pub fn is_positive_semidefinite(a: &ExactMatrix) -> bool {
    if !a.is_hermitian() {
        return false;
    }
    let k = a.rows();
    let mut m: Vec<Vec<scalar::Scalar>> = (0..k).map(|i| a.row(i).to_vec()).collect();
    for p in 0..k {
        let pivot = m[p][p].re.clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if m[p][p + 1..].iter().any(|z| !z.is_zero()) {
                return false;
            }
            continue;
        }
        for i in p + 1..k {
            if m[i][p].is_zero() {
                continue;
            }
            let f = &m[i][p] / &m[p][p];
            for j in p..k {
                let t = &f * &m[p][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    true
}

pub fn operator_norm(a: &C64Matrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn hermitian_eigenvalues(a: &C64Matrix) -> Vec<f64> {
    let mut v: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|x, y| x.total_cmp(y));
    v
}
