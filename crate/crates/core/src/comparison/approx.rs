use num_complex::Complex;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::spectral::{operator_norm, C64Matrix};
use crate::linalg::ExactMatrix;
use crate::scalar::{self, Scalar};

/// Generic mixing coefficient for simultaneous diagonalization of the real
/// and imaginary parts.
const MIX: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Matrix unit `E_{mk}` in the eigenbasis.
    pub m: usize,
    pub k: usize,
    /// `‖b E_{mk} − E_{mk} b‖`
    pub commutator_norm: f64,
    /// Squared commutator norm, exact for diagonal input.
    #[serde(with = "opt_rational")]
    pub commutator_norm_sq_exact: Option<BigRational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarApproximation {
    pub eigenvalues: Vec<(f64, f64)>,
    pub xi: (f64, f64),
    /// `‖b − ξ·1‖ = max_j |ξ_j − ξ|`
    pub distance: f64,
    #[serde(with = "opt_rational")]
    pub distance_sq_exact: Option<BigRational>,
    pub witness: Option<Witness>,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&crate::scalar::fmt_rational(r)),
            None => s.serialize_none(),
        }
    }
}

fn pair(z: Complex<f64>) -> (f64, f64) {
    (z.re, z.im)
}

/// Picks `ξ` among the eigenvalues (modulus closest to 1), the distance
/// `max_j |ξ_j − ξ|` and the pair `(m, k)` with the widest spread.
fn select(eigs: &[Complex<f64>]) -> (usize, f64, Option<(usize, usize)>) {
    let xi = (0..eigs.len())
        .min_by(|&a, &b| (eigs[a].norm() - 1.0).abs().total_cmp(&(eigs[b].norm() - 1.0).abs()))
        .expect("nonempty spectrum");
    let distance = eigs.iter().map(|z| (z - eigs[xi]).norm()).fold(0.0, f64::max);
    let mut best: Option<(usize, usize, f64)> = None;
    for m in 0..eigs.len() {
        for k in 0..eigs.len() {
            let spread = (eigs[m] - eigs[k]).norm();
            if m != k && best.map_or(true, |(_, _, s)| spread > s) {
                best = Some((m, k, spread));
            }
        }
    }
    (xi, distance, best.map(|(m, k, _)| (m, k)))
}

/// Approximates a normal `b` with `‖b‖ ≈ 1` by a unit scalar.
pub fn scalar_approximation(b: &ExactMatrix, tol: f64) -> Result<ScalarApproximation> {
    if b.rows() != b.cols() || b.rows() == 0 {
        return Err(Error::Dimension("expected a nonempty square matrix".into()));
    }
    let adj = b.adjoint();
    if &(b * &adj) != &(&adj * b) {
        return Err(Error::NotNormal("b b* != b* b".into()));
    }
    if b.is_diagonal() {
        return diagonal_case(b, tol);
    }
    let bf = b.to_c64();
    let bf_adj = bf.adjoint();
    let re = (&bf + &bf_adj) * Complex::new(0.5, 0.0);
    let im = (&bf - &bf_adj) * Complex::new(0.0, -0.5);
    let eig = (re + im * Complex::new(MIX, 0.0)).symmetric_eigen();
    let v = eig.eigenvectors;
    let eigs: Vec<Complex<f64>> = (0..v.ncols())
        .map(|j| {
            let col = v.column(j);
            (col.adjoint() * &bf * col)[(0, 0)]
        })
        .collect();
    check_radius(&eigs, tol)?;
    let (xi, distance, wk) = select(&eigs);
    let witness = wk.map(|(m, k)| {
        let e: C64Matrix = v.column(m) * v.column(k).adjoint();
        Witness {
            m,
            k,
            commutator_norm: operator_norm(&(&bf * &e - &e * &bf)),
            commutator_norm_sq_exact: None,
        }
    });
    Ok(ScalarApproximation {
        eigenvalues: eigs.iter().copied().map(pair).collect(),
        xi: pair(eigs[xi]),
        distance,
        distance_sq_exact: None,
        witness,
    })
}

fn check_radius(eigs: &[Complex<f64>], tol: f64) -> Result<()> {
    let radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if (radius - 1.0).abs() > tol {
        return Err(Error::OutOfRange(format!("spectral radius {radius} is not within {tol} of 1")));
    }
    Ok(())
}

fn diagonal_case(b: &ExactMatrix, tol: f64) -> Result<ScalarApproximation> {
    let diag = b.diagonal_entries();
    let eigs: Vec<Complex<f64>> = diag.iter().map(scalar::to_c64).collect();
    check_radius(&eigs, tol)?;
    let (xi, distance, wk) = select(&eigs);
    let dist_sq = |a: &Scalar, c: &Scalar| scalar::norm_sqr(&(a - c));
    let distance_sq_exact = diag.iter().map(|z| dist_sq(z, &diag[xi])).max();
    let witness = wk.map(|(m, k)| {
        let mut e = ExactMatrix::zeros(b.rows(), b.cols());
        e.set(m, k, scalar::one());
        let comm = &(b * &e) - &(&e * b);
        // single nonzero entry: operator norm = modulus of that entry
        let sq = comm.entries().iter().map(scalar::norm_sqr).sum::<BigRational>();
        Witness {
            m,
            k,
            commutator_norm: scalar::to_f64(&sq).sqrt(),
            commutator_norm_sq_exact: Some(sq),
        }
    });
    Ok(ScalarApproximation {
        eigenvalues: eigs.iter().copied().map(pair).collect(),
        xi: pair(eigs[xi]),
        distance,
        distance_sq_exact,
        witness,
    })
}
