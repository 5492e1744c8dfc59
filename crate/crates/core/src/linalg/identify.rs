//! The four tensor-product identifications used by the connecting maps.
//!
//! Each identifies `M_p ⊗ M_q` with `M_{pq}` through
//! `a ⊗ [b_jk] ↦ [a·b_jk]`: the *second* factor carries the outer block
//! index. That is the reverse of the usual Kronecker layout, so every map is
//! realized as an explicit index bijection from the standard layout
//! (`i·q + j`) to the block layout (`j·p + i`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentKind {
    /// `M_ν ⊗ M_ν → M_{ν²}`
    Theta,
    /// `M_{ν²} ⊗ M_n → M_{ν² n}`
    Phi,
    /// `M_ν ⊗ M_{ν n} → M_{ν² n}`
    Psi,
    /// `M_ν ⊗ M_n → M_{ν n}`
    Sigma,
}

#[derive(Debug, Clone)]
pub struct Identification {
    kind: IdentKind,
    nu: usize,
    n: Option<usize>,
    left: usize,
    right: usize,
    index_map: Permutation,
}

impl Identification {
    /// `n` is ignored for [`IdentKind::Theta`].
    pub fn new(kind: IdentKind, nu: usize, n: usize) -> Self {
        let (left, right, n) = match kind {
            IdentKind::Theta => (nu, nu, None),
            IdentKind::Phi => (nu * nu, n, Some(n)),
            IdentKind::Psi => (nu, nu * n, Some(n)),
            IdentKind::Sigma => (nu, n, Some(n)),
        };
        let mut image = vec![0; left * right];
        for i in 0..left {
            for j in 0..right {
                image[i * right + j] = j * left + i;
            }
        }
        Self {
            kind,
            nu,
            n,
            left,
            right,
            index_map: Permutation::from_image(image).expect("block relabeling is a bijection"),
        }
    }

    pub fn theta(nu: usize) -> Self {
        Self::new(IdentKind::Theta, nu, 0)
    }

    pub fn phi(nu: usize, n: usize) -> Self {
        Self::new(IdentKind::Phi, nu, n)
    }

    pub fn psi(nu: usize, n: usize) -> Self {
        Self::new(IdentKind::Psi, nu, n)
    }

    pub fn sigma(nu: usize, n: usize) -> Self {
        Self::new(IdentKind::Sigma, nu, n)
    }

    pub fn kind(&self) -> IdentKind {
        self.kind
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    /// Sizes of the two tensor factors.
    pub fn factor_dims(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    pub fn dim(&self) -> usize {
        self.left * self.right
    }

    /// Standard-layout flat index to block-layout flat index.
    pub fn index_map(&self) -> &Permutation {
        &self.index_map
    }

    /// Image of the elementary tensor `a ⊗ b`.
    pub fn apply_pair(&self, a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
        let ok = a.rows() == self.left && a.cols() == self.left && b.rows() == self.right && b.cols() == self.right;
        if !ok {
            return Err(Error::Dimension(format!(
                "{:?} expects {}x{} ⊗ {}x{}, got {}x{} ⊗ {}x{}",
                self.kind,
                self.left,
                self.left,
                self.right,
                self.right,
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let standard = a.kron_with_cap(b, usize::MAX)?;
        Ok(self.index_map.conjugate(&standard))
    }

    /// Image of a general tensor given in standard Kronecker layout.
    pub fn apply(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        if x.rows() != self.dim() || x.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "{:?} expects a {}x{} tensor, got {}x{}",
                self.kind,
                self.dim(),
                self.dim(),
                x.rows(),
                x.cols()
            )));
        }
        Ok(self.index_map.conjugate(x))
    }

    /// Image of a permutation tensor given in standard Kronecker layout.
    pub fn apply_perm(&self, p: &Permutation) -> Permutation {
        assert_eq!(p.len(), self.dim());
        self.index_map.compose(p).compose(&self.index_map.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar;

    fn sample(n: usize, seed: i64) -> ExactMatrix {
        ExactMatrix::from_fn(n, n, |i, j| {
            let k = seed + 3 * i as i64 + 7 * j as i64;
            scalar::gauss(k % 5 - 2, (k * k) % 3 - 1)
        })
    }

    #[test]
    fn theta_with_identity_left_factor_is_kron_b_identity() {
        let nu = 3;
        let b = sample(nu, 4);
        let id = ExactMatrix::identity(nu);
        let got = Identification::theta(nu).apply_pair(&id, &b).unwrap();
        assert_eq!(got, b.kron(&id).unwrap());
    }

    #[test]
    fn pair_image_is_reverse_kron() {
        let a = sample(2, 1);
        let b = sample(3, 2);
        let got = Identification::sigma(2, 3).apply_pair(&a, &b).unwrap();
        assert_eq!(got, b.kron(&a).unwrap());
    }

    #[test]
    fn index_map_round_trips() {
        for ident in [
            Identification::theta(3),
            Identification::phi(2, 3),
            Identification::psi(2, 3),
            Identification::sigma(3, 2),
        ] {
            let m = ident.index_map();
            let inv = m.inverse();
            for i in 0..ident.dim() {
                assert_eq!(inv.apply(m.apply(i)), i);
            }
        }
    }

    #[test]
    fn apply_is_multiplicative_and_star_preserving() {
        let ident = Identification::psi(2, 2);
        let x = sample(8, 3);
        let y = sample(8, 11);
        let fx = ident.apply(&x).unwrap();
        let fy = ident.apply(&y).unwrap();
        assert_eq!(ident.apply(&(&x * &y)).unwrap(), &fx * &fy);
        assert_eq!(ident.apply(&x.adjoint()).unwrap(), fx.adjoint());
        assert_eq!(ident.apply(&ExactMatrix::identity(8)).unwrap(), ExactMatrix::identity(8));
    }

    #[test]
    fn wrong_factor_size_is_rejected() {
        let err = Identification::theta(2).apply_pair(&sample(2, 0), &sample(3, 0));
        assert!(matches!(err, Err(Error::Dimension(_))));
    }
}
