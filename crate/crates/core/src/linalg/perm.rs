use crate::linalg::ExactMatrix;
use crate::scalar;

/// A permutation of basis vectors: `P e_i = e_{image[i]}`.
///
/// Every unitary the construction needs (regular representation, tensor
/// relabelings, the Fell absorption unitary, the stage actions) is a
/// permutation, so conjugations are index relabelings rather than products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    /// Returns `None` unless `image` is a bijection of `0..image.len()`.
    pub fn from_image(image: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Self { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    /// Kronecker product of permutation matrices, left factor outer.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.len();
        let mut image = Vec::with_capacity(self.len() * m);
        for i in 0..self.len() {
            for j in 0..m {
                image.push(self.image[i] * m + other.image[j]);
            }
        }
        Self { image }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let mut image = Vec::new();
        let mut offset = 0;
        for p in parts {
            image.extend(p.image.iter().map(|&i| i + offset));
            offset += p.len();
        }
        Self { image }
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, &j) in self.image.iter().enumerate() {
            m.set(j, i, scalar::one());
        }
        m
    }

    /// Reads a permutation back from a 0/1 matrix.
    pub fn from_matrix(m: &ExactMatrix) -> Option<Self> {
        if !m.is_permutation() {
            return None;
        }
        let image = (0..m.cols())
            .map(|j| (0..m.rows()).find(|&i| !num_traits::Zero::is_zero(m.get(i, j))).unwrap())
            .collect();
        Some(Self { image })
    }

    /// `P a P*`, computed by relabeling entries.
    pub fn conjugate(&self, a: &ExactMatrix) -> ExactMatrix {
        assert_eq!(a.rows(), self.len());
        assert_eq!(a.cols(), self.len());
        let inv = self.inverse();
        ExactMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(inv.image[i], inv.image[j]).clone())
    }
}
