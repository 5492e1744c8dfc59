use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg::{ExactMatrix, Permutation};

/// A unitary representation `g ↦ z_g` with exact Gaussian-rational matrices.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: GroupTable,
    matrices: Vec<ExactMatrix>,
}

impl UnitaryRep {
    /// Checks the identity, homomorphism and unitarity conditions exactly.
    pub fn new(group: GroupTable, matrices: Vec<ExactMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::NotRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let k = matrices[0].rows();
        if let Some(g) = matrices.iter().position(|m| m.rows() != k || m.cols() != k) {
            return Err(Error::NotRepresentation(format!("matrix for {} is not {k}x{k}", group.label(g))));
        }
        if matrices[0] != ExactMatrix::identity(k) {
            return Err(Error::NotRepresentation("identity is not sent to 1".into()));
        }
        for (g, m) in matrices.iter().enumerate() {
            if !m.is_unitary() {
                return Err(Error::NotRepresentation(format!("z({}) is not unitary", group.label(g))));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if &matrices[g] * &matrices[h] != matrices[group.mul(g, h)] {
                    return Err(Error::NotRepresentation(format!(
                        "z({})z({}) != z({})",
                        group.label(g),
                        group.label(h),
                        group.label(group.mul(g, h))
                    )));
                }
            }
        }
        Ok(Self { group, matrices })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn matrix(&self, g: usize) -> &ExactMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }
}

/// `z_g e_h = e_{gh}` as basis permutations, i.e. `(z_g ξ)(h) = ξ(g⁻¹h)`.
pub fn regular_permutations(group: &GroupTable) -> Vec<Permutation> {
    (0..group.order())
        .map(|g| {
            Permutation::from_image((0..group.order()).map(|h| group.mul(g, h)).collect())
                .expect("rows of a Latin square are permutations")
        })
        .collect()
}

/// The left regular representation on `ℓ²(G)`, basis ordered as the group.
pub fn regular_representation(group: &GroupTable) -> UnitaryRep {
    let matrices = regular_permutations(group).iter().map(Permutation::to_matrix).collect();
    UnitaryRep::new(group.clone(), matrices).expect("the left regular representation is a unitary representation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn z2_regular_rep_is_swap() {
        let g = build_group("Z2").unwrap();
        let rep = regular_representation(&g);
        assert_eq!(*rep.matrix(0), ExactMatrix::identity(2));
        assert_eq!(*rep.matrix(1), ExactMatrix::from_ints(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn regular_rep_moves_diagonal_units() {
        // z_g e_{h,h} z_g* = e_{gh,gh}
        let g = build_group("S3").unwrap();
        let rep = regular_representation(&g);
        let n = g.order();
        for a in 0..n {
            for h in 0..n {
                let mut e = ExactMatrix::zeros(n, n);
                e.set(h, h, crate::scalar::one());
                let moved = &(rep.matrix(a) * &e) * &rep.matrix(a).adjoint();
                let gh = g.mul(a, h);
                let mut expected = ExactMatrix::zeros(n, n);
                expected.set(gh, gh, crate::scalar::one());
                assert_eq!(moved, expected);
            }
        }
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let g = build_group("Z2").unwrap();
        let swap = ExactMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
        let bad = UnitaryRep::new(g, vec![swap.clone(), swap]);
        assert!(matches!(bad, Err(Error::NotRepresentation(_))));
    }
}
