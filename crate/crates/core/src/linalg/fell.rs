//! The intertwiner between `z ⊗ z` and `z ⊗ 1` for the left regular
//! representation `z`.

use crate::error::{Error, Result};
use crate::group::{regular_permutations, GroupTable};
use crate::linalg::{ExactMatrix, Permutation};

/// `e_g ⊗ e_h ↦ e_g ⊗ e_{g⁻¹h}` in standard Kronecker layout (first factor
/// outer).
pub fn fell_absorption_permutation(group: &GroupTable) -> Permutation {
    let n = group.order();
    let image = (0..n * n)
        .map(|idx| {
            let (g, h) = (idx / n, idx % n);
            g * n + group.mul(group.inv(g), h)
        })
        .collect();
    Permutation::from_image(image).expect("(g, h) -> (g, g^-1 h) is a bijection")
}

/// The Fell absorption unitary `w`, verified exactly against
/// `w (z_g ⊗ z_g) w* = z_g ⊗ 1` for every group element.
pub fn fell_absorption_unitary(group: &GroupTable) -> Result<ExactMatrix> {
    let w = fell_absorption_permutation(group);
    verify_fell_absorption(group, &w)?;
    Ok(w.to_matrix())
}

/// Checks the intertwining identity with full matrix products.
pub fn verify_fell_absorption(group: &GroupTable, w: &Permutation) -> Result<()> {
    let n = group.order();
    let wm = w.to_matrix();
    let wm_star = wm.adjoint();
    let one = ExactMatrix::identity(n);
    for (g, z) in regular_permutations(group).iter().enumerate() {
        let z = z.to_matrix();
        let lhs = &(&wm * &z.kron_with_cap(&z, usize::MAX)?) * &wm_star;
        let rhs = z.kron_with_cap(&one, usize::MAX)?;
        if let Some((i, j)) = lhs.first_difference(&rhs) {
            return Err(Error::Inconsistent(format!(
                "Fell absorption fails for {} at entry ({i}, {j})",
                group.label(g)
            )));
        }
    }
    Ok(())
}
