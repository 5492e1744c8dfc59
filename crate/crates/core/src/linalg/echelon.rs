//! Exact rank by incremental sparse row reduction.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;

/// Sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// A row-echelon basis built one row at a time.
///
/// Each pivot row is stored monic (leading entry 1) and keyed by its leading
/// column; only leading entries are eliminated, which keeps sparse systems
/// sparse.
#[derive(Debug, Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns true if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = lead_val.clone();
                    for (&c, v) in pivot {
                        let entry = row.entry(c).or_insert_with(Scalar::zero);
                        *entry = &*entry - &factor * v;
                        if entry.is_zero() {
                            row.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = Scalar::new(num_traits::One::one(), Zero::zero()) / lead_val.clone();
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

pub fn sparse_rows(m: &ExactMatrix) -> impl Iterator<Item = SparseRow> + '_ {
    (0..m.rows()).map(move |i| {
        m.row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    })
}

pub fn exact_rank(m: &ExactMatrix) -> usize {
    let mut basis = EchelonBasis::new();
    for row in sparse_rows(m) {
        basis.insert(row);
    }
    basis.rank()
}
