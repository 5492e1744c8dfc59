use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar;
use crate::stages::StagePoint;

/// An element of `A_n = C(X_n, M_{νr(n)})` known at finitely many points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFunc {
    stage: usize,
    dim: usize,
    values: BTreeMap<StagePoint, ExactMatrix>,
    projection: bool,
}

impl MatFunc {
    pub fn new(stage: usize, dim: usize) -> Self {
        Self {
            stage,
            dim,
            values: BTreeMap::new(),
            projection: false,
        }
    }

    pub fn from_fn<'a>(
        stage: usize,
        dim: usize,
        points: impl IntoIterator<Item = &'a StagePoint>,
        mut f: impl FnMut(&StagePoint) -> Result<ExactMatrix>,
    ) -> Result<Self> {
        let mut out = Self::new(stage, dim);
        for pt in points {
            let v = f(pt)?;
            out.insert(pt.clone(), v)?;
        }
        Ok(out)
    }

    pub fn constant<'a>(stage: usize, value: &ExactMatrix, points: impl IntoIterator<Item = &'a StagePoint>) -> Result<Self> {
        Self::from_fn(stage, value.rows(), points, |_| Ok(value.clone()))
    }

    /// Independent random Gaussian-integer values (entries in `[-2, 2] + i[-2, 2]`).
    pub fn random<'a>(
        stage: usize,
        dim: usize,
        points: impl IntoIterator<Item = &'a StagePoint>,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        Self::from_fn(stage, dim, points, |_| Ok(random_gaussian_matrix(dim, rng)))
    }

    pub fn insert(&mut self, pt: StagePoint, value: ExactMatrix) -> Result<()> {
        if pt.stage() != self.stage {
            return Err(Error::Dimension(format!(
                "point of stage {} in a stage-{} function",
                pt.stage(),
                self.stage
            )));
        }
        if value.rows() != self.dim || value.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "value of size {}x{} in a function with fiber {}",
                value.rows(),
                value.cols(),
                self.dim
            )));
        }
        self.values.insert(pt, value);
        Ok(())
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, pt: &StagePoint) -> Result<&ExactMatrix> {
        self.values
            .get(pt)
            .ok_or_else(|| Error::MissingPoint(format!("stage {} point with {} coordinates", pt.stage(), pt.coords().len())))
    }

    pub fn points(&self) -> impl Iterator<Item = &StagePoint> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StagePoint, &ExactMatrix)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_tagged_projection(&self) -> bool {
        self.projection
    }

    /// Tags the function as a projection after checking `v² = v = v*` exactly
    /// at every known point.
    pub fn tag_projection(mut self) -> Result<Self> {
        if let Some((_, v)) = self.values.iter().find(|(_, v)| !v.is_projection()) {
            return Err(Error::Inconsistent(format!(
                "value of size {} is not a projection",
                v.rows()
            )));
        }
        self.projection = true;
        Ok(self)
    }

    pub fn map(&self, mut f: impl FnMut(&ExactMatrix) -> ExactMatrix) -> Self {
        Self {
            stage: self.stage,
            dim: self.dim,
            values: self.values.iter().map(|(p, v)| (p.clone(), f(v))).collect(),
            projection: false,
        }
    }

    /// Pointwise binary operation on the common points.
    pub fn zip_with(&self, other: &Self, mut f: impl FnMut(&ExactMatrix, &ExactMatrix) -> ExactMatrix) -> Result<Self> {
        if self.stage != other.stage || self.dim != other.dim {
            return Err(Error::Dimension("functions on different stages".into()));
        }
        let mut out = Self::new(self.stage, self.dim);
        for (p, v) in &self.values {
            if let Some(w) = other.values.get(p) {
                out.values.insert(p.clone(), f(v, w));
            }
        }
        Ok(out)
    }
}

pub fn random_gaussian_matrix(dim: usize, rng: &mut impl Rng) -> ExactMatrix {
    ExactMatrix::from_fn(dim, dim, |_, _| scalar::gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
}
