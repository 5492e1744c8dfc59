use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{self, serde_str, Scalar};

/// A point of `S²` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpherePoint {
    #[serde(with = "serde_str::rational")]
    x: BigRational,
    #[serde(with = "serde_str::rational")]
    y: BigRational,
    #[serde(with = "serde_str::rational")]
    z: BigRational,
}

impl SpherePoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Result<Self> {
        if &x * &x + &y * &y + &z * &z != BigRational::one() {
            return Err(Error::NotUnitPoint(format!(
                "({}, {}, {})",
                scalar::fmt_rational(&x),
                scalar::fmt_rational(&y),
                scalar::fmt_rational(&z)
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn north() -> Self {
        Self {
            x: scalar::int(0),
            y: scalar::int(0),
            z: scalar::int(1),
        }
    }

    /// Inverse stereographic projection of the rational plane point `(a, b)`.
    pub fn from_plane(a: &BigRational, b: &BigRational) -> Self {
        let n2 = a * a + b * b;
        let den = &n2 + BigRational::one();
        let two = scalar::int(2);
        Self {
            x: &two * a / &den,
            y: &two * b / &den,
            z: (&n2 - BigRational::one()) / &den,
        }
    }

    /// A pseudo-random rational point with small heights.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut coord = || {
            BigRational::new(
                BigInt::from(rng.gen_range(-6i64..=6)),
                BigInt::from(rng.gen_range(1i64..=5)),
            )
        };
        let (a, b) = (coord(), coord());
        Self::from_plane(&a, &b)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn z(&self) -> &BigRational {
        &self.z
    }
}

/// `½[[1+z, x−iy], [x+iy, 1−z]]`, padded with zeros to `nu × nu`.
pub fn bott_projection(pt: &SpherePoint, nu: usize) -> Result<ExactMatrix> {
    if nu < 2 {
        return Err(Error::Dimension(format!("Bott projection needs nu >= 2, got {nu}")));
    }
    // Re-check: points can be deserialized or built by hand.
    let pt = SpherePoint::new(pt.x.clone(), pt.y.clone(), pt.z.clone())?;
    let half = scalar::rat(1, 2);
    let one = BigRational::one();
    let mut m = ExactMatrix::zeros(nu, nu);
    m.set(0, 0, scalar::real(&half * (&one + &pt.z)));
    m.set(1, 1, scalar::real(&half * (&one - &pt.z)));
    m.set(0, 1, Scalar::new(&half * &pt.x, -(&half * &pt.y)));
    m.set(1, 0, Scalar::new(&half * &pt.x, &half * &pt.y));
    Ok(m)
}
