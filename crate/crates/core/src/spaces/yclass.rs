use std::fmt;
use std::sync::Arc;

use super::Geometry;
use crate::error::{Error, Result};
use crate::ring::{GradedAlgebra, GradedClass, Scalar, Space};

/// A class `beta^*(z) + iota_*(y)` on the blow-up, with `z` on `X x X` and `y` on `D`.
///
/// The pair is not canonical (the key relation of `H^*(Y)` is not imposed);
/// equality compares both parts.
#[derive(Clone, Debug)]
pub struct YClass {
    geometry: Arc<Geometry>,
    pullback: GradedClass,
    exceptional: GradedClass,
}

impl PartialEq for YClass {
    fn eq(&self, other: &Self) -> bool {
        *self.geometry == *other.geometry
            && self.pullback == other.pullback
            && self.exceptional == other.exceptional
    }
}

impl YClass {
    pub(crate) fn from_parts(
        geometry: &Arc<Geometry>,
        pullback: GradedClass,
        exceptional: GradedClass,
    ) -> Self {
        YClass {
            geometry: geometry.clone(),
            pullback,
            exceptional,
        }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn pullback_part(&self) -> &GradedClass {
        &self.pullback
    }

    pub fn exceptional_part(&self) -> &GradedClass {
        &self.exceptional
    }

    pub(crate) fn ensure_geometry(&self, g: &Geometry) -> Result<()> {
        if *self.geometry == *g {
            Ok(())
        } else {
            Err(Error::IncompatibleContext {
                left: format!("{:?}", self.geometry),
                right: format!("{g:?}"),
            })
        }
    }

    fn same(&self, other: &Self) -> Result<()> {
        other.ensure_geometry(&self.geometry)
    }
}

impl fmt::Display for YClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pullback.is_zero(), self.exceptional.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "pull_beta({})", self.pullback),
            (true, false) => write!(f, "push_iota({})", self.exceptional),
            (false, false) => write!(
                f,
                "pull_beta({}) + push_iota({})",
                self.pullback, self.exceptional
            ),
        }
    }
}

impl GradedAlgebra for YClass {
    fn zero_like(&self) -> Self {
        YClass {
            geometry: self.geometry.clone(),
            pullback: self.pullback.zero_like(),
            exceptional: self.exceptional.zero_like(),
        }
    }

    fn one_like(&self) -> Self {
        YClass {
            geometry: self.geometry.clone(),
            pullback: self.pullback.one_like(),
            exceptional: self.exceptional.zero_like(),
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(YClass {
            geometry: self.geometry.clone(),
            pullback: self.pullback.add(&other.pullback)?,
            exceptional: self.exceptional.add(&other.exceptional)?,
        })
    }

    /// Projection formula plus the self-intersection `iota^* iota_* y = -h y`.
    fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let g = &self.geometry;
        let h = g.d_class("h")?;
        let r1 = g.restrict_to_exceptional(&self.pullback)?;
        let r2 = g.restrict_to_exceptional(&other.pullback)?;
        let exceptional = r1
            .mul(&other.exceptional)?
            .add(&self.exceptional.mul(&r2)?)?
            .sub(&self.exceptional.mul(&other.exceptional)?.mul(&h)?)?;
        Ok(YClass {
            geometry: g.clone(),
            pullback: self.pullback.mul(&other.pullback)?,
            exceptional,
        })
    }

    fn scale(&self, s: &Scalar) -> Self {
        YClass {
            geometry: self.geometry.clone(),
            pullback: self.pullback.scale(s),
            exceptional: self.exceptional.scale(s),
        }
    }

    /// `iota_*` raises degree by one.
    fn graded_component(&self, d: u32) -> Self {
        let exceptional = match d {
            0 => self.exceptional.zero_like(),
            d => self.exceptional.graded_component(d - 1),
        };
        YClass {
            geometry: self.geometry.clone(),
            pullback: self.pullback.graded_component(d),
            exceptional,
        }
    }

    fn top_degree(&self) -> u32 {
        Space::Y.dimension(self.geometry.n())
    }

    fn is_zero(&self) -> bool {
        self.pullback.is_zero() && self.exceptional.is_zero()
    }

    fn as_constant(&self) -> Option<Scalar> {
        if self.exceptional.is_zero() {
            self.pullback.as_constant()
        } else {
            None
        }
    }
}

/// A class `z + delta_*(w)` on `X x X` with the diagonal term kept formal.
#[derive(Clone, Debug)]
pub struct DiagonalClass {
    geometry: Arc<Geometry>,
    kunneth: GradedClass,
    diagonal: GradedClass,
}

impl PartialEq for DiagonalClass {
    fn eq(&self, other: &Self) -> bool {
        *self.geometry == *other.geometry
            && self.kunneth == other.kunneth
            && self.diagonal == other.diagonal
    }
}

impl DiagonalClass {
    pub(crate) fn from_parts(
        geometry: &Arc<Geometry>,
        kunneth: GradedClass,
        diagonal: GradedClass,
    ) -> Self {
        DiagonalClass {
            geometry: geometry.clone(),
            kunneth,
            diagonal,
        }
    }

    pub fn from_kunneth(geometry: &Arc<Geometry>, z: GradedClass) -> Self {
        let zero = GradedClass::zero(geometry.x());
        Self::from_parts(geometry, z, zero)
    }

    pub fn kunneth(&self) -> &GradedClass {
        &self.kunneth
    }

    /// The class `w` in `delta_*(w)`.
    pub fn diagonal(&self) -> &GradedClass {
        &self.diagonal
    }

    pub(crate) fn ensure_geometry(&self, g: &Geometry) -> Result<()> {
        if *self.geometry == *g {
            Ok(())
        } else {
            Err(Error::IncompatibleContext {
                left: format!("{:?}", self.geometry),
                right: format!("{g:?}"),
            })
        }
    }

    /// The class on `X x X`, provided no diagonal term is left.
    pub fn materialize(&self) -> Result<GradedClass> {
        if self.diagonal.is_zero() {
            Ok(self.kunneth.clone())
        } else {
            Err(Error::DiagonalMaterialization {
                inner: self.diagonal.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.ensure_geometry(&self.geometry)?;
        Ok(DiagonalClass {
            geometry: self.geometry.clone(),
            kunneth: self.kunneth.add(&other.kunneth)?,
            diagonal: self.diagonal.add(&other.diagonal)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        DiagonalClass {
            geometry: self.geometry.clone(),
            kunneth: self.kunneth.scale(s),
            diagonal: self.diagonal.scale(s),
        }
    }

    /// `(z1 + delta_* w1)(z2 + delta_* w2)
    ///   = z1 z2 + delta_*(delta^* z1 w2 + w1 delta^* z2 + w1 w2 c_{2n}(TX))`,
    /// the last term from the normal bundle `TX` of the diagonal.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        other.ensure_geometry(&self.geometry)?;
        let g = &self.geometry;
        let euler = g.x_class(&format!("c{}", 2 * g.n()))?;
        let diagonal = g
            .pullback_delta(&self.kunneth)?
            .mul(&other.diagonal)?
            .add(&self.diagonal.mul(&g.pullback_delta(&other.kunneth)?)?)?
            .add(&self.diagonal.mul(&other.diagonal)?.mul(&euler)?)?;
        Ok(DiagonalClass {
            geometry: g.clone(),
            kunneth: self.kunneth.mul(&other.kunneth)?,
            diagonal,
        })
    }
}

impl fmt::Display for DiagonalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kunneth.is_zero(), self.diagonal.is_zero()) {
            (_, true) => write!(f, "{}", self.kunneth),
            (true, false) => write!(f, "delta_*({})", self.diagonal),
            (false, false) => write!(f, "{} + delta_*({})", self.kunneth, self.diagonal),
        }
    }
}
