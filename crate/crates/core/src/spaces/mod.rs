//! Cohomology models of `X`, `X x X`, `D = P(TX)` and the blow-up `Y` of the
//! diagonal, with the maps of the blow-up square
//!
//! ```text
//!        iota
//!    D ------> Y
//!    |         |
//!  p |         | beta
//!    v         v
//!    X ------> X x X
//!       delta
//! ```
//!
//! `H^*(X)` is modeled freely on its generators (truncated at `2n`); `H^*(D)`
//! is `H^*(X)[h]` modulo the Grothendieck relation; `H^*(X x X)` is the
//! Kunneth product of two copies of the `X` model. A class on `Y` is a pair
//! `beta^* z + iota_* y`. Diagonal classes `delta_* w` are never expanded
//! into Kunneth components: they are only carried into integrals, where the
//! projection formula removes them.

mod formal;
mod yclass;

use std::sync::Arc;

pub use formal::FormalScalar;
pub use yclass::{DiagonalClass, YClass};

use crate::error::{Error, Result};
use crate::lambda::VirtualBundle;
use crate::ring::{Context, GradedClass, Relation, Space};

/// The four spaces for one value of `n`, with index maps for every pullback
/// and pushforward.
pub struct Geometry {
    n: u32,
    x: Arc<Context>,
    xx: Arc<Context>,
    d: Arc<Context>,
    x_to_d: Vec<Option<usize>>,
    d_to_x: Vec<Option<usize>>,
    x_to_f1: Vec<Option<usize>>,
    x_to_f2: Vec<Option<usize>>,
    xx_to_x: Vec<Option<usize>>,
}

impl std::fmt::Debug for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Geometry({})", self.d.describe())
    }
}

impl PartialEq for Geometry {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.d == *other.d
    }
}

fn name_map(
    from: &Context,
    to: &Context,
    rename: impl Fn(&str) -> Option<String>,
) -> Vec<Option<usize>> {
    from.table()
        .iter()
        .map(|g| rename(&g.name).and_then(|name| to.table().get(&name)))
        .collect()
}

fn is_parameter(name: &str) -> bool {
    crate::ring::PARAMETERS.contains(&name)
}

impl Geometry {
    pub fn new(n: u32) -> Result<Arc<Self>> {
        Self::with_relation(n, Relation::Grothendieck)
    }

    /// Geometry whose `D` uses the given rewrite rule (negative controls and
    /// the unreduced model).
    pub fn with_relation(n: u32, relation: Relation) -> Result<Arc<Self>> {
        let x = Context::new(Space::X, n)?;
        let xx = Context::new(Space::XX, n)?;
        let d = Context::projective_bundle(n, relation)?;
        let same = |s: &str| Some(s.to_string());
        let x_to_d = name_map(&x, &d, same);
        let d_to_x = name_map(&d, &x, |s| (s != "h").then(|| s.to_string()));
        let x_to_f1 = name_map(&x, &xx, |s| {
            Some(if is_parameter(s) { s.to_string() } else { format!("f1_{s}") })
        });
        let x_to_f2 = name_map(&x, &xx, |s| {
            Some(if is_parameter(s) { s.to_string() } else { format!("f2_{s}") })
        });
        let xx_to_x = name_map(&xx, &x, |s| {
            Some(
                s.strip_prefix("f1_")
                    .or_else(|| s.strip_prefix("f2_"))
                    .unwrap_or(s)
                    .to_string(),
            )
        });
        Ok(Arc::new(Geometry {
            n,
            x,
            xx,
            d,
            x_to_d,
            d_to_x,
            x_to_f1,
            x_to_f2,
            xx_to_x,
        }))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn x(&self) -> &Arc<Context> {
        &self.x
    }

    pub fn xx(&self) -> &Arc<Context> {
        &self.xx
    }

    pub fn d(&self) -> &Arc<Context> {
        &self.d
    }

    fn expect(&self, class: &GradedClass, ctx: &Arc<Context>) -> Result<()> {
        if **class.context() == **ctx {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: ctx.describe(),
                found: class.context().describe(),
            })
        }
    }

    /// Named generator on `X`.
    pub fn x_class(&self, name: &str) -> Result<GradedClass> {
        GradedClass::generator(&self.x, name)
    }

    pub fn xx_class(&self, name: &str) -> Result<GradedClass> {
        GradedClass::generator(&self.xx, name)
    }

    pub fn d_class(&self, name: &str) -> Result<GradedClass> {
        GradedClass::generator(&self.d, name)
    }

    pub fn pullback_p(&self, x: &GradedClass) -> Result<GradedClass> {
        self.expect(x, &self.x)?;
        x.rename_into(&self.d, &self.x_to_d)
    }

    pub fn pullback_f1(&self, x: &GradedClass) -> Result<GradedClass> {
        self.expect(x, &self.x)?;
        x.rename_into(&self.xx, &self.x_to_f1)
    }

    pub fn pullback_f2(&self, x: &GradedClass) -> Result<GradedClass> {
        self.expect(x, &self.x)?;
        x.rename_into(&self.xx, &self.x_to_f2)
    }

    /// Restriction to the diagonal: `delta^*(f1^* x * f2^* y) = x * y`.
    pub fn pullback_delta(&self, z: &GradedClass) -> Result<GradedClass> {
        self.expect(z, &self.xx)?;
        z.rename_into(&self.x, &self.xx_to_x)
    }

    pub fn pullback_beta(self: &Arc<Self>, z: &GradedClass) -> Result<YClass> {
        self.expect(z, &self.xx)?;
        Ok(YClass::from_parts(
            self,
            z.clone(),
            GradedClass::zero(&self.d),
        ))
    }

    /// `iota^*(beta^* z + iota_* y) = p^* delta^* z - h y`.
    pub fn pullback_iota(&self, y: &YClass) -> Result<GradedClass> {
        y.ensure_geometry(self)?;
        let h = self.d_class("h")?;
        self.restrict_to_exceptional(y.pullback_part())?
            .sub(&h.mul(y.exceptional_part())?)
    }

    /// `iota^* beta^* = p^* delta^*`.
    pub fn restrict_to_exceptional(&self, z: &GradedClass) -> Result<GradedClass> {
        self.pullback_p(&self.pullback_delta(z)?)
    }

    /// Integration along the fibres of `p`: the coefficient of `h^{2n-1}` in
    /// normal form. Lowers degree by `2n - 1`.
    pub fn pushforward_p(&self, y: &GradedClass) -> Result<GradedClass> {
        self.expect(y, &self.d)?;
        if self.d.relation() == Some(Relation::Absent) {
            return Err(Error::SpaceMismatch {
                expected: "D with its Grothendieck relation".into(),
                found: self.d.describe(),
            });
        }
        y.normal_form()
            .coefficient_of("h", 2 * self.n - 1)?
            .rename_into(&self.x, &self.d_to_x)
    }

    pub fn pushforward_iota(self: &Arc<Self>, y: &GradedClass) -> Result<YClass> {
        self.expect(y, &self.d)?;
        Ok(YClass::from_parts(
            self,
            GradedClass::zero(&self.xx),
            y.clone(),
        ))
    }

    /// `[D] = iota_* 1`.
    pub fn exceptional_divisor(self: &Arc<Self>) -> YClass {
        YClass::from_parts(
            self,
            GradedClass::zero(&self.xx),
            GradedClass::one(&self.d),
        )
    }

    /// `beta_*(beta^* z + iota_* y) = z + delta_*(p_* y)`, keeping the diagonal term formal.
    pub fn pushforward_beta_formal(self: &Arc<Self>, y: &YClass) -> Result<DiagonalClass> {
        y.ensure_geometry(self)?;
        let inner = self.pushforward_p(y.exceptional_part())?;
        Ok(DiagonalClass::from_parts(
            self,
            y.pullback_part().clone(),
            inner,
        ))
    }

    /// `beta_*` as a class on `X x X`; fails if a nonzero `delta_*` term remains.
    pub fn pushforward_beta(self: &Arc<Self>, y: &YClass) -> Result<GradedClass> {
        self.pushforward_beta_formal(y)?.materialize()
    }

    /// `\int` over the space the class lives on (`X`, `X x X` or `D`).
    pub fn integrate(&self, class: &GradedClass) -> Result<FormalScalar> {
        match class.space() {
            Space::X => {
                self.expect(class, &self.x)?;
                FormalScalar::integral(class)
            }
            Space::D => {
                self.expect(class, &self.d)?;
                let top = self.d.bound();
                if !class.is_homogeneous_of(top) {
                    return Err(Error::NotTopDegree {
                        top,
                        class: class.to_string(),
                    });
                }
                FormalScalar::integral(&self.pushforward_p(class)?)
            }
            Space::XX => {
                self.expect(class, &self.xx)?;
                self.integrate_kunneth(class)
            }
            Space::Y => unreachable!("no GradedClass lives on Y"),
        }
    }

    /// `\int_{X x X} f1^* m1 * f2^* m2 = \int_X m1 * \int_X m2`.
    fn integrate_kunneth(&self, class: &GradedClass) -> Result<FormalScalar> {
        let top = self.xx.bound();
        if !class.is_homogeneous_of(top) {
            return Err(Error::NotTopDegree {
                top,
                class: class.to_string(),
            });
        }
        let mut out = FormalScalar::zero(&self.x);
        let len = self.x.table().len();
        let params = crate::ring::PARAMETERS.len();
        for (m, c) in class.terms() {
            let mut first = vec![0; len];
            let mut second = vec![0; len];
            for (i, e) in m.exponents().iter().enumerate() {
                let name = &self.xx.table().generator(i).name;
                let j = self.xx_to_x[i].expect("every XX generator maps to X");
                if name.starts_with("f1_") {
                    first[j] += e;
                } else if name.starts_with("f2_") {
                    second[j] += e;
                }
            }
            out.push(
                m.exponents()[..params].to_vec(),
                vec![first, second],
                c.clone(),
            );
        }
        Ok(out)
    }

    /// `\int_Y (beta^* z + iota_* y) = \int_{X x X} z + \int_D y`.
    pub fn integrate_y(&self, y: &YClass) -> Result<FormalScalar> {
        y.ensure_geometry(self)?;
        let top = Space::Y.dimension(self.n);
        let z = y.pullback_part().graded_component(top);
        let e = y.exceptional_part().graded_component(top - 1);
        if z != *y.pullback_part() || e != *y.exceptional_part() {
            return Err(Error::NotTopDegree {
                top,
                class: y.to_string(),
            });
        }
        self.integrate(&z)?.add(&self.integrate(&e)?)
    }

    /// `\int_{X x X} (z + delta_* w) = \int_{X x X} z + \int_X w`.
    pub fn integrate_diagonal(&self, c: &DiagonalClass) -> Result<FormalScalar> {
        c.ensure_geometry(self)?;
        let top = 2 * self.n;
        let kunneth = if c.kunneth().is_zero() {
            FormalScalar::zero(&self.x)
        } else {
            self.integrate(c.kunneth())?
        };
        let w = c.diagonal();
        if !w.is_homogeneous_of(top) {
            return Err(Error::NotTopDegree {
                top: 2 * top,
                class: c.to_string(),
            });
        }
        kunneth.add(&self.integrate(w)?)
    }

    /// `TX` on `X` with odd Chern classes absent: `c = 1 + c2 + c4 + ... + c{2n}`.
    pub fn tangent_bundle(&self) -> Result<VirtualBundle> {
        let mut classes = Vec::new();
        for j in 1..=2 * self.n {
            classes.push(if j % 2 == 0 {
                self.x_class(&format!("c{j}"))?
            } else {
                GradedClass::zero(&self.x)
            });
        }
        VirtualBundle::from_chern(&classes, 2 * self.n as i64)
    }

    /// `p^* TX` on `D`.
    pub fn tangent_bundle_on_d(&self) -> Result<VirtualBundle> {
        Ok(VirtualBundle::from_ch(
            self.pullback_p(self.tangent_bundle()?.ch())?,
        ))
    }

    /// Tautological line `ell` in `p^* TX`, with `c1(ell) = -h`.
    pub fn tautological_line(&self) -> Result<VirtualBundle> {
        VirtualBundle::line_bundle(&self.d_class("h")?.neg())
    }

    /// Relative tangent bundle `T_p = p^* TX (x) ell^{-1} - O` from the Euler sequence.
    pub fn relative_tangent(&self) -> Result<VirtualBundle> {
        let tx = self.tangent_bundle_on_d()?;
        tx.twist(&self.d_class("h")?)?
            .difference(&VirtualBundle::trivial(&GradedClass::zero(&self.d), 1))
    }
}
