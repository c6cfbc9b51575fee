//! Virtual bundles represented by their Chern character.
//!
//! The Chern character is the primary data; Chern classes and Todd classes are
//! derived through universal power series. Adams operations act on the
//! degree-`d` part of `ch` by `k^d`, so symmetric and exterior powers come from
//! the generating functions
//!
//! ```text
//! sigma_t = exp( sum_k  psi^k t^k / k )
//! lambda_t = exp( sum_k (-1)^(k-1) psi^k t^k / k )
//! ```
//!
//! expanded with Newton's recursion. Everything is generic over
//! [`GradedAlgebra`], so the same code runs on `X`, `D`, `X x X` and the blow-up.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{factorial, integer, GradedAlgebra, GradedClass, Scalar};

/// Degree up to which the universal series are tabulated (covers `4n` for n <= 6).
const SERIES_DEGREE: usize = 32;

/// A (possibly virtual) bundle, stored as its Chern character.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualBundle<A: GradedAlgebra = GradedClass> {
    ch: A,
}

impl<A: GradedAlgebra> fmt::Display for VirtualBundle<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bundle(rank = {}, ch = {})", self.rank(), self.ch)
    }
}

/// `exp(y)` for `y` without a degree-0 part; the series stops at the truncation bound.
pub fn exp_nilpotent<A: GradedAlgebra>(y: &A) -> Result<A> {
    if !y.graded_component(0).is_zero() {
        return Err(Error::NotHomogeneous { expected: 1 });
    }
    let mut result = y.one_like();
    let mut term = y.one_like();
    for k in 1..=y.top_degree() {
        term = term.mul(y)?.scale(&Scalar::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        result = result.add(&term)?;
    }
    Ok(result)
}

/// Coefficients `a_m` of `log(x / (1 - e^{-x})) = sum_{m>=1} a_m x^m`.
pub fn todd_log_coefficients() -> &'static [Scalar] {
    static SERIES: OnceLock<Vec<Scalar>> = OnceLock::new();
    SERIES.get_or_init(|| {
        // f(x) = (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
        let f: Vec<Scalar> = (0..=SERIES_DEGREE + 1)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                Scalar::new(BigInt::from(sign), factorial(k as u32 + 1))
            })
            .collect();
        // g = log f via f g' = f'; d_k is the x^k coefficient of g'.
        let mut d: Vec<Scalar> = Vec::with_capacity(SERIES_DEGREE);
        for k in 0..SERIES_DEGREE {
            let mut v = integer(k as i64 + 1) * &f[k + 1];
            for i in 1..=k {
                v -= &f[i] * &d[k - i];
            }
            d.push(v);
        }
        let mut out = vec![Scalar::zero()];
        out.extend(
            d.iter()
                .enumerate()
                .map(|(k, dk)| -(dk / integer(k as i64 + 1))),
        );
        out
    })
}

fn adams_scale<A: GradedAlgebra>(x: &A, k: i64) -> Result<A> {
    let mut out = x.zero_like();
    let mut factor = integer(1);
    for d in 0..=x.top_degree() {
        let part = x.graded_component(d);
        if !part.is_zero() {
            out = out.add(&part.scale(&factor))?;
        }
        factor *= integer(k);
    }
    Ok(out)
}

impl<A: GradedAlgebra> VirtualBundle<A> {
    pub fn from_ch(ch: A) -> Self {
        VirtualBundle { ch }
    }

    pub fn ch(&self) -> &A {
        &self.ch
    }

    pub fn into_ch(self) -> A {
        self.ch
    }

    /// Degree-0 part of the Chern character. Symbolic when built from formal ranks.
    pub fn rank(&self) -> A {
        self.ch.graded_component(0)
    }

    pub fn rank_scalar(&self) -> Option<Scalar> {
        self.rank().as_constant()
    }

    pub fn trivial(like: &A, rank: i64) -> Self {
        VirtualBundle {
            ch: like.one_like().scale(&integer(rank)),
        }
    }

    /// Line bundle with first Chern class `c1`: `ch = exp(c1)`.
    pub fn line_bundle(c1: &A) -> Result<Self> {
        if !c1.is_homogeneous_of(1) {
            return Err(Error::NotHomogeneous { expected: 1 });
        }
        Ok(VirtualBundle {
            ch: exp_nilpotent(c1)?,
        })
    }

    pub fn c1(&self) -> A {
        self.ch.graded_component(1)
    }

    /// Total Chern class: `c = exp( sum_{d>=1} (-1)^(d-1) (d-1)! ch_d )`.
    pub fn chern_total(&self) -> Result<A> {
        let mut log_c = self.ch.zero_like();
        for d in 1..=self.ch.top_degree() {
            let part = self.ch.graded_component(d);
            if part.is_zero() {
                continue;
            }
            let mut coeff = Scalar::from_integer(factorial(d - 1));
            if d % 2 == 0 {
                coeff = -coeff;
            }
            log_c = log_c.add(&part.scale(&coeff))?;
        }
        exp_nilpotent(&log_c)
    }

    pub fn chern_class(&self, j: u32) -> Result<A> {
        Ok(self.chern_total()?.graded_component(j))
    }

    /// Bundle of the given rank whose Chern classes are `classes[j-1] = c_j`,
    /// through Newton's identities for the power sums `p_k = k! ch_k`.
    pub fn from_chern(classes: &[A], rank: i64) -> Result<Self> {
        let Some(first) = classes.first() else {
            return Err(Error::Guard("from_chern needs at least one class".into()));
        };
        for (i, c) in classes.iter().enumerate() {
            if !c.is_homogeneous_of(i as u32 + 1) {
                return Err(Error::NotHomogeneous {
                    expected: i as u32 + 1,
                });
            }
        }
        let top = first.top_degree() as usize;
        let zero = first.zero_like();
        let c = |j: usize| classes.get(j - 1).cloned().unwrap_or_else(|| zero.clone());
        let mut p: Vec<A> = vec![zero.clone()];
        let mut ch = first.one_like().scale(&integer(rank));
        for k in 1..=top {
            let sign = |e: usize| if e.is_multiple_of(2) { integer(1) } else { integer(-1) };
            let mut pk = c(k).scale(&(sign(k - 1) * integer(k as i64)));
            for i in 1..k {
                pk = pk.add(&c(k - i).mul(&p[i])?.scale(&sign(k - 1 + i)))?;
            }
            ch = ch.add(&pk.scale(&Scalar::new(BigInt::one(), factorial(k as u32))))?;
            p.push(pk);
        }
        Ok(VirtualBundle { ch })
    }

    pub fn dual(&self) -> Result<Self> {
        Ok(VirtualBundle {
            ch: adams_scale(&self.ch, -1)?,
        })
    }

    pub fn adams(&self, k: u32) -> Result<Self> {
        Ok(VirtualBundle {
            ch: adams_scale(&self.ch, k as i64)?,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(VirtualBundle {
            ch: self.ch.add(&other.ch)?,
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(VirtualBundle {
            ch: self.ch.sub(&other.ch)?,
        })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(VirtualBundle {
            ch: self.ch.mul(&other.ch)?,
        })
    }

    /// Tensor product with the line bundle of first Chern class `c1`.
    pub fn twist(&self, c1: &A) -> Result<Self> {
        self.tensor(&Self::line_bundle(c1)?)
    }

    /// `[1, x_1, ..., x_m]` with `m * x_m = sum_{k=1}^m sign^(k-1) psi^k * x_{m-k}`.
    fn newton_series(&self, m: u32, alternating: bool) -> Result<Vec<A>> {
        let mut psi = Vec::with_capacity(m as usize);
        for k in 1..=m {
            psi.push(adams_scale(&self.ch, k as i64)?);
        }
        let mut out = vec![self.ch.one_like()];
        for j in 1..=m as usize {
            let mut acc = self.ch.zero_like();
            for k in 1..=j {
                let mut term = psi[k - 1].mul(&out[j - k])?;
                if alternating && k % 2 == 0 {
                    term = term.scale(&integer(-1));
                }
                acc = acc.add(&term)?;
            }
            out.push(acc.scale(&Scalar::new(BigInt::one(), BigInt::from(j))));
        }
        Ok(out)
    }

    /// Exterior powers `Lambda^0 .. Lambda^m`.
    pub fn ext_powers(&self, m: u32) -> Result<Vec<Self>> {
        Ok(self
            .newton_series(m, true)?
            .into_iter()
            .map(Self::from_ch)
            .collect())
    }

    /// Symmetric powers `Sym^0 .. Sym^m`.
    pub fn sym_powers(&self, m: u32) -> Result<Vec<Self>> {
        Ok(self
            .newton_series(m, false)?
            .into_iter()
            .map(Self::from_ch)
            .collect())
    }

    pub fn ext_power(&self, j: u32) -> Result<Self> {
        Ok(self.ext_powers(j)?.pop().expect("nonempty"))
    }

    pub fn sym_power(&self, t: u32) -> Result<Self> {
        Ok(self.sym_powers(t)?.pop().expect("nonempty"))
    }

    /// Todd class `exp( sum_m a_m m! ch_m )` with `a_m` from [`todd_log_coefficients`].
    /// Multiplicative, so a virtual difference gives the quotient of Todd classes.
    pub fn todd(&self) -> Result<A> {
        let coeffs = todd_log_coefficients();
        let mut log_td = self.ch.zero_like();
        for m in 1..=self.ch.top_degree() {
            let a = &coeffs[m as usize];
            if a.is_zero() {
                continue;
            }
            let part = self.ch.graded_component(m);
            if part.is_zero() {
                continue;
            }
            log_td = log_td.add(&part.scale(&(a * Scalar::from_integer(factorial(m)))))?;
        }
        exp_nilpotent(&log_td)
    }
}

/// `rank(V) c1(W) - rank(W) c1(V)`, the first Chern class of `Hom(V, W)` for
/// bundles of numeric rank.
pub fn hom_c1<A: GradedAlgebra>(v: &VirtualBundle<A>, w: &VirtualBundle<A>) -> Result<A> {
    let rv = v
        .rank_scalar()
        .ok_or_else(|| Error::Eval("symbolic rank".into()))?;
    let rw = w
        .rank_scalar()
        .ok_or_else(|| Error::Eval("symbolic rank".into()))?;
    w.c1().scale(&rv).sub(&v.c1().scale(&rw))
}
