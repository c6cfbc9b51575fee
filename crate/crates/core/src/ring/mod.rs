//! Exact sparse graded polynomial arithmetic.
//!
//! Every class lives in a [`Context`]: a generator table, a truncation bound
//! equal to the complex dimension of the ambient space and, on `D = P(TX)`,
//! the rewrite rule for the tautological class `h`. Monomials above the bound
//! are dropped during multiplication; since they span an ideal this commutes
//! with every other operation.

mod class;
mod context;
mod monomial;

pub use class::GradedClass;
pub(crate) use class::format_term;
pub use context::{Block, Context, Generator, GeneratorTable, Relation, Space, MAX_N, PARAMETERS};
pub use monomial::Monomial;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn rational(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(p: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(p))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Operations shared by the graded rings that characteristic classes live in.
pub trait GradedAlgebra: Clone + PartialEq + std::fmt::Display + Sized {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, s: &Scalar) -> Self;
    fn graded_component(&self, d: u32) -> Self;
    /// Complex dimension of the ambient space.
    fn top_degree(&self) -> u32;
    fn is_zero(&self) -> bool;
    fn as_constant(&self) -> Option<Scalar>;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&integer(-1)))
    }

    fn is_homogeneous_of(&self, d: u32) -> bool {
        self.sub(&self.graded_component(d))
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }
}

impl GradedAlgebra for GradedClass {
    fn zero_like(&self) -> Self {
        GradedClass::zero(self.context())
    }

    fn one_like(&self) -> Self {
        GradedClass::one(self.context())
    }

    fn add(&self, other: &Self) -> Result<Self> {
        GradedClass::add(self, other)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        GradedClass::mul(self, other)
    }

    fn scale(&self, s: &Scalar) -> Self {
        GradedClass::scale(self, s)
    }

    fn graded_component(&self, d: u32) -> Self {
        GradedClass::graded_component(self, d)
    }

    fn top_degree(&self) -> u32 {
        self.context().bound()
    }

    fn is_zero(&self) -> bool {
        GradedClass::is_zero(self)
    }

    fn as_constant(&self) -> Option<Scalar> {
        GradedClass::as_constant(self)
    }

    fn is_homogeneous_of(&self, d: u32) -> bool {
        GradedClass::is_homogeneous_of(self, d)
    }
}

#[cfg(test)]
mod tests;
