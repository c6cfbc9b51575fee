use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::context::{Context, Space};
use super::monomial::Monomial;
use super::Scalar;
use crate::error::{Error, Result};

/// An element of a truncated graded polynomial ring with rational coefficients.
///
/// Classes built through the public constructors and arithmetic are always in
/// normal form: no stored zero coefficients, every monomial admissible, and on
/// `D` every power of `h` below `2n`.
#[derive(Clone)]
pub struct GradedClass {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedClass[{}]({})", self.ctx.describe(), self)
    }
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        GradedClass {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, Scalar::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ctx.table().len()), c);
        }
        GradedClass {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn integer(ctx: &Arc<Context>, c: i64) -> Self {
        Self::constant(ctx, Scalar::from_integer(c.into()))
    }

    pub fn generator(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        Self::monomial(ctx, &[(name, 1)])
    }

    /// The product of the named generators raised to the given powers.
    pub fn monomial(ctx: &Arc<Context>, factors: &[(&str, u32)]) -> Result<Self> {
        let mut exps = vec![0; ctx.table().len()];
        for (name, e) in factors {
            let i = ctx.table().get(name).ok_or_else(|| Error::UnknownGenerator {
                name: name.to_string(),
                context: ctx.describe(),
            })?;
            exps[i] += e;
        }
        let degree = ctx.degree_of(&exps);
        Ok(Self::from_terms(ctx, [(Monomial::new(exps, degree), Scalar::one())]))
    }

    /// Builds a class from raw terms, truncating and reducing to normal form.
    pub fn from_terms(
        ctx: &Arc<Context>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            ctx.reduce_into(m, c, &mut acc);
        }
        Self::finish(ctx, acc)
    }

    /// Builds a class from raw terms, truncating but leaving powers of `h`
    /// untouched. Use [`GradedClass::normal_form`] to reduce it.
    pub fn from_terms_unreduced(
        ctx: &Arc<Context>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if ctx.admissible(&m) {
                *acc.entry(m).or_insert_with(Scalar::zero) += c;
            }
        }
        Self::finish(ctx, acc)
    }

    /// Raw monomial with the given exponent vector (degree computed from the table).
    pub fn raw_monomial(ctx: &Context, exps: Vec<u32>) -> Monomial {
        let degree = ctx.degree_of(&exps);
        Monomial::new(exps, degree)
    }

    fn finish(ctx: &Arc<Context>, mut acc: BTreeMap<Monomial, Scalar>) -> Self {
        acc.retain(|_, c| !c.is_zero());
        GradedClass {
            ctx: ctx.clone(),
            terms: acc,
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn space(&self) -> Space {
        self.ctx.space()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if the class is a rational constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut acc = self.terms.clone();
        for (m, c) in &other.terms {
            *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c;
        }
        Ok(Self::finish(&self.ctx, acc))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        GradedClass {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Cup product, truncated eagerly and reduced to normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let bound = self.ctx.bound();
        let mut acc = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > bound {
                    // terms are sorted by degree
                    break;
                }
                self.ctx.reduce_into(m1.mul(m2), c1 * c2, &mut acc);
            }
        }
        Ok(Self::finish(&self.ctx, acc))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        result
    }

    /// Rewrites every power `h^e` with `e >= 2n` using the relation of the context.
    /// Idempotent; a no-op on spaces without `h`.
    pub fn normal_form(&self) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Sum of the terms of complex degree exactly `d`; the degree-0 symbols do
    /// not contribute to the grading.
    pub fn graded_component(&self, d: u32) -> Self {
        GradedClass {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Coefficient of `name^j`, as a class in the same context.
    pub fn coefficient_of(&self, name: &str, j: u32) -> Result<Self> {
        let i = self.index_of(name)?;
        let len = self.ctx.table().len();
        let deg = self.ctx.table().generator(i).degree;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[i] == j)
            .map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps[i] = 0;
                debug_assert_eq!(exps.len(), len);
                (Monomial::new(exps, m.degree() - j * deg), c.clone())
            })
            .collect();
        Ok(GradedClass {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// The class coefficient of `N^j` when the class is read as a polynomial in `N`.
    pub fn coefficient_in_n(&self, j: u32) -> Self {
        self.coefficient_of("N", j).expect("N is in every table")
    }

    /// Highest power of `name` occurring, or `None` for the zero class.
    pub fn degree_in(&self, name: &str) -> Result<Option<u32>> {
        let i = self.index_of(name)?;
        Ok(self.terms.keys().map(|m| m.exponents()[i]).max())
    }

    pub fn contains_generator(&self, name: &str) -> bool {
        match self.ctx.table().get(name) {
            Some(i) => self.terms.keys().any(|m| m.exponents()[i] > 0),
            None => false,
        }
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.ctx
            .table()
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator {
                name: name.to_string(),
                context: self.ctx.describe(),
            })
    }

    /// Ring homomorphism sending generator `i` to generator `map[i]` of `target`.
    /// Generators mapped to `None` must not occur.
    pub fn rename_into(&self, target: &Arc<Context>, map: &[Option<usize>]) -> Result<Self> {
        let len = target.table().len();
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; len];
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::SpaceMismatch {
                            expected: target.describe(),
                            found: format!(
                                "{} (generator `{}`)",
                                self.ctx.describe(),
                                self.ctx.table().generator(i).name
                            ),
                        })
                    }
                }
            }
            let degree = target.degree_of(&exps);
            target.reduce_into(Monomial::new(exps, degree), c.clone(), &mut acc);
        }
        Ok(Self::finish(target, acc))
    }

    /// The same terms, re-read in another context with an identical generator table.
    pub fn transport(&self, target: &Arc<Context>) -> Result<Self> {
        if self.ctx.table() != target.table() {
            return Err(Error::IncompatibleContext {
                left: self.ctx.describe(),
                right: target.describe(),
            });
        }
        let map: Vec<Option<usize>> = (0..target.table().len()).map(Some).collect();
        self.rename_into(target, &map)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let term = format_term(c, &self.ctx.format_monomial(m));
            match (i, term.strip_prefix('-')) {
                (0, _) => f.write_str(&term)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

/// `c*m` in canonical form: unit coefficients dropped, `1` monomial dropped.
pub(crate) fn format_term(c: &Scalar, monomial: &str) -> String {
    if monomial == "1" {
        return c.to_string();
    }
    if c.is_one() {
        monomial.to_string()
    } else if *c == -Scalar::one() {
        format!("-{monomial}")
    } else {
        format!("{c}*{monomial}")
    }
}
