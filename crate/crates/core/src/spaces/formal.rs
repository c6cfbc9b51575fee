use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::ring::{format_term, Block, Context, GradedClass, Scalar};

/// Key of one term: exponents of the degree-0 symbols and a sorted list of
/// integral tokens, each a top-degree monomial on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Key {
    params: Vec<u32>,
    tokens: Vec<Vec<u32>>,
}

// Reverse lexicographic, matching the term order of graded classes.
impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&other.params, &other.tokens).cmp(&(&self.params, &self.tokens))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational combination of products of opaque integrals `<m> = \int_X m`.
#[derive(Clone, Debug)]
pub struct FormalScalar {
    x: Arc<Context>,
    terms: BTreeMap<Key, Scalar>,
}

impl PartialEq for FormalScalar {
    fn eq(&self, other: &Self) -> bool {
        *self.x == *other.x && self.terms == other.terms
    }
}

impl FormalScalar {
    pub fn zero(x: &Arc<Context>) -> Self {
        FormalScalar {
            x: x.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(x: &Arc<Context>, c: Scalar) -> Self {
        let mut out = Self::zero(x);
        if !c.is_zero() {
            let params = vec![0; Self::param_count(x)];
            out.terms.insert(
                Key {
                    params,
                    tokens: Vec::new(),
                },
                c,
            );
        }
        out
    }

    fn param_count(x: &Context) -> usize {
        x.table()
            .iter()
            .filter(|g| g.block == Block::Parameter)
            .count()
    }

    /// `\int_X` of a class on `X` whose terms all have degree `2n`.
    pub(crate) fn integral(class: &GradedClass) -> Result<Self> {
        let x = class.context();
        let p = Self::param_count(x);
        let top = 2 * x.n();
        if !class.is_homogeneous_of(top) {
            return Err(crate::Error::NotTopDegree {
                top,
                class: class.to_string(),
            });
        }
        let mut out = Self::zero(x);
        for (m, c) in class.terms() {
            let exps = m.exponents();
            let mut token = exps.to_vec();
            token[..p].iter_mut().for_each(|e| *e = 0);
            out.push(exps[..p].to_vec(), vec![token], c.clone());
        }
        Ok(out)
    }

    /// Product of two integrals with a shared coefficient, as produced by the
    /// Kunneth split on `X x X`.
    pub(crate) fn push(&mut self, params: Vec<u32>, mut tokens: Vec<Vec<u32>>, c: Scalar) {
        tokens.sort_by(|a, b| b.cmp(a));
        let key = Key { params, tokens };
        let entry = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.x.ensure_same(&other.x)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.params.clone(), k.tokens.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(&self.x);
        if s.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * s))
            .collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.x.ensure_same(&other.x)?;
        let mut out = Self::zero(&self.x);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let params = k1
                    .params
                    .iter()
                    .zip(&k2.params)
                    .map(|(a, b)| a + b)
                    .collect();
                let tokens = k1.tokens.iter().chain(&k2.tokens).cloned().collect();
                out.push(params, tokens, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (k.tokens.is_empty() && k.params.iter().all(|e| *e == 0)).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let p = Self::param_count(&self.x);
        let len = self.x.table().len();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mut parts = Vec::new();
            let mut pexps = k.params.clone();
            pexps.resize(len, 0);
            let pm = GradedClass::raw_monomial(&self.x, pexps);
            if !pm.is_one() {
                parts.push(self.x.format_monomial(&pm));
            }
            for t in &k.tokens {
                let mut exps = t.clone();
                exps[..p].iter_mut().for_each(|e| *e = 0);
                let m = GradedClass::raw_monomial(&self.x, exps);
                parts.push(format!("<{}>", self.x.format_monomial(&m)));
            }
            let body = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            };
            let term = format_term(c, &body);
            match (i, term.strip_prefix('-')) {
                (0, _) => f.write_str(&term)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}
