use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use super::monomial::Monomial;
use super::Scalar;
use crate::error::{Error, Result};

/// Largest supported value of the dimension parameter `n` (complex dimension `2n`).
pub const MAX_N: u32 = 6;

/// Degree-0 formal symbols shared by every context: the twisting variable `N`
/// and the formal integers `g`, `k`, `m`, `r`, `s` used by the checks.
pub const PARAMETERS: [&str; 6] = ["N", "g", "k", "m", "r", "s"];

/// The four spaces of the blow-up diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Space {
    X,
    XX,
    D,
    Y,
}

impl Space {
    /// Complex dimension of the space for a given `n`.
    pub fn dimension(self, n: u32) -> u32 {
        match self {
            Space::X => 2 * n,
            Space::XX | Space::Y => 4 * n,
            Space::D => 4 * n - 1,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Space::X => "X",
            Space::XX => "XX",
            Space::D => "D",
            Space::Y => "Y",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Space::X),
            "XX" => Ok(Space::XX),
            "D" => Ok(Space::D),
            "Y" => Ok(Space::Y),
            other => Err(Error::Guard(format!("unknown space `{other}`"))),
        }
    }
}

/// Rewrite rule for the tautological class on `D = P(TX)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `h^{2n} = -(c_2 h^{2n-2} + c_4 h^{2n-4} + ... + c_{2n})`.
    Grothendieck,
    /// Same rule with the sign of the right hand side flipped; negative control only.
    Flipped,
    /// No rewriting at all: the free polynomial ring, truncated.
    Absent,
}

/// Which factor a generator belongs to; each block carries its own degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Parameter,
    /// Classes pulled back from `X`.
    Base,
    /// Opaque classes living on `D` itself.
    Opaque,
    Tautological,
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub block: Block,
}

/// Ordered list of named generators with their complex degrees.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl GeneratorTable {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.degree == 0 && g.block != Block::Parameter {
                return Err(Error::Guard(format!("generator `{}` has degree 0", g.name)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Guard(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(GeneratorTable { gens, index })
    }

    /// Names and degrees of the classes on `X`: `w, alpha, a, b, lam`, the even
    /// Chern classes `c2..c{2n}`, and the opaque `u2..u{2n}`.
    fn base(n: u32) -> Vec<(String, u32, bool)> {
        let mut out: Vec<(String, u32, bool)> = ["w", "alpha", "a", "b", "lam"]
            .iter()
            .map(|s| (s.to_string(), 1, false))
            .collect();
        out.extend((2..=2 * n).step_by(2).map(|j| (format!("c{j}"), j, false)));
        out.extend((2..=2 * n).map(|i| (format!("u{i}"), i, true)));
        out
    }

    pub fn for_space(space: Space, n: u32) -> Result<Self> {
        let mut gens: Vec<Generator> = PARAMETERS
            .iter()
            .map(|p| Generator {
                name: p.to_string(),
                degree: 0,
                block: Block::Parameter,
            })
            .collect();
        match space {
            Space::X => gens.extend(Self::base(n).into_iter().map(|(name, degree, _)| Generator {
                name,
                degree,
                block: Block::Base,
            })),
            Space::D => {
                gens.extend(Self::base(n).into_iter().map(|(name, degree, opaque)| Generator {
                    name,
                    degree,
                    block: if opaque { Block::Opaque } else { Block::Base },
                }));
                gens.push(Generator {
                    name: "h".into(),
                    degree: 1,
                    block: Block::Tautological,
                });
            }
            Space::XX => {
                for (prefix, block) in [("f1_", Block::First), ("f2_", Block::Second)] {
                    gens.extend(Self::base(n).into_iter().map(|(name, degree, _)| Generator {
                        name: format!("{prefix}{name}"),
                        degree,
                        block,
                    }));
                }
            }
            Space::Y => {
                return Err(Error::Guard(
                    "Y has no polynomial model of its own; use YClass".into(),
                ))
            }
        }
        Self::new(gens)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }
}

/// Ambient data for a graded class: generator table, truncation bounds and the
/// optional rewrite rule for `h`.
pub struct Context {
    space: Space,
    n: u32,
    relation: Option<Relation>,
    table: GeneratorTable,
    bound: u32,
    /// Normal forms of `h^e` for `2n <= e <= bound`, built on first use.
    h_powers: OnceLock<Vec<Vec<(Monomial, Scalar)>>>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({})", self.describe())
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.n == other.n && self.relation == other.relation
    }
}

impl Context {
    pub fn new(space: Space, n: u32) -> Result<Arc<Self>> {
        let relation = (space == Space::D).then_some(Relation::Grothendieck);
        Self::build(space, n, relation)
    }

    /// A model of `D` with a non-standard rewrite rule.
    pub fn projective_bundle(n: u32, relation: Relation) -> Result<Arc<Self>> {
        Self::build(Space::D, n, Some(relation))
    }

    fn build(space: Space, n: u32, relation: Option<Relation>) -> Result<Arc<Self>> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Guard(format!("n = {n} outside 2..={MAX_N}")));
        }
        let table = GeneratorTable::for_space(space, n)?;
        Ok(Arc::new(Context {
            space,
            n,
            relation,
            table,
            bound: space.dimension(n),
            h_powers: OnceLock::new(),
        }))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn relation(&self) -> Option<Relation> {
        self.relation
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    /// Truncation bound: the complex dimension of the space.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn describe(&self) -> String {
        match self.relation {
            None | Some(Relation::Grothendieck) => format!("{}(n={})", self.space, self.n),
            Some(Relation::Flipped) => format!("{}(n={}, flipped relation)", self.space, self.n),
            Some(Relation::Absent) => format!("{}(n={}, no relation)", self.space, self.n),
        }
    }

    pub fn ensure_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::IncompatibleContext {
                left: self.describe(),
                right: other.describe(),
            })
        }
    }

    pub(crate) fn tautological_index(&self) -> Option<usize> {
        self.table.get("h")
    }

    fn block_bound(&self, block: Block) -> u32 {
        match block {
            Block::Parameter => 0,
            Block::Base | Block::First | Block::Second => 2 * self.n,
            Block::Opaque | Block::Tautological => self.bound,
        }
    }

    pub(crate) fn degree_of(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(self.table.iter())
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// A monomial survives truncation iff its total degree and the degree of
    /// every pulled-back factor fit.
    pub(crate) fn admissible(&self, m: &Monomial) -> bool {
        if m.degree() > self.bound {
            return false;
        }
        let mut base = 0;
        let mut first = 0;
        let mut second = 0;
        for (e, g) in m.exponents().iter().zip(self.table.iter()) {
            match g.block {
                Block::Base => base += e * g.degree,
                Block::First => first += e * g.degree,
                Block::Second => second += e * g.degree,
                _ => {}
            }
        }
        let cap = self.block_bound(Block::Base);
        base <= cap && first <= cap && second <= cap
    }

    fn rewrites(&self) -> Option<(usize, u32)> {
        match self.relation {
            Some(Relation::Grothendieck) | Some(Relation::Flipped) => {
                self.tautological_index().map(|h| (h, 2 * self.n))
            }
            _ => None,
        }
    }

    /// Right hand side of the rewrite rule for `h^{2n}` as raw terms.
    pub(crate) fn relation_rhs(&self) -> Vec<(Monomial, Scalar)> {
        let Some(h) = self.tautological_index() else {
            return Vec::new();
        };
        let sign = match self.relation {
            Some(Relation::Flipped) => Scalar::one(),
            _ => -Scalar::one(),
        };
        let top = 2 * self.n;
        let len = self.table.len();
        (2..=top)
            .step_by(2)
            .map(|j| {
                let mut exps = vec![0; len];
                exps[self.table.get(&format!("c{j}")).expect("even chern class")] = 1;
                exps[h] = top - j;
                (Monomial::new(exps, top), sign.clone())
            })
            .collect()
    }

    fn h_powers(&self) -> &[Vec<(Monomial, Scalar)>] {
        self.h_powers.get_or_init(|| {
            let Some((h, top)) = self.rewrites() else {
                return Vec::new();
            };
            let rule = self.relation_rhs();
            let mut table = vec![rule.clone()];
            for _ in top + 1..=self.bound {
                let prev = table.last().expect("nonempty");
                let mut next: BTreeMap<Monomial, Scalar> = BTreeMap::new();
                for (m, c) in prev {
                    let mut exps = m.exponents().to_vec();
                    exps[h] += 1;
                    if exps[h] < top {
                        let m = Monomial::new(exps, m.degree() + 1);
                        if self.admissible(&m) {
                            *next.entry(m).or_insert_with(Scalar::zero) += c;
                        }
                        continue;
                    }
                    exps[h] -= top;
                    let rest = Monomial::new(exps, m.degree() + 1 - top);
                    for (rm, rc) in &rule {
                        let prod = rest.mul(rm);
                        if self.admissible(&prod) {
                            *next.entry(prod).or_insert_with(Scalar::zero) += c * rc;
                        }
                    }
                }
                table.push(next.into_iter().filter(|(_, c)| !c.is_zero()).collect());
            }
            table
        })
    }

    /// Adds `c * m` to `acc`, rewriting high powers of `h` first.
    pub(crate) fn reduce_into(
        &self,
        m: Monomial,
        c: Scalar,
        acc: &mut BTreeMap<Monomial, Scalar>,
    ) {
        if !self.admissible(&m) {
            return;
        }
        if let Some((h, top)) = self.rewrites() {
            let e = m.exponents()[h];
            if e >= top {
                let mut exps = m.exponents().to_vec();
                exps[h] = 0;
                let rest = Monomial::new(exps, m.degree() - e);
                for (pm, pc) in &self.h_powers()[(e - top) as usize] {
                    let prod = rest.mul(pm);
                    if self.admissible(&prod) {
                        *acc.entry(prod).or_insert_with(Scalar::zero) += &c * pc;
                    }
                }
                return;
            }
        }
        *acc.entry(m).or_insert_with(Scalar::zero) += c;
    }

    pub(crate) fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(self.table.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
