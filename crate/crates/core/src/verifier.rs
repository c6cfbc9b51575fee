//! Named, parameterized identity checks and their reports.
//!
//! Each check computes two canonical strings, `lhs` from the engine and `rhs`
//! from an independent route (a closed formula, a recursion, or a second
//! engine path), and passes iff they are byte-identical.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::contains;
use crate::error::{Error, Result};
use crate::lambda::VirtualBundle;
use crate::ring::{factorial, integer, rational, GradedAlgebra, GradedClass, Relation, Scalar, MAX_N};
use crate::spaces::{Geometry, YClass};

/// Largest `t` accepted by the representation-theoretic checks.
pub const MAX_T: i64 = 8;

/// Environment variable capping the number of worker threads.
pub const JOBS_VAR: &str = "HODGE_FORGE_JOBS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    PstarTable,
    QRelation,
    GrrC1,
    DegreeChain,
    DiagonalRestriction,
    HomRestriction,
    DivisorDegree,
    SesCh,
    SlopePolynomial,
    InclusionTargets,
    SymNotInWedge,
}

impl CheckName {
    /// The registry, in report order.
    pub const ALL: [CheckName; 11] = [
        CheckName::PstarTable,
        CheckName::QRelation,
        CheckName::GrrC1,
        CheckName::DegreeChain,
        CheckName::DiagonalRestriction,
        CheckName::HomRestriction,
        CheckName::DivisorDegree,
        CheckName::SesCh,
        CheckName::SlopePolynomial,
        CheckName::InclusionTargets,
        CheckName::SymNotInWedge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::PstarTable => "pstar_table",
            CheckName::QRelation => "q_relation",
            CheckName::GrrC1 => "grr_c1",
            CheckName::DegreeChain => "degree_chain",
            CheckName::DiagonalRestriction => "diagonal_restriction",
            CheckName::HomRestriction => "hom_restriction",
            CheckName::DivisorDegree => "divisor_degree",
            CheckName::SesCh => "ses_ch",
            CheckName::SlopePolynomial => "slope_polynomial",
            CheckName::InclusionTargets => "inclusion_targets",
            CheckName::SymNotInWedge => "sym_not_in_wedge",
        }
    }

    /// Parameter names besides `n`, with their defaults as functions of `n`.
    fn extra_params(self, n: i64) -> Vec<(&'static str, i64)> {
        match self {
            CheckName::PstarTable => vec![("i_max", 2 * n + 6)],
            CheckName::HomRestriction => vec![("g", 2 * n - 3)],
            CheckName::SesCh => vec![("j", 2), ("t", 3)],
            CheckName::SymNotInWedge => vec![("t_max", 6)],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
                Error::Guard(format!("unknown check `{s}` (known: {})", names.join(", ")))
            })
    }
}

/// Deliberate corruptions of the engine, used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Perturbation {
    #[default]
    None,
    /// Use `h^{2n} = +sum c_j h^{2n-j}` on `D`.
    FlipHRelation,
    /// Use `c_1(T_Y) - beta^* c_1 = (2n - 1)[D]` in the Todd class of `beta`.
    FlipToddCoefficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u64,
}

/// A check with validated parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    name: CheckName,
    params: BTreeMap<String, i64>,
}

impl Check {
    /// The check at `n` with default values for the other parameters.
    pub fn with_defaults(name: CheckName, n: i64) -> Result<Self> {
        Self::new(name, &BTreeMap::from([("n".to_string(), n)]))
    }

    /// Validates `params` against the guards; missing optional values get defaults.
    pub fn new(name: CheckName, params: &BTreeMap<String, i64>) -> Result<Self> {
        let n = *params
            .get("n")
            .ok_or_else(|| Error::Guard(format!("{name} needs the parameter n")))?;
        if !(2..=MAX_N as i64).contains(&n) {
            return Err(Error::Guard(format!("n = {n} outside 2..={MAX_N}")));
        }
        let extra = name.extra_params(n);
        let mut full = BTreeMap::from([("n".to_string(), n)]);
        for (key, value) in params {
            if key != "n" && !extra.iter().any(|(k, _)| k == key) {
                return Err(Error::Guard(format!("{name} has no parameter `{key}`")));
            }
            full.insert(key.clone(), *value);
        }
        for (key, default) in extra {
            full.entry(key.to_string()).or_insert(default);
        }
        let get = |k: &str| full[k];
        let range = |k: &str, lo: i64, hi: i64| {
            let v = get(k);
            if (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::Guard(format!("{k} = {v} outside {lo}..={hi}")))
            }
        };
        match name {
            CheckName::PstarTable => range("i_max", 0, 2 * n + 6)?,
            CheckName::HomRestriction => range("g", 1, 2 * n - 3)?,
            CheckName::SesCh => {
                range("j", 0, 2 * n)?;
                range("t", 0, MAX_T)?;
            }
            CheckName::SymNotInWedge => range("t_max", 2, MAX_T)?,
            _ => {}
        }
        Ok(Check { name, params: full })
    }

    pub fn name(&self) -> CheckName {
        self.name
    }

    pub fn params(&self) -> &BTreeMap<String, i64> {
        &self.params
    }

    fn param(&self, key: &str) -> i64 {
        self.params[key]
    }

    pub fn run(&self) -> CheckReport {
        self.run_perturbed(Perturbation::None)
    }

    pub fn run_perturbed(&self, perturbation: Perturbation) -> CheckReport {
        let start = Instant::now();
        let outcome = self.compute(perturbation);
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, lhs, rhs) = match outcome {
            Ok(parts) => {
                let lhs = join(parts.iter().map(|p| (&p.label, &p.lhs)));
                let rhs = join(parts.iter().map(|p| (&p.label, &p.rhs)));
                let status = if lhs == rhs { Status::Pass } else { Status::Fail };
                (status, lhs, rhs)
            }
            Err(e) => (Status::Error, format!("{}: {e}", self.name), String::new()),
        };
        CheckReport {
            check: self.name.to_string(),
            params: self.params.clone(),
            status,
            lhs,
            rhs,
            elapsed_ms,
        }
    }

    fn compute(&self, perturbation: Perturbation) -> Result<Vec<Part>> {
        let n = self.param("n") as u32;
        let relation = match perturbation {
            Perturbation::FlipHRelation => Relation::Flipped,
            _ => Relation::Grothendieck,
        };
        let g = Geometry::with_relation(n, relation)?;
        match self.name {
            CheckName::PstarTable => pstar_table(&g, self.param("i_max") as u32),
            CheckName::QRelation => q_relation(&g),
            CheckName::GrrC1 => grr_c1(&g, perturbation == Perturbation::FlipToddCoefficient),
            CheckName::DegreeChain => degree_chain(&g),
            CheckName::DiagonalRestriction => diagonal_restriction(&g),
            CheckName::HomRestriction => hom_restriction(&g, self.param("g")),
            CheckName::DivisorDegree => divisor_degree(&g),
            CheckName::SesCh => ses_ch(&g, self.param("j") as u32, self.param("t")),
            CheckName::SlopePolynomial => slope_polynomial(&g),
            CheckName::InclusionTargets => inclusion_targets(&g),
            CheckName::SymNotInWedge => Ok(sym_not_in_wedge(n, self.param("t_max") as u32)),
        }
    }
}

/// One labelled comparison inside a check.
struct Part {
    label: String,
    lhs: String,
    rhs: String,
}

impl Part {
    fn new(label: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Part {
            label: label.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

fn join<'a>(parts: impl Iterator<Item = (&'a String, &'a String)>) -> String {
    parts
        .map(|(label, value)| format!("{label}: {value}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs one check by name; parameters are validated first.
pub fn run_check(name: CheckName, params: &BTreeMap<String, i64>) -> Result<CheckReport> {
    Ok(Check::new(name, params)?.run())
}

/// Every registered check at every `n`, in registry order.
pub fn run_all(n_list: &[i64]) -> Result<Vec<CheckReport>> {
    let jobs = std::env::var(JOBS_VAR).ok().and_then(|v| v.parse().ok());
    run_all_with(n_list, jobs)
}

/// [`run_all`] on at most `jobs` worker threads.
pub fn run_all_with(n_list: &[i64], jobs: Option<usize>) -> Result<Vec<CheckReport>> {
    let checks = n_list
        .iter()
        .flat_map(|&n| CheckName::ALL.into_iter().map(move |c| Check::with_defaults(c, n)))
        .collect::<Result<Vec<_>>>()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs.filter(|j| *j > 0) {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Guard(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| checks.par_iter().map(Check::run).collect()))
}

fn c_class(g: &Geometry, j: u32) -> Result<GradedClass> {
    if j % 2 == 1 || j > 2 * g.n() {
        Ok(GradedClass::zero(g.x()))
    } else {
        g.x_class(&format!("c{j}"))
    }
}

fn inverse_factorial(k: u32) -> Scalar {
    Scalar::new(BigInt::from(1), factorial(k))
}

/// `p_*(h^i)` by normal-form reduction against the closed values and the
/// recursion `p_*(h^{2n+k}) = -c_{k+1} - sum_{j even, 2 <= j < k} c_j p_*(h^{2n+k-j})`.
fn pstar_table(g: &Geometry, i_max: u32) -> Result<Vec<Part>> {
    let n = g.n();
    let h = g.d_class("h")?;
    let mut expected: Vec<GradedClass> = Vec::new();
    let mut parts = Vec::new();
    for i in 0..=i_max {
        let value = if i < 2 * n - 1 || i % 2 == 0 {
            GradedClass::zero(g.x())
        } else if i == 2 * n - 1 {
            GradedClass::one(g.x())
        } else {
            let k = i - 2 * n;
            let mut acc = c_class(g, k + 1)?.neg();
            for j in (2..k).step_by(2) {
                acc = acc.sub(&c_class(g, j)?.mul(&expected[(i - j) as usize])?)?;
            }
            acc
        };
        let direct = g.pushforward_p(&h.pow(i))?;
        parts.push(Part::new(format!("p_*(h^{i})"), &direct, &value));
        expected.push(value);
    }
    Ok(parts)
}

/// `c_{2n}(p^*TX - ell)` in the free polynomial ring equals the defining
/// polynomial of `h` on `D`.
fn q_relation(g: &Geometry) -> Result<Vec<Part>> {
    let n = g.n();
    let free = Geometry::with_relation(n, Relation::Absent)?;
    let q = free
        .tangent_bundle_on_d()?
        .difference(&free.tautological_line()?)?;
    let top = q.chern_class(2 * n)?;
    // h^{2n} minus its normal form, read in the free ring
    let reduced_h = g.d_class("h")?.pow(2 * n).transport(free.d())?;
    let rule = free.d_class("h")?.pow(2 * n).sub(&reduced_h)?;
    let reduced = top.transport(g.d())?;
    Ok(vec![
        Part::new("c_2n(q)", &top, &rule),
        Part::new("rank(q)", q.rank(), 2 * n - 1),
        Part::new("c_2n(q) on D", &reduced, 0),
    ])
}

/// The degree-one part of the Todd class of the blow-up and the vanishing
/// rank term in `c_1(beta_*(W td))`.
fn grr_c1(g: &Arc<Geometry>, flip: bool) -> Result<Vec<Part>> {
    let n = g.n() as i64;
    let d = g.exceptional_divisor();
    let sign = if flip { 2 * n - 1 } else { 1 - 2 * n };
    let mut ch = d.scale(&integer(sign));
    for i in 2..2 * n {
        ch = ch.add(&g.pushforward_iota(&g.d_class(&format!("u{i}"))?)?)?;
    }
    let td = VirtualBundle::from_ch(ch).todd()?;

    let z = g.xx_class("f1_alpha")?.add(&g.xx_class("f2_lam")?)?;
    let rank = g.pullback_beta(&g.xx_class("r")?)?;
    let m = g.pushforward_iota(&g.d_class("m")?)?;
    let w_ch = rank
        .add(&g.pullback_beta(&z)?)?
        .add(&m)?
        .add(&g.pullback_beta(&g.xx_class("f1_c2")?)?)?
        .add(&g.pushforward_iota(&g.d_class("u2")?)?)?;
    let twisted = w_ch.mul(&td)?.graded_component(1);
    let c1_w = w_ch.graded_component(1);
    let rank_term = rank.mul(&td.graded_component(1))?;
    Ok(vec![
        Part::new("td_1", td.graded_component(1), d.scale(&rational(1 - 2 * n, 2))),
        Part::new("beta_*[D]", g.pushforward_beta(&d)?, 0),
        Part::new("beta_*(r td_1)", g.pushforward_beta(&rank_term)?, 0),
        Part::new(
            "c1(beta_*(ch(W) td))",
            g.pushforward_beta(&twisted)?,
            g.pushforward_beta(&c1_w)?,
        ),
    ])
}

/// `\int_{XxX} (f1^*w + f2^*w)^{4n-1} (f1^*a + f2^*b)` against the binomial expansion.
fn degree_chain(g: &Geometry) -> Result<Vec<Part>> {
    let n = g.n();
    let w = g.x_class("w")?;
    let a = g.x_class("a")?;
    let b = g.x_class("b")?;
    let wt = g.pullback_f1(&w)?.add(&g.pullback_f2(&w)?)?;
    let ab = g.pullback_f1(&a)?.add(&g.pullback_f2(&b)?)?;
    let lhs = g.integrate(&wt.pow(4 * n - 1).mul(&ab)?)?;

    let factor = binomial(BigInt::from(4 * n - 1), BigInt::from(2 * n));
    let top = g.integrate(&w.pow(2 * n))?.scale(&Scalar::from_integer(factor));
    let w_low = w.pow(2 * n - 1);
    let split = g.integrate(&w_low.mul(&a)?)?.add(&g.integrate(&w_low.mul(&b)?)?)?;
    let rhs = top.mul(&split)?;
    let restricted = top.mul(&g.integrate(&w_low.mul(&g.pullback_delta(&ab)?)?)?)?;
    let vanishing = g.integrate(&wt.pow(4 * n - 1).mul(&GradedClass::zero(g.xx()))?)?;
    Ok(vec![
        Part::new("split", &lhs, &rhs),
        Part::new("restricted", &lhs, &restricted),
        Part::new("a = b = 0", vanishing, 0),
    ])
}

/// `p_*(h^{2n-1} iota^*(beta^* z + m [D])) = delta^* z`, for every `m`.
fn diagonal_restriction(g: &Arc<Geometry>) -> Result<Vec<Part>> {
    let n = g.n();
    let z = g
        .xx_class("f1_a")?
        .add(&g.xx_class("f2_b")?)?
        .add(&g.xx_class("f1_lam")?)?;
    let h = g.d_class("h")?.pow(2 * n - 1);
    let restrict = |y: &YClass| -> Result<GradedClass> {
        g.pushforward_p(&h.mul(&g.pullback_iota(y)?)?)
    };
    let class = g
        .pullback_beta(&z)?
        .add(&g.pushforward_iota(&g.d_class("m")?)?)?;
    let d = g.exceptional_divisor();
    Ok(vec![
        Part::new("coefficient of m", restrict(&d)?, 0),
        Part::new("restriction", restrict(&class)?, g.pullback_delta(&z)?),
    ])
}

/// `ell^perp / ell = p^*TX - ell^{-1} - ell`.
fn symplectic_quotient(g: &Geometry) -> Result<VirtualBundle> {
    let ell = g.tautological_line()?;
    g.tangent_bundle_on_d()?
        .difference(&ell.dual()?)?
        .difference(&ell)
}

/// `c_1(Hom(ell^perp/ell, G)) = (2n-2)(c_1(G') - [Z])` for `G` of rank `g`.
fn hom_restriction(g: &Geometry, rank: i64) -> Result<Vec<Part>> {
    let n = g.n() as i64;
    let h = g.d_class("h")?;
    let c1_gp = g.d_class("alpha")?.sub(&g.d_class("k")?.mul(&h)?)?;
    let z = g.d_class("s")?.mul(&h)?.add(&g.d_class("lam")?)?;
    let c1_g = c1_gp.sub(&z)?;
    let big_g = VirtualBundle::from_ch(
        GradedClass::integer(g.d(), rank)
            .add(&c1_g)?
            .add(&g.d_class("u2")?)?,
    );
    let v = symplectic_quotient(g)?;
    let hom = v.dual()?.tensor(&big_g)?;
    let formula = c1_g
        .scale(&v.rank_scalar().unwrap_or_default())
        .sub(&v.c1().scale(&integer(rank)))?;
    Ok(vec![
        Part::new("rank(V)", v.rank(), 2 * n - 2),
        Part::new("c1(V)", v.c1(), 0),
        Part::new("c1(Hom(V,G))", hom.c1(), c1_g.scale(&integer(2 * n - 2))),
        Part::new("rk(V) c1(G) - rk(G) c1(V)", formula, hom.c1()),
    ])
}

/// `\int_D p^*w^{2n-1} h^{2n-1} (s h + p^*lam) = \int_X w^{2n-1} lam`.
fn divisor_degree(g: &Geometry) -> Result<Vec<Part>> {
    let n = g.n();
    let h = g.d_class("h")?;
    let w = g.pullback_p(&g.x_class("w")?)?.pow(2 * n - 1);
    let base = w.mul(&h.pow(2 * n - 1))?;
    let z = g.d_class("s")?.mul(&h)?.add(&g.d_class("lam")?)?;
    let rhs = g.integrate(&g.x_class("w")?.pow(2 * n - 1).mul(&g.x_class("lam")?)?)?;
    Ok(vec![
        Part::new("coefficient of s", g.pushforward_p(&h.pow(2 * n))?, 0),
        Part::new("degree", g.integrate(&base.mul(&z)?)?, rhs),
    ])
}

fn ext_or_zero(v: &VirtualBundle, j: i64) -> Result<VirtualBundle> {
    if j < 0 {
        Ok(VirtualBundle::trivial(v.ch(), 0))
    } else {
        v.ext_power(j as u32)
    }
}

/// The two exterior-power identities for `0 -> ell^perp -> p^*TX -> ell^{-1} -> 0`
/// and `0 -> ell -> ell^perp -> ell^perp/ell -> 0`, twisted by powers of `ell`.
fn ses_ch(g: &Geometry, j: u32, t: i64) -> Result<Vec<Part>> {
    let n = g.n() as i64;
    let j = j as i64;
    let h = g.d_class("h")?;
    let ell = g.tautological_line()?;
    let tx = g.tangent_bundle_on_d()?;
    let perp = tx.difference(&ell.dual()?)?;
    let quotient = perp.difference(&ell)?;
    // ell^{-s} has c_1 = s h
    let twist = |v: VirtualBundle, s: i64| v.twist(&h.scale(&integer(s)));

    let first = twist(ext_or_zero(&perp, j)?, t)?
        .direct_sum(&twist(ext_or_zero(&perp, j - 1)?, t + 1)?)?;
    let whole = twist(ext_or_zero(&tx, j)?, t)?;
    let second = twist(ext_or_zero(&quotient, j - 1)?, t - 1)?
        .direct_sum(&twist(ext_or_zero(&quotient, j)?, t)?)?;
    let middle = twist(ext_or_zero(&perp, j)?, t)?;
    Ok(vec![
        Part::new("c1(ell^perp/ell)", quotient.c1(), 0),
        Part::new("rank(ell^perp/ell)", quotient.rank(), 2 * n - 2),
        Part::new("ell^perp in p^*TX", first.ch(), whole.ch()),
        Part::new("ell in ell^perp", second.ch(), middle.ch()),
    ])
}

/// Degree-`d` part of a product, without forming the higher-degree terms.
fn product_in_degree(factors: &[&GradedClass], d: u32) -> Result<GradedClass> {
    let zero = GradedClass::zero(factors[0].context());
    let mut partial: Vec<GradedClass> = (0..=d).map(|k| factors[0].graded_component(k)).collect();
    for f in &factors[1..] {
        let comps: Vec<GradedClass> = (0..=d).map(|k| f.graded_component(k)).collect();
        let mut next = vec![zero.clone(); d as usize + 1];
        for (a, pa) in partial.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, cb) in comps.iter().enumerate().take(d as usize + 1 - a) {
                if !cb.is_zero() {
                    next[a + b] = next[a + b].add(&pa.mul(cb)?)?;
                }
            }
        }
        partial = next;
    }
    Ok(partial.swap_remove(d as usize))
}

/// `Q(N) = p_*[ch(G') exp(N h) td(T_p)]_{2n}` with
/// `ch(G') = g + (p^*alpha - k h) + u_2 + ... + u_{2n}`.
fn slope_polynomial(g: &Geometry) -> Result<Vec<Part>> {
    let n = g.n();
    let h = g.d_class("h")?;
    let c1_gp = g.d_class("alpha")?.sub(&g.d_class("k")?.mul(&h)?)?;
    let mut ch = g.d_class("g")?.add(&c1_gp)?;
    let opaque: Vec<String> = (2..=2 * n).map(|i| format!("u{i}")).collect();
    for u in &opaque {
        ch = ch.add(&g.d_class(u)?)?;
    }
    let exp = VirtualBundle::line_bundle(&g.d_class("N")?.mul(&h)?)?.into_ch();
    let td = g.relative_tangent()?.todd()?;
    let summand = product_in_degree(&[&ch, &exp, &td], 2 * n)?;
    let q = g.pushforward_p(&summand)?;

    let gh = g.d_class("g")?.mul(&h.pow(2 * n))?.scale(&inverse_factorial(2 * n));
    let next = c1_gp
        .add(&g.d_class("g")?.mul(&h)?.scale(&integer(n as i64)))?
        .mul(&h.pow(2 * n - 1))?
        .scale(&inverse_factorial(2 * n - 1));
    let leading = q.coefficient_in_n(2 * n - 1);
    let expected_leading = g.x_class("alpha")?.scale(&inverse_factorial(2 * n - 1));
    let mut symbols: Vec<&str> = opaque.iter().map(String::as_str).collect();
    symbols.extend(["g", "k"]);
    let mentioned: Vec<&str> = symbols
        .into_iter()
        .filter(|s| leading.contains_generator(s))
        .collect();
    Ok(vec![
        Part::new("summand N^2n", summand.coefficient_in_n(2 * n), gh),
        Part::new("summand N^(2n-1)", summand.coefficient_in_n(2 * n - 1), next),
        Part::new("Q N^2n", q.coefficient_in_n(2 * n), 0),
        Part::new(
            "deg_N Q",
            q.degree_in("N")?.map_or("-".into(), |d| d.to_string()),
            2 * n - 1,
        ),
        Part::new("leading", &leading, expected_leading),
        Part::new("leading mentions", format!("{mentioned:?}"), "[]"),
    ])
}

/// `c_1(Lambda^2 TX (x) Sym^{N+1} T^*X) = 0` for `N` in `0..=4`, and `c_1(Lambda^2 TX) = 0`.
fn inclusion_targets(g: &Geometry) -> Result<Vec<Part>> {
    let tx = g.tangent_bundle()?;
    let wedge = tx.ext_power(2)?;
    let cotangent = tx.dual()?;
    let mut parts = vec![Part::new("Sym^0", wedge.c1(), 0)];
    let sym = cotangent.sym_powers(5)?;
    for big_n in 1..=4 {
        let target = wedge.tensor(&sym[big_n + 1])?;
        parts.push(Part::new(format!("N = {big_n}"), target.c1(), 0));
    }
    Ok(parts)
}

/// `Sym^t U` is not a summand of any `Lambda^j U`, `2 <= t <= t_max`.
fn sym_not_in_wedge(n: u32, t_max: u32) -> Vec<Part> {
    let n = n as usize;
    let found: Vec<String> = (2..=t_max)
        .flat_map(|t| (0..=2 * n as u32).map(move |j| (t, j)))
        .filter(|&(t, j)| contains(n, t, j))
        .map(|(t, j)| format!("(t={t}, j={j})"))
        .collect();
    vec![Part::new("summands", format!("[{}]", found.join(", ")), "[]")]
}

#[cfg(test)]
mod tests;
