//! Weights and characters of the symplectic group `Sp(n)` (type `C_n`).
//!
//! Weights are integer vectors in the standard basis `e_1, ..., e_n`. The
//! positive roots are `e_i - e_j`, `e_i + e_j` (`i < j`) and `2 e_i`, and
//! `rho = (n, n-1, ..., 1)`. Irreducible characters come from Freudenthal's
//! recursion over dominant weights; the Weyl group acts by signed permutations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};

/// A weight `(a_1, ..., a_n)`; prints as `[a1,...,an]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The fundamental weight `omega_m = e_1 + ... + e_m`.
    pub fn fundamental(n: usize, m: usize) -> Self {
        Weight((0..n).map(|i| i64::from(i < m)).collect())
    }

    /// `t * e_1`, the highest weight of `Sym^t` of the standard representation.
    pub fn sym_highest(n: usize, t: u32) -> Self {
        let mut w = Self::zero(n);
        if n > 0 {
            w.0[0] = i64::from(t);
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1]) && self.0.last().is_none_or(|l| *l >= 0)
    }

    /// The dominant element of the Weyl orbit.
    pub fn dominant_conjugate(&self) -> Self {
        let mut v: Vec<i64> = self.0.iter().map(|a| a.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight(v)
    }

    /// Pairing with `rho`; strictly increases along positive roots.
    pub fn height(&self) -> i64 {
        let n = self.0.len() as i64;
        self.0.iter().enumerate().map(|(i, a)| a * (n - i as i64)).sum()
    }

    fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// `self - other` is a non-negative integer combination of simple roots.
    pub fn dominates(&self, other: &Weight) -> bool {
        let mut partial = 0;
        for (a, b) in self.0.iter().zip(&other.0) {
            partial += a - b;
            if partial < 0 {
                return false;
            }
        }
        partial % 2 == 0
    }

    /// All distinct signed permutations.
    pub fn orbit(&self) -> Vec<Weight> {
        let mut abs: Vec<i64> = self.dominant_conjugate().0;
        abs.sort_unstable();
        let mut out = Vec::new();
        loop {
            let nonzero: Vec<usize> = (0..abs.len()).filter(|&i| abs[i] != 0).collect();
            for mask in 0u64..(1 << nonzero.len()) {
                let mut v = abs.clone();
                for (bit, &i) in nonzero.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        v[i] = -v[i];
                    }
                }
                out.push(Weight(v));
            }
            if !next_permutation(&mut abs) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap_or(i);
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_weight_map<S: Serializer>(
    map: &BTreeMap<Weight, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(map.len()))?;
    for (w, c) in map {
        m.serialize_entry(&w.to_string(), c)?;
    }
    m.end()
}

/// A finite multiset of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    n: usize,
    weights: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new(n: usize) -> Self {
        WeightMultiset {
            n,
            weights: BTreeMap::new(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        let mut out = Self::new(n);
        for (w, c) in pairs {
            out.insert(w, c);
        }
        out
    }

    pub fn insert(&mut self, w: Weight, count: u64) {
        assert_eq!(w.rank(), self.n, "weight of the wrong rank");
        if count > 0 {
            *self.weights.entry(w).or_insert(0) += count;
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.weights.iter().map(|(w, c)| (w, *c))
    }

    /// Number of weights counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn is_weyl_invariant(&self) -> bool {
        self.first_non_invariant().is_none()
    }

    fn first_non_invariant(&self) -> Option<Weight> {
        for (w, c) in &self.weights {
            if !w.is_dominant() {
                continue;
            }
            if let Some(bad) = w.orbit().into_iter().find(|v| self.multiplicity(v) != *c) {
                return Some(bad);
            }
        }
        self.weights
            .keys()
            .find(|w| !self.weights.contains_key(&w.dominant_conjugate()))
            .cloned()
    }
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_weight_map(&self.weights, s)
    }
}

/// Multiplicities of irreducible summands, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDecomp {
    n: usize,
    summands: BTreeMap<Weight, u64>,
}

impl WeightDecomp {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, highest: &Weight) -> u64 {
        self.summands.get(highest).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.summands.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `sum mult * weyl_dim`.
    pub fn dimension(&self) -> BigInt {
        self.summands
            .iter()
            .map(|(w, c)| weyl_dim(self.n, w).expect("highest weights are dominant") * *c)
            .sum()
    }
}

impl Serialize for WeightDecomp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_weight_map(&self.summands, s)
    }
}

impl fmt::Display for WeightDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .rev()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The weights `+-e_i` of the standard representation.
pub fn standard_weights(n: usize) -> WeightMultiset {
    let mut out = WeightMultiset::new(n);
    for i in 0..n {
        for sign in [1, -1] {
            let mut w = Weight::zero(n);
            w.0[i] = sign;
            out.insert(w, 1);
        }
    }
    out
}

/// Elementary (`alternating = true`) or complete symmetric combinations of the
/// standard weights, by dynamic programming over the `2n` weights.
fn power_character(n: usize, j: u32, alternating: bool) -> WeightMultiset {
    let j = j as usize;
    // layers[k] = weights of degree-k products using the weights seen so far
    let mut layers: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); j + 1];
    layers[0].insert(Weight::zero(n), 1);
    for (e, _) in standard_weights(n).iter() {
        for k in (1..=j).rev() {
            let mut add: BTreeMap<Weight, u64> = BTreeMap::new();
            let uses = if alternating { 1 } else { k };
            for r in 1..=uses {
                for (w, c) in &layers[k - r] {
                    let v: Vec<i64> = w.0.iter().zip(&e.0).map(|(a, b)| a + b * r as i64).collect();
                    *add.entry(Weight(v)).or_insert(0) += c;
                }
            }
            for (w, c) in add {
                *layers[k].entry(w).or_insert(0) += c;
            }
        }
    }
    WeightMultiset {
        n,
        weights: std::mem::take(&mut layers[j]),
    }
}

/// Weights of the exterior power `Lambda^j` of the standard representation.
pub fn ext_character(n: usize, j: u32) -> WeightMultiset {
    power_character(n, j, true)
}

/// Weights of the symmetric power `Sym^t` of the standard representation.
pub fn sym_character(n: usize, t: u32) -> WeightMultiset {
    power_character(n, t, false)
}

fn positive_roots(n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [-1, 1] {
                let mut a = vec![0; n];
                a[i] = 1;
                a[j] = sign;
                roots.push(a);
            }
        }
        let mut a = vec![0; n];
        a[i] = 2;
        roots.push(a);
    }
    roots
}

fn rho(n: usize) -> Vec<i64> {
    (0..n).map(|i| (n - i) as i64).collect()
}

fn ensure_dominant(n: usize, w: &Weight) -> Result<()> {
    if w.rank() != n || !w.is_dominant() {
        return Err(Error::NotDominant {
            weight: w.to_string(),
        });
    }
    Ok(())
}

/// Weyl dimension formula `prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dim(n: usize, lambda: &Weight) -> Result<BigInt> {
    ensure_dominant(n, lambda)?;
    let rho = rho(n);
    let shifted: Vec<i64> = lambda.0.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for alpha in positive_roots(n) {
        num *= Weight(shifted.clone()).dot(&alpha);
        den *= Weight(rho.clone()).dot(&alpha);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r == BigInt::from(0));
    Ok(q)
}

type DominantCharacter = Arc<BTreeMap<Weight, u64>>;

fn cache() -> &'static Mutex<HashMap<Weight, DominantCharacter>> {
    static CACHE: OnceLock<Mutex<HashMap<Weight, DominantCharacter>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Dominant weights `mu <= lambda`.
fn dominant_weights_below(lambda: &Weight) -> Vec<Weight> {
    let n = lambda.rank();
    let bound = lambda.0.first().copied().unwrap_or(0);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, cap: i64, current: &mut Vec<i64>, lambda: &Weight, out: &mut Vec<Weight>) {
        if current.len() == n {
            let w = Weight(current.clone());
            if lambda.dominates(&w) {
                out.push(w);
            }
            return;
        }
        for a in 0..=cap {
            current.push(a);
            rec(n, a, current, lambda, out);
            current.pop();
        }
    }
    rec(n, bound, &mut current, lambda, &mut out);
    out
}

/// Multiplicities of the dominant weights of the irreducible with highest
/// weight `lambda`, by Freudenthal's formula
///
/// ```text
/// ((lambda+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1} (mu + k alpha, alpha) m(mu + k alpha)
/// ```
pub fn dominant_character(n: usize, lambda: &Weight) -> Result<DominantCharacter> {
    ensure_dominant(n, lambda)?;
    if let Some(hit) = cache().lock().expect("cache poisoned").get(lambda) {
        return Ok(hit.clone());
    }
    let rho = rho(n);
    let roots = positive_roots(n);
    let norm = |w: &Weight| {
        let s: Vec<i64> = w.0.iter().zip(&rho).map(|(a, b)| a + b).collect();
        Weight(s.clone()).dot(&s)
    };
    let top = norm(lambda);
    let bound = lambda.0.first().copied().unwrap_or(0);

    let mut mu_list = dominant_weights_below(lambda);
    mu_list.sort_by(|a, b| b.height().cmp(&a.height()).then_with(|| b.cmp(a)));
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in mu_list {
        if mu == *lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum: i64 = 0;
        for alpha in &roots {
            for k in 1.. {
                let v: Vec<i64> = mu.0.iter().zip(alpha).map(|(a, b)| a + k * b).collect();
                if v.iter().any(|a| a.abs() > bound) {
                    break;
                }
                let v = Weight(v);
                let m = mult.get(&v.dominant_conjugate()).copied().unwrap_or(0);
                sum += v.dot(alpha) * m as i64;
            }
        }
        let denom = top - norm(&mu);
        debug_assert!(denom > 0 && (2 * sum) % denom == 0);
        let m = 2 * sum / denom;
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    let result = Arc::new(mult);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert(lambda.clone(), result.clone());
    Ok(result)
}

/// Full weight multiset of the irreducible with highest weight `lambda`.
pub fn irreducible_character(n: usize, lambda: &Weight) -> Result<WeightMultiset> {
    let dominant = dominant_character(n, lambda)?;
    let mut out = WeightMultiset::new(n);
    for (mu, m) in dominant.iter() {
        for w in mu.orbit() {
            out.insert(w, *m);
        }
    }
    Ok(out)
}

/// Decompose a character into irreducibles by peeling off highest weights,
/// maximal by height and then lexicographically.
pub fn decompose(n: usize, chi: &WeightMultiset) -> Result<WeightDecomp> {
    if chi.rank() != n {
        return Err(Error::Guard(format!(
            "character has rank {}, expected {n}",
            chi.rank()
        )));
    }
    if let Some(bad) = chi.first_non_invariant() {
        return Err(Error::NotWeylInvariant {
            weight: bad.to_string(),
        });
    }
    let mut remaining: BTreeMap<Weight, i64> = chi
        .iter()
        .filter(|(w, _)| w.is_dominant())
        .map(|(w, c)| (w.clone(), c as i64))
        .collect();
    let mut summands = BTreeMap::new();
    while let Some(highest) = remaining
        .keys()
        .max_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)))
        .cloned()
    {
        let count = remaining[&highest];
        for (mu, m) in dominant_character(n, &highest)?.iter() {
            let entry = remaining.entry(mu.clone()).or_insert(0);
            *entry -= count * *m as i64;
            if *entry < 0 {
                return Err(Error::NegativeMultiplicity {
                    weight: mu.to_string(),
                    highest: highest.to_string(),
                });
            }
            if *entry == 0 {
                remaining.remove(mu);
            }
        }
        summands.insert(highest, count as u64);
    }
    Ok(WeightDecomp { n, summands })
}

/// Whether `Sym^t` of the standard representation is a summand of `Lambda^j`.
pub fn contains(n: usize, t: u32, j: u32) -> bool {
    let chi = ext_character(n, j);
    decompose(n, &chi)
        .map(|d| d.multiplicity(&Weight::sym_highest(n, t)) > 0)
        .unwrap_or(false)
}
