use std::cmp::Ordering;

/// Exponent vector over a generator table, with its cached complex degree.
///
/// Ordering is by degree first, then reverse lexicographic on the exponents
/// so that higher powers of earlier generators print first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub(crate) fn new(exps: Vec<u32>, degree: u32) -> Self {
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(len: usize) -> Self {
        Monomial::new(vec![0; len], 0)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        Monomial::new(exps, self.degree + other.degree)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
