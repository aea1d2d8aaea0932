use std::collections::BTreeMap;
use std::fmt;

use crate::CartanScalar;

/// Index of a generator in the envelope's sorted generator list; comparing
/// indices compares generators in the PBW order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u16);

/// Ordered monomial `g_1^{p_1} … g_k^{p_k}` with strictly ascending generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(pub(crate) Vec<(Gen, u32)>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        PbwMonomial(vec![(g, 1)])
    }

    /// Build from (generator, power) pairs; `None` unless strictly ascending
    /// with positive powers.
    pub fn from_factors(factors: Vec<(Gen, u32)>) -> Option<Self> {
        let ascending = factors.windows(2).all(|w| w[0].0 < w[1].0);
        if ascending && factors.iter().all(|&(_, p)| p > 0) {
            Some(PbwMonomial(factors))
        } else {
            None
        }
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, p)| p).sum()
    }

    pub fn first(&self) -> Option<Gen> {
        self.0.first().map(|&(g, _)| g)
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().map(|&(g, _)| g)
    }

    /// The generators with repetition, left to right.
    pub fn word(&self) -> Vec<Gen> {
        self.0.iter().flat_map(|&(g, p)| std::iter::repeat_n(g, p as usize)).collect()
    }

    /// Collapse a sorted word.
    pub(crate) fn from_sorted_word(word: &[Gen]) -> Self {
        let mut out: Vec<(Gen, u32)> = Vec::new();
        for &g in word {
            match out.last_mut() {
                Some((h, p)) if *h == g => *p += 1,
                _ => out.push((g, 1)),
            }
        }
        PbwMonomial(out)
    }

    pub(crate) fn prepend(&self, g: Gen) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push((g, 1));
        v.extend_from_slice(&self.0);
        PbwMonomial(v)
    }

    pub(crate) fn bump_first(&self) -> Self {
        let mut v = self.0.clone();
        v[0].1 += 1;
        PbwMonomial(v)
    }

    /// Drop one copy of the first generator.
    pub(crate) fn drop_first(&self) -> Self {
        let mut v = self.0.clone();
        if v[0].1 == 1 {
            v.remove(0);
        } else {
            v[0].1 -= 1;
        }
        PbwMonomial(v)
    }
}

/// Element of the localized enveloping algebra: normal-ordered monomials with
/// Cartan coefficients written on the right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<PbwMonomial, CartanScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(CartanScalar::one())
    }

    pub fn scalar(s: CartanScalar) -> Self {
        Self::term(PbwMonomial::one(), s)
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, CartanScalar::one())
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(PbwMonomial::single(g))
    }

    pub fn term(m: PbwMonomial, s: CartanScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, s);
        out
    }

    pub fn add_term(&mut self, m: PbwMonomial, s: CartanScalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                let sum = &*c + &s;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(m, s);
            }
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    /// Multiply every coefficient on the right by `s`.
    pub fn mul_scalar_right(&self, s: &CartanScalar) -> AlgebraElement {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &CartanScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> CartanScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn filter(&self, keep: impl Fn(&PbwMonomial) -> bool) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl FromIterator<(PbwMonomial, CartanScalar)> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = (PbwMonomial, CartanScalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}
