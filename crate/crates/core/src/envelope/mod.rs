//! PBW normal ordering in the localized enveloping algebra of `a = sl(n)`.
//!
//! Generators are the off-diagonal matrix units, sorted as
//! `g₋ < complement₋ < complement₊ < g₊` (then by height and ε-coordinates).
//! Cartan elements never appear in monomials: they are absorbed into
//! right-hand [`CartanScalar`] coefficients using `f·x = x·τ_{wt x}(f)`.
//! With this order the left ideal `J₊ = A·g₊` is spanned by the monomials
//! ending in a `g₊` generator and `J₋ = g₋·A` by those starting in `g₋`.

mod element;
mod monitor;
mod structure;

use std::collections::HashMap;
use std::sync::RwLock;

pub use element::{AlgebraElement, Gen, PbwMonomial};
pub use monitor::{straighten_word, StraightenStats};
pub use structure::{BasisElement, LinComb, StructureConstants};

use crate::{rat, AffineForm, CartanScalar, Error, LeviPair, Rat, Result, Weight};

/// Position of a generator relative to the split `a = g ⊕ complement`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SortClass {
    GMinus,
    ComplementMinus,
    ComplementPlus,
    GPlus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub label: String,
    /// Matrix-unit indices, 0-based.
    pub indices: (usize, usize),
    pub weight: Weight,
    pub sort_class: SortClass,
}

#[derive(Debug, Clone)]
pub(crate) enum Bracket {
    Zero,
    Gen(Gen, Rat),
    Cartan(AffineForm),
}

type Memo = RwLock<HashMap<(Gen, PbwMonomial), AlgebraElement>>;

/// Straightening engine for one Levi pair. The memo table is an idempotent
/// cache; concurrent use from several threads is safe.
#[derive(Debug)]
pub struct Envelope {
    levi: LeviPair,
    table: StructureConstants,
    gens: Vec<GeneratorSymbol>,
    index: HashMap<(usize, usize), Gen>,
    pairings: Vec<Vec<Rat>>,
    brackets: Vec<Vec<Bracket>>,
    memo: Memo,
}

fn matrix_label(n: usize, i: usize, j: usize) -> String {
    if n > 9 {
        format!("e_{{{},{}}}", i + 1, j + 1)
    } else {
        format!("e_{{{}{}}}", i + 1, j + 1)
    }
}

impl Envelope {
    pub fn new(levi: LeviPair) -> Self {
        let rs = levi.ambient.clone();
        let n = rs.dim();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let weight = Weight::root(n, i, j);
                let positive = i < j;
                let base = if positive { weight.clone() } else { -&weight };
                let in_g = levi.is_g_root(&base);
                let sort_class = match (in_g, positive) {
                    (true, false) => SortClass::GMinus,
                    (false, false) => SortClass::ComplementMinus,
                    (false, true) => SortClass::ComplementPlus,
                    (true, true) => SortClass::GPlus,
                };
                gens.push(GeneratorSymbol { label: matrix_label(n, i, j), indices: (i, j), weight, sort_class });
            }
        }
        gens.sort_by_key(|g| {
            let (i, j) = g.indices;
            (g.sort_class, i.abs_diff(j), g.weight.clone())
        });
        let index = gens.iter().enumerate().map(|(k, g)| (g.indices, Gen(k as u16))).collect::<HashMap<_, _>>();
        let pairings = gens.iter().map(|g| rs.shift_pairings(&g.weight)).collect();
        let table = StructureConstants::new(rs);
        let brackets = gens
            .iter()
            .map(|a| {
                gens.iter()
                    .map(|b| {
                        let (i, j) = a.indices;
                        let (k, l) = b.indices;
                        let comb = table.bracket(BasisElement::E(i, j), BasisElement::E(k, l));
                        if comb.is_empty() {
                            return Bracket::Zero;
                        }
                        if j == k && i == l {
                            let mut form = AffineForm::zero(table.root_system().rank);
                            for (x, c) in comb {
                                if let BasisElement::H(m) = x {
                                    form.linear[m] = c;
                                }
                            }
                            return Bracket::Cartan(form);
                        }
                        let (x, c) = comb.into_iter().next().unwrap();
                        match x {
                            BasisElement::E(p, s) => Bracket::Gen(index[&(p, s)], c),
                            BasisElement::H(_) => unreachable!("off-diagonal bracket with Cartan part"),
                        }
                    })
                    .collect()
            })
            .collect();
        Envelope { levi, table, gens, index, pairings, brackets, memo: RwLock::new(HashMap::new()) }
    }

    pub fn levi(&self) -> &LeviPair {
        &self.levi
    }

    pub fn table(&self) -> &StructureConstants {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.levi.rank()
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.gens
    }

    pub fn symbol(&self, g: Gen) -> &GeneratorSymbol {
        &self.gens[g.0 as usize]
    }

    pub fn sort_class(&self, g: Gen) -> SortClass {
        self.symbol(g).sort_class
    }

    /// Generator `e_{ij}` (0-based).
    pub fn matrix_unit(&self, i: usize, j: usize) -> Option<Gen> {
        self.index.get(&(i, j)).copied()
    }

    /// Root vector `e_β` for any root `β`.
    pub fn root_vector(&self, beta: &Weight) -> Result<Gen> {
        let (i, j) = self.levi.ambient.root_indices(beta).ok_or_else(|| Error::NotARoot(beta.to_string()))?;
        Ok(self.index[&(i, j)])
    }

    /// Generator with the given display label.
    pub fn by_label(&self, label: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.label == label).map(|k| Gen(k as u16))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub(crate) fn bracket_gens(&self, a: Gen, b: Gen) -> &Bracket {
        &self.brackets[a.0 as usize][b.0 as usize]
    }

    pub(crate) fn gen_pairings(&self, g: Gen) -> &[Rat] {
        &self.pairings[g.0 as usize]
    }

    /// `(α_k, wt)` for the monomial's weight: the data of `τ_{wt}`.
    pub fn pairings_of(&self, word: impl IntoIterator<Item = (Gen, u32)>) -> Vec<Rat> {
        let mut out = vec![rat(0); self.rank()];
        for (g, p) in word {
            for (o, x) in out.iter_mut().zip(self.gen_pairings(g)) {
                *o += x * rat(p as i64);
            }
        }
        out
    }

    pub fn weight_of(&self, m: &PbwMonomial) -> Weight {
        m.factors()
            .iter()
            .fold(Weight::zero(self.levi.ambient.dim()), |acc, &(g, p)| &acc + &self.symbol(g).weight.scale(&rat(p as i64)))
    }

    /// `g·m` in normal order.
    fn lmul_mono(&self, g: Gen, m: &PbwMonomial) -> AlgebraElement {
        let Some(n1) = m.first() else {
            return AlgebraElement::gen(g);
        };
        if g < n1 {
            return AlgebraElement::monomial(m.prepend(g));
        }
        if g == n1 {
            return AlgebraElement::monomial(m.bump_first());
        }
        let key = (g, m.clone());
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }
        // g·n1·R = n1·(g·R) + [g, n1]·R
        let rest = m.drop_first();
        let inner = self.lmul_mono(g, &rest);
        let mut out = self.left_mul_gen(n1, &inner);
        match self.bracket_gens(g, n1) {
            Bracket::Zero => {}
            Bracket::Gen(g2, c) => {
                out.add_assign(&self.lmul_mono(*g2, &rest).mul_scalar_right(&CartanScalar::constant(c.clone())));
            }
            Bracket::Cartan(form) => {
                let shifted = form.shift(&self.pairings_of(rest.factors().iter().copied()));
                out.add_term(rest.clone(), CartanScalar::from_affine(&shifted));
            }
        }
        self.memo.write().expect("memo lock").insert(key, out.clone());
        out
    }

    /// `g·a` in normal order.
    pub fn left_mul_gen(&self, g: Gen, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in a.terms() {
            out.add_assign(&self.lmul_mono(g, m).mul_scalar_right(c));
        }
        out
    }

    /// `s·a`: move a Cartan scalar from the left to the right of every monomial.
    pub fn scalar_left(&self, s: &CartanScalar, a: &AlgebraElement) -> AlgebraElement {
        a.terms()
            .map(|(m, c)| (m.clone(), &s.shift(&self.pairings_of(m.factors().iter().copied())) * c))
            .collect()
    }

    /// Normal-ordered product.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in a.terms() {
            // (m1 c1)·b = m1·(c1·b)
            let mut x = self.scalar_left(c1, b);
            for g in m1.word().into_iter().rev() {
                x = self.left_mul_gen(g, &x);
            }
            out.add_assign(&x);
        }
        out
    }

    /// `e_α·a` for a simple root `α_k` of `g` (0-based `k`).
    pub fn act_raising(&self, k: usize, a: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.levi.is_g_simple(k) {
            return Err(Error::NotInSubalgebra(k + 1));
        }
        let g = self.matrix_unit(k, k + 1).expect("simple root vector");
        Ok(self.left_mul_gen(g, a))
    }

    /// Representative modulo `J₊`.
    pub fn reduce_mod_jplus(&self, a: &AlgebraElement) -> AlgebraElement {
        a.filter(|m| m.last().is_none_or(|g| self.sort_class(g) != SortClass::GPlus))
    }

    /// Representative modulo `J₋ + J₊`.
    pub fn double_coset_reduce(&self, a: &AlgebraElement) -> AlgebraElement {
        self.reduce_mod_jplus(a).filter(|m| m.first().is_none_or(|g| self.sort_class(g) != SortClass::GMinus))
    }

    /// Degree in complement generators and in `g` generators.
    pub fn split_degree(&self, m: &PbwMonomial) -> (u32, u32) {
        let mut comp = 0;
        let mut g = 0;
        for &(x, p) in m.factors() {
            match self.sort_class(x) {
                SortClass::ComplementMinus | SortClass::ComplementPlus => comp += p,
                _ => g += p,
            }
        }
        (comp, g)
    }

    /// Leading term: highest complement degree, then fewest `g` generators,
    /// then the lexicographically largest monomial.
    pub fn leading_term(&self, a: &AlgebraElement) -> Result<(PbwMonomial, CartanScalar)> {
        a.terms()
            .max_by_key(|(m, _)| {
                let (comp, g) = self.split_degree(m);
                (comp, std::cmp::Reverse(g), (*m).clone())
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroElement)
    }

    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.factors()
            .iter()
            .map(|&(g, p)| {
                let l = &self.symbol(g).label;
                if p == 1 {
                    l.clone()
                } else {
                    format!("{l}^{p}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let name = |k: usize| format!("h_{}", k + 1);
        a.terms()
            .map(|(m, c)| {
                let mono = self.render_monomial(m);
                if c.is_one() {
                    mono
                } else {
                    format!("{mono}·[{}]", c.render(&name))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use crate::RootSystem;

    fn env(rank: usize, levi: &[usize]) -> Envelope {
        Envelope::new(LeviPair::new(RootSystem::build(Series::A, rank).unwrap(), levi).unwrap())
    }

    fn h(rank: usize, k: usize) -> CartanScalar {
        CartanScalar::from_affine(&AffineForm::var(rank, k))
    }

    #[test]
    fn order_respects_classes() {
        let e = env(3, &[0, 1]);
        let classes: Vec<_> = e.generators().iter().map(|g| g.sort_class).collect();
        let mut sorted = classes.clone();
        sorted.sort();
        assert_eq!(classes, sorted);
        assert_eq!(e.sort_class(e.matrix_unit(0, 1).unwrap()), SortClass::GPlus);
        assert_eq!(e.sort_class(e.matrix_unit(2, 0).unwrap()), SortClass::GMinus);
        assert_eq!(e.sort_class(e.matrix_unit(0, 3).unwrap()), SortClass::ComplementPlus);
        assert_eq!(e.sort_class(e.matrix_unit(3, 1).unwrap()), SortClass::ComplementMinus);
    }

    #[test]
    fn sl2_relation() {
        let e = env(2, &[0]);
        let e12 = AlgebraElement::gen(e.matrix_unit(0, 1).unwrap());
        let e21 = AlgebraElement::gen(e.matrix_unit(1, 0).unwrap());
        let prod = e.multiply(&e12, &e21);
        let expected = e.multiply(&e21, &e12).add(&AlgebraElement::scalar(h(2, 0)));
        assert_eq!(prod, expected);
        assert_eq!(prod.len(), 2);
    }

    #[test]
    fn coefficient_crosses_with_shift() {
        let e = env(2, &[0]);
        let g = e.matrix_unit(0, 1).unwrap();
        let f = CartanScalar::inv_affine(&AffineForm::var(2, 0).add_constant(&rat(-1))).unwrap();
        let left = e.multiply(&AlgebraElement::scalar(f.clone()), &AlgebraElement::gen(g));
        // τ_α(1/(h_1 − 1)) = 1/(h_1 + 1)
        let shifted = CartanScalar::inv_affine(&AffineForm::var(2, 0).add_constant(&rat(1))).unwrap();
        assert_eq!(left, AlgebraElement::term(PbwMonomial::single(g), shifted));
    }

    #[test]
    fn identity_is_neutral() {
        let e = env(2, &[0]);
        let a = AlgebraElement::gen(e.matrix_unit(1, 2).unwrap());
        assert_eq!(e.multiply(&AlgebraElement::one(), &a), a);
        assert_eq!(e.multiply(&a, &AlgebraElement::one()), a);
    }

    #[test]
    fn raising_examples() {
        let e = env(2, &[0]);
        let e23 = AlgebraElement::gen(e.matrix_unit(1, 2).unwrap());
        let out = e.act_raising(0, &e23).unwrap();
        let e13 = AlgebraElement::gen(e.matrix_unit(0, 2).unwrap());
        let e12 = AlgebraElement::gen(e.matrix_unit(0, 1).unwrap());
        assert_eq!(out, e13.add(&e.multiply(&e23, &e12)));
        assert_eq!(e.act_raising(0, &AlgebraElement::one()).unwrap(), e12);
        assert!(matches!(e.act_raising(1, &e23), Err(Error::NotInSubalgebra(2))));
        let f = AlgebraElement::gen(e.matrix_unit(1, 0).unwrap());
        let ef = e.act_raising(0, &f).unwrap();
        assert_eq!(ef, e.multiply(&f, &e12).add(&AlgebraElement::scalar(h(2, 0))));
    }

    #[test]
    fn ideal_filters() {
        let e = env(3, &[0, 1]);
        let f = |i, j| AlgebraElement::gen(e.matrix_unit(i, j).unwrap());
        let e21e12 = e.multiply(&f(1, 0), &f(0, 1));
        assert!(e.reduce_mod_jplus(&e21e12).is_zero());
        let c = AlgebraElement::scalar(h(3, 1));
        assert_eq!(e.reduce_mod_jplus(&c), c);
        let fe = e.multiply(&f(1, 0), &f(0, 3));
        assert_eq!(e.reduce_mod_jplus(&fe), fe);
        assert!(e.double_coset_reduce(&fe).is_zero());
        let ee = e.multiply(&f(0, 3), &f(1, 3));
        assert_eq!(e.double_coset_reduce(&ee), ee);
        assert_eq!(e.double_coset_reduce(&c), c);
    }

    #[test]
    fn leading_terms() {
        let e = env(2, &[0]);
        let g = |i, j| AlgebraElement::gen(e.matrix_unit(i, j).unwrap());
        let a = g(1, 2);
        assert_eq!(e.leading_term(&a).unwrap().0, PbwMonomial::single(e.matrix_unit(1, 2).unwrap()));
        let b = e.multiply(&g(1, 0), &g(0, 2));
        let sum = a.add(&b);
        assert_eq!(e.leading_term(&sum).unwrap().0, PbwMonomial::single(e.matrix_unit(1, 2).unwrap()));
        assert!(matches!(e.leading_term(&AlgebraElement::zero()), Err(Error::ZeroElement)));
    }

    #[test]
    fn left_ideal_property() {
        let e = env(2, &[0]);
        let g = |i, j| AlgebraElement::gen(e.matrix_unit(i, j).unwrap());
        let j = e.multiply(&g(1, 2), &g(0, 1));
        for a in [g(2, 0), g(1, 0), g(0, 2), AlgebraElement::scalar(h(2, 1))] {
            assert!(e.reduce_mod_jplus(&e.multiply(&a, &j)).is_zero());
        }
    }
}
