use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::AffineForm;
use crate::coeff::from_i64;
use crate::scalars::Poly;
use crate::{Coefficient, Error, Result};

/// Rational function in the Cartan variables `h_k` whose denominator is a
/// product of affine forms.
///
/// Normal form: every denominator factor has leading (first nonzero) linear
/// coefficient 1, no factor divides the numerator, and zero has an empty
/// denominator. Under these rules structural equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanFraction<T> {
    num: Poly<T>,
    den: BTreeMap<AffineForm<T>, u32>,
}

impl<T: Coefficient> Default for CartanFraction<T> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Scale `form` so its first nonzero linear coefficient is 1; returns the
/// factor that was divided out. Trailing zero coefficients are trimmed so
/// that the result is a canonical map key.
fn monic<T: Coefficient>(form: &AffineForm<T>) -> (AffineForm<T>, T) {
    let mut form = form.clone();
    while form.linear.last().is_some_and(|c| c.is_zero()) {
        form.linear.pop();
    }
    match form.linear.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            (form.scale(&(T::one() / lead.clone())), lead)
        }
        None => (form, T::one()),
    }
}

impl<T: Coefficient> CartanFraction<T> {
    pub fn zero() -> Self {
        CartanFraction { num: Poly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(from_i64(n))
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        CartanFraction { num: p, den: BTreeMap::new() }
    }

    pub fn from_affine(form: &AffineForm<T>) -> Self {
        Self::from_poly(Poly::from_affine(form))
    }

    /// `1/form`.
    pub fn inv_affine(form: &AffineForm<T>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if form.is_constant() {
            return Ok(Self::constant(T::one() / form.constant.clone()));
        }
        let (m, lead) = monic(form);
        let mut den = BTreeMap::new();
        den.insert(m, 1);
        Ok(CartanFraction { num: Poly::constant(T::one() / lead), den })
    }

    /// Build `num / Π factors` and bring it to normal form.
    pub fn from_parts(num: Poly<T>, factors: &[(AffineForm<T>, u32)]) -> Result<Self> {
        let mut out = Self::from_poly(num);
        for (f, e) in factors {
            let inv = Self::inv_affine(f)?;
            for _ in 0..*e {
                out = &out * &inv;
            }
        }
        Ok(out)
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&AffineForm<T>, u32)> {
        self.den.iter().map(|(f, e)| (f, *e))
    }

    pub fn denominator_degree(&self) -> u32 {
        self.den.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    /// The value when the fraction is a constant.
    pub fn as_constant(&self) -> Option<T> {
        if self.den.is_empty() && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    fn normalize(mut num: Poly<T>, den: BTreeMap<AffineForm<T>, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut out = BTreeMap::new();
        for (f, mut e) in den {
            while e > 0 {
                match num.div_affine(&f) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out.insert(f, e);
            }
        }
        CartanFraction { num, den: out }
    }

    fn den_poly(den: &BTreeMap<AffineForm<T>, u32>) -> Poly<T> {
        den.iter().fold(Poly::one(), |acc, (f, e)| &acc * &Poly::from_affine(f).pow(*e))
    }

    /// Multiplicative inverse. Supported when the numerator has total degree
    /// at most one, which covers every inversion the constructions need.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let new_num = Self::den_poly(&self.den);
        if self.num.is_constant() {
            return Ok(Self::from_poly(new_num.scale(&(T::one() / self.num.constant_term()))));
        }
        if self.num.total_degree() == 1 && self.num.terms().all(|(e, _)| e.iter().all(|&p| p >= 0)) {
            return Self::from_parts(new_num, &[(affine_of(&self.num), 1)]);
        }
        Err(Error::NotInvertible(self.to_string()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::normalize(self.num.scale(s), self.den.clone())
    }

    /// Translation automorphism `τ_μ` with `pairings[k] = (α_k, μ)`.
    pub fn shift(&self, pairings: &[T]) -> Self {
        if pairings.iter().all(|p| p.is_zero()) || self.is_zero() {
            return self.clone();
        }
        CartanFraction {
            num: self.num.translate(pairings),
            den: self.den.iter().map(|(f, e)| (f.shift(pairings), *e)).collect(),
        }
    }

    /// Value at a point `h_k = point[k]`, `None` on a pole.
    pub fn eval(&self, point: &[T]) -> Option<T> {
        let mut d = T::one();
        for (f, e) in &self.den {
            let v = Poly::from_affine(f).eval(point);
            if v.is_zero() {
                return None;
            }
            for _ in 0..*e {
                d = d * v.clone();
            }
        }
        Some(self.num.eval(point) / d)
    }

    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let num = self.num.render(name);
        if self.den.is_empty() {
            return num;
        }
        let dens: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                let s = Poly::from_affine(f).render(name);
                if *e == 1 {
                    format!("({s})")
                } else {
                    format!("({s})^{e}")
                }
            })
            .collect();
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        format!("{num}/{}", dens.join(""))
    }
}

/// Read back a degree-one polynomial as an affine form.
fn affine_of<T: Coefficient>(p: &Poly<T>) -> AffineForm<T> {
    let rank = p.terms().map(|(e, _)| e.len()).max().unwrap_or(0);
    let mut form = AffineForm::zero(rank);
    for (e, c) in p.terms() {
        match e.iter().position(|&x| x != 0) {
            None => form.constant = c.clone(),
            Some(k) => form.linear[k] = c.clone(),
        }
    }
    form
}

impl<T: Coefficient> Add for &CartanFraction<T> {
    type Output = CartanFraction<T>;
    fn add(self, rhs: &CartanFraction<T>) -> CartanFraction<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return CartanFraction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, e) in &rhs.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |x: &CartanFraction<T>| {
            let mut p = x.num.clone();
            for (f, e) in &lcm {
                let have = x.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    p = &p * &Poly::from_affine(f).pow(e - have);
                }
            }
            p
        };
        let num = &lift(self) + &lift(rhs);
        CartanFraction::normalize(num, lcm)
    }
}

impl<T: Coefficient> Neg for &CartanFraction<T> {
    type Output = CartanFraction<T>;
    fn neg(self) -> CartanFraction<T> {
        CartanFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Coefficient> Sub for &CartanFraction<T> {
    type Output = CartanFraction<T>;
    fn sub(self, rhs: &CartanFraction<T>) -> CartanFraction<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Mul for &CartanFraction<T> {
    type Output = CartanFraction<T>;
    fn mul(self, rhs: &CartanFraction<T>) -> CartanFraction<T> {
        if self.is_zero() || rhs.is_zero() {
            return CartanFraction::zero();
        }
        if rhs.den.is_empty() && rhs.num.is_constant() {
            return self.scale(&rhs.num.constant_term());
        }
        if self.den.is_empty() && self.num.is_constant() {
            return rhs.scale(&self.num.constant_term());
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        CartanFraction::normalize(&self.num * &rhs.num, den)
    }
}

impl<T: Coefficient> fmt::Display for CartanFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|k| format!("h_{}", k + 1)))
    }
}
