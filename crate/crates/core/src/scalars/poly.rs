use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::AffineForm;
use crate::Coefficient;

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal
/// regardless of how many variables were mentioned when they were built.
pub type Exponents = Vec<i32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)).collect())
}

/// Sparse multivariate Laurent polynomial. Exponents may be negative; the
/// classical scalars only ever build ordinary polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<T> {
    terms: BTreeMap<Exponents, T>,
}

impl<T: Coefficient> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> Poly<T> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn monomial(exps: Exponents, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        Poly { terms }
    }

    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        Self::monomial(e, T::one())
    }

    /// Embeds an affine form with `h_{α_k}` as variable `k + offset`.
    pub fn from_affine_offset(form: &AffineForm<T>, offset: usize) -> Self {
        let mut p = Self::constant(form.constant.clone());
        for (k, c) in form.linear.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(
                    {
                        let mut e = vec![0; k + offset + 1];
                        e[k + offset] = 1;
                        e
                    },
                    c.clone(),
                );
            }
        }
        p
    }

    pub fn from_affine(form: &AffineForm<T>) -> Self {
        Self::from_affine_offset(form, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    pub fn constant_term(&self) -> T {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(T::zero)
    }

    /// Maximal total degree (sum of exponents) over all terms.
    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: T) {
        let exps = trim(exps);
        let entry = self.terms.entry(exps.clone()).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect() }
    }

    /// Multiply by a single monomial `x^exps`.
    pub fn shift_monomial(&self, exps: &[i32]) -> Self {
        Poly { terms: self.terms.iter().map(|(e, c)| (add_exps(e, exps), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitute `x_k ↦ x_k + shifts[k]` (ordinary polynomials only).
    pub fn translate(&self, shifts: &[T]) -> Self {
        if shifts.iter().all(|s| s.is_zero()) {
            return self.clone();
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (k, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                assert!(p > 0, "translate is defined on ordinary polynomials only");
                let s = shifts.get(k).cloned().unwrap_or_else(T::zero);
                let base = &Self::var(k) + &Self::constant(s);
                term = &term * &base.pow(p as u32);
            }
            out = &out + &term;
        }
        out
    }

    /// Multiply every monomial by `x_0^{Σ_k e_{k+offset}·shifts[k]}`: the
    /// action of `x_k ↦ x_k·q^{shifts[k]}` when variable 0 is `q`.
    pub fn scale_exponential(&self, shifts: &[i64], offset: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let extra: i64 = shifts
                .iter()
                .enumerate()
                .map(|(k, s)| s * e.get(k + offset).copied().unwrap_or(0) as i64)
                .sum();
            let mut e2 = e.clone();
            if e2.is_empty() {
                e2.push(0);
            }
            e2[0] += extra as i32;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Exact quotient by a non-constant affine form (variables `h_k` at index
    /// `k`), or `None` when the form does not divide.
    pub fn div_affine(&self, form: &AffineForm<T>) -> Option<Self> {
        let v = form.linear.iter().position(|c| !c.is_zero())?;
        let lead = form.linear[v].clone();
        // x_v = root, root = −(form − lead·x_v)/lead
        let mut rest = form.clone();
        rest.linear[v] = T::zero();
        let root = Self::from_affine(&rest).scale(&(-(T::one() / lead.clone())));
        // Split by powers of x_v.
        let mut by_power: BTreeMap<i32, Poly<T>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = e.get(v).copied().unwrap_or(0);
            if p < 0 {
                return None;
            }
            let mut e2 = e.clone();
            if v < e2.len() {
                e2[v] = 0;
            }
            by_power.entry(p).or_default().add_term(e2, c.clone());
        }
        let deg = match by_power.keys().next_back() {
            Some(&d) => d,
            None => return Some(Self::zero()),
        };
        if deg == 0 {
            return None;
        }
        // Synthetic division by (x_v − root).
        let mut quotient_coeffs: Vec<Poly<T>> = vec![Self::zero(); deg as usize];
        let mut carry = Self::zero();
        for k in (1..=deg).rev() {
            let a_k = by_power.remove(&k).unwrap_or_default();
            carry = &a_k + &(&root * &carry);
            quotient_coeffs[(k - 1) as usize] = carry.clone();
        }
        let a_0 = by_power.remove(&0).unwrap_or_default();
        let remainder = &a_0 + &(&root * &carry);
        if !remainder.is_zero() {
            return None;
        }
        let mut q = Self::zero();
        let inv_lead = T::one() / lead;
        for (k, coeff) in quotient_coeffs.into_iter().enumerate() {
            let mut e = vec![0; v + 1];
            e[v] = k as i32;
            q = &q + &coeff.shift_monomial(&e);
        }
        Some(q.scale(&inv_lead))
    }

    /// Evaluate at a point; variables beyond `point` are taken as zero.
    pub fn eval(&self, point: &[T]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &p) in e.iter().enumerate() {
                let x = point.get(k).cloned().unwrap_or_else(T::zero);
                if p >= 0 {
                    for _ in 0..p {
                        t = t * x.clone();
                    }
                } else {
                    for _ in 0..(-p) {
                        t = t / x.clone();
                    }
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Render with caller-supplied variable names.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(k, &p)| if p == 1 { name(k) } else { format!("{}^{}", name(k), p) })
                .collect();
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push(' ');
                }
                out.push_str(&vars.join(" "));
            }
        }
        out
    }
}

impl<T: Coefficient> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Coefficient> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<T: Coefficient> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl<T: Coefficient> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(add_exps(e1, e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Coefficient> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|k| format!("x{k}")))
    }
}
