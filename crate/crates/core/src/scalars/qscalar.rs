use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::AffineForm;
use crate::scalars::Poly;
use crate::{Coefficient, Error, Result};

/// Ratio of Laurent polynomials in `q` (variable 0) and `t_k = q^{h_{α_k}}`
/// (variable `k + 1`).
///
/// Every exponential `q^η` of an integral affine form `η` is the Laurent
/// monomial `q^{η_0} Π t_k^{η_k}`, so the exponent ledger is the fixed basis
/// `{q, t_1, …, t_r}`. Equality is decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct QFraction<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coefficient> QFraction<T> {
    pub fn zero() -> Self {
        QFraction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        QFraction { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        QFraction { num: p, den: Poly::one() }
    }

    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::tidy(num, den))
    }

    fn tidy(num: Poly<T>, den: Poly<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // A monomial denominator is absorbed into the numerator.
        if den.len() == 1 {
            let (e, c) = den.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let inv: Vec<i32> = e.iter().map(|x| -x).collect();
            return QFraction { num: num.shift_monomial(&inv).scale(&(T::one() / c)), den: Poly::one() };
        }
        QFraction { num, den }
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::var(0))
    }

    /// `q^η` for an integral affine form.
    pub fn q_pow(eta: &AffineForm<T>) -> Result<Self> {
        let exps = eta.integer_exponents().ok_or_else(|| Error::NonIntegralExponent(eta.to_string()))?;
        let exps: Vec<i32> = exps.into_iter().map(|x| x as i32).collect();
        Ok(Self::from_poly(Poly::monomial(exps, T::one())))
    }

    /// `[η]_q = (q^η − q^{−η}) / (q − q^{−1})`.
    pub fn bracket(eta: &AffineForm<T>) -> Result<Self> {
        let x = Self::q_pow(eta)?;
        let xinv = Self::q_pow(&-eta)?;
        let num = &x.num - &xinv.num;
        Self::new(num, Self::q_minus_qinv())
    }

    fn q_minus_qinv() -> Poly<T> {
        &Poly::var(0) - &Poly::monomial(vec![-1], T::one())
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::tidy(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// `τ_μ`: `t_k ↦ t_k q^{(α_k, μ)}` with `pairings[k] = (α_k, μ)`.
    ///
    /// # Panics
    /// If a pairing is not an integer; Hasse diagrams only admit integral
    /// weights, so every shift arising in the route calculus is integral.
    pub fn shift(&self, pairings: &[T]) -> Self {
        let ints: Vec<i64> = pairings
            .iter()
            .map(|p| p.to_exact_i64().expect("q-shift requires integral pairings"))
            .collect();
        if ints.iter().all(|&p| p == 0) {
            return self.clone();
        }
        Self::tidy(self.num.scale_exponential(&ints, 1), self.den.scale_exponential(&ints, 1))
    }

    /// Evaluate at numeric `q` and `t_k`.
    pub fn eval(&self, point: &[T]) -> Option<T> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    fn name(k: usize) -> String {
        if k == 0 {
            "q".to_string()
        } else {
            format!("t_{k}")
        }
    }
}

impl<T: Coefficient> PartialEq for QFraction<T> {
    fn eq(&self, other: &Self) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl<T: Coefficient> Add for &QFraction<T> {
    type Output = QFraction<T>;
    fn add(self, rhs: &QFraction<T>) -> QFraction<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QFraction::tidy(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QFraction::tidy(num, &self.den * &rhs.den)
    }
}

impl<T: Coefficient> Neg for &QFraction<T> {
    type Output = QFraction<T>;
    fn neg(self) -> QFraction<T> {
        QFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Coefficient> Sub for &QFraction<T> {
    type Output = QFraction<T>;
    fn sub(self, rhs: &QFraction<T>) -> QFraction<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Mul for &QFraction<T> {
    type Output = QFraction<T>;
    fn mul(self, rhs: &QFraction<T>) -> QFraction<T> {
        if self.is_zero() || rhs.is_zero() {
            return QFraction::zero();
        }
        // Cancel a shared denominator against a numerator when they coincide.
        if self.den == rhs.num {
            return QFraction::tidy(self.num.clone(), rhs.den.clone());
        }
        if rhs.den == self.num {
            return QFraction::tidy(rhs.num.clone(), self.den.clone());
        }
        QFraction::tidy(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Coefficient> fmt::Display for QFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.render(&Self::name);
        if self.den == Poly::one() {
            return f.write_str(&num);
        }
        write!(f, "({num})/({})", self.den.render(&Self::name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QScalar, Rat};

    fn affine(lin: &[i64], c: i64) -> AffineForm<Rat> {
        AffineForm { linear: lin.iter().map(|&x| rat(x)).collect(), constant: rat(c) }
    }

    #[test]
    fn q_numbers() {
        assert!(QScalar::bracket(&affine(&[0], 0)).unwrap().is_zero());
        assert_eq!(QScalar::bracket(&affine(&[0], 1)).unwrap(), QScalar::one());
        // [2]_q = q + q^{-1}
        let two = &QScalar::q() + &QScalar::q().inv().unwrap();
        assert_eq!(QScalar::bracket(&affine(&[], 2)).unwrap(), two);
    }

    #[test]
    fn bracket_rearrangement() {
        // [η]_q (q − q⁻¹) + x⁻¹ = x
        let eta = affine(&[1, -2], 3);
        let x = QScalar::q_pow(&eta).unwrap();
        let xinv = QScalar::q_pow(&-&eta).unwrap();
        let qq = &QScalar::q() - &QScalar::q().inv().unwrap();
        let lhs = &(&QScalar::bracket(&eta).unwrap() * &qq) + &xinv;
        assert_eq!(lhs, x);
    }

    #[test]
    fn exponentials_multiply() {
        let a = affine(&[1, 0], 2);
        let b = affine(&[-1, 3], -5);
        let prod = &QScalar::q_pow(&a).unwrap() * &QScalar::q_pow(&b).unwrap();
        assert_eq!(prod, QScalar::q_pow(&(&a + &b)).unwrap());
    }

    #[test]
    fn non_integral_exponent_rejected() {
        let eta = AffineForm { linear: vec![crate::ratio(1, 2)], constant: rat(0) };
        assert!(matches!(QScalar::q_pow(&eta), Err(Error::NonIntegralExponent(_))));
    }

    #[test]
    fn shift_moves_exponents() {
        // τ_μ(q^{h_1}) = q^{h_1} q^{(α_1, μ)}
        let h = QScalar::q_pow(&affine(&[1], 0)).unwrap();
        assert_eq!(h.shift(&[rat(2)]), QScalar::q_pow(&affine(&[1], 2)).unwrap());
        let b = QScalar::bracket(&affine(&[1, 1], -1)).unwrap();
        assert_eq!(b.shift(&[rat(1), rat(-3)]), QScalar::bracket(&affine(&[1, 1], -3)).unwrap());
    }

    #[test]
    fn machine_rationals_instantiate() {
        type Q64 = QFraction<num_rational::Rational64>;
        let eta = AffineForm { linear: vec![num_rational::Rational64::from_integer(1)], constant: num_rational::Rational64::from_integer(1) };
        assert!(!Q64::bracket(&eta).unwrap().is_zero());
    }
}
