use std::fmt::{Debug, Display};

use crate::cartan::AffineForm;
use crate::scalars::{CartanFraction, QFraction};
use crate::{Coefficient, Error, Result};

/// Which coefficient field a route computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Classical,
    QuantumSymbolic,
}

/// Coefficient field shared by the route calculus in both modes.
///
/// The mode only changes three things: the bracket (`h` vs `[h]_q`), the
/// exponentials (`1` vs `q^η`) and, through them, the Cartan factor `B`.
pub trait ModeScalar: Clone + Debug + Display + PartialEq + Send + Sync {
    type Coeff: Coefficient;
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn constant(c: Self::Coeff) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// `τ_μ` with `pairings[k] = (α_k, μ)`.
    fn shift(&self, pairings: &[Self::Coeff]) -> Self;
    /// `η` classically, `[η]_q` in the quantum mode.
    fn bracket(eta: &AffineForm<Self::Coeff>) -> Result<Self>;
    /// `1` classically, `q^η` in the quantum mode.
    fn exp(eta: &AffineForm<Self::Coeff>) -> Result<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Cartan factor attached to `d = η_i − η_j`: `q^{−d}/[d]_q`, or `1/d`
    /// classically.
    fn b_factor(d: &AffineForm<Self::Coeff>) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroCartanFactor(d.to_string()));
        }
        Ok(Self::exp(&-d)?.mul(&Self::bracket(d)?.inv()?))
    }
}

impl<T: Coefficient> ModeScalar for CartanFraction<T> {
    type Coeff = T;
    const MODE: ScalarMode = ScalarMode::Classical;

    fn zero() -> Self {
        CartanFraction::zero()
    }
    fn one() -> Self {
        CartanFraction::one()
    }
    fn constant(c: T) -> Self {
        CartanFraction::constant(c)
    }
    fn is_zero(&self) -> bool {
        CartanFraction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        CartanFraction::inv(self)
    }
    fn shift(&self, pairings: &[T]) -> Self {
        CartanFraction::shift(self, pairings)
    }
    fn bracket(eta: &AffineForm<T>) -> Result<Self> {
        Ok(CartanFraction::from_affine(eta))
    }
    fn exp(_eta: &AffineForm<T>) -> Result<Self> {
        Ok(CartanFraction::one())
    }
}

impl<T: Coefficient> ModeScalar for QFraction<T> {
    type Coeff = T;
    const MODE: ScalarMode = ScalarMode::QuantumSymbolic;

    fn zero() -> Self {
        QFraction::zero()
    }
    fn one() -> Self {
        QFraction::one()
    }
    fn constant(c: T) -> Self {
        QFraction::constant(c)
    }
    fn is_zero(&self) -> bool {
        QFraction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        QFraction::inv(self)
    }
    fn shift(&self, pairings: &[T]) -> Self {
        QFraction::shift(self, pairings)
    }
    fn bracket(eta: &AffineForm<T>) -> Result<Self> {
        QFraction::bracket(eta)
    }
    fn exp(eta: &AffineForm<T>) -> Result<Self> {
        QFraction::q_pow(eta)
    }
}

/// Cartan factor `B` for the difference `η_i − η_j` in the requested mode.
pub fn b_factor<S: ModeScalar>(eta_i: &AffineForm<S::Coeff>, eta_j: &AffineForm<S::Coeff>) -> Result<S> {
    S::b_factor(&(eta_i - eta_j))
}
