//! Exact symbolic construction of Mickelsson (step) algebra generators for a
//! reductive pair `g ⊂ a` of complex Lie algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`cartan`]: root data of the ambient A-series algebra, Levi pairs,
//!   affine Cartan forms and the `η` forms controlling every denominator.
//! * [`scalars`]: exact rational functions in Cartan
//!   variables with factored affine denominators, and q-symbolic Laurent
//!   fractions.
//! * [`envelope`]: PBW normal ordering in the localized enveloping algebra
//!   and reduction modulo the left/right ideals generated by `g₊` / `g₋`.
//! * [`hasse`]: Hasse diagrams of graded modules, routes and their partial
//!   operations.
//! * [`routes`]: the local operators `∂_{l,r}`, `∇_{l,r}`, projections to the
//!   enveloping algebra, Cartan factors and chain classification.
//! * [`generators`]: canonical elements `z_i` and the closed Levi formula.
//! * [`projector`]: an independent extremal-projector oracle.
//!
//! Polynomial and fraction arithmetic is generic over the exact coefficient
//! type (any [`Coefficient`]); the high-level modules are instantiated at
//! [`Rat`], an arbitrary-precision rational.

pub mod cartan;
mod coeff;
pub mod envelope;
mod error;
pub mod generators;
pub mod hasse;
pub mod projector;
pub mod routes;
pub mod scalars;

pub use coeff::Coefficient;
pub use error::{Error, Result};

/// Arbitrary-precision rational numbers, the default coefficient type.
pub type Rat = num_rational::BigRational;

/// A weight in ambient ε-coordinates with [`Rat`] entries.
pub type Weight = cartan::Weight<Rat>;
/// Affine form `Σ c_k h_{α_k} + c` with [`Rat`] coefficients.
pub type AffineForm = cartan::AffineForm<Rat>;
/// Root system with [`Rat`] coordinates.
pub type RootSystem = cartan::RootSystem<Rat>;
/// Levi-type pair with [`Rat`] coordinates.
pub type LeviPair = cartan::LeviPair<Rat>;
/// Multivariate (Laurent) polynomial over [`Rat`].
pub type Poly = scalars::Poly<Rat>;
/// Classical coefficient: rational function in the Cartan variables.
pub type CartanScalar = scalars::CartanFraction<Rat>;
/// q-symbolic coefficient: ratio of Laurent polynomials in `q` and `q^{h_{α_k}}`.
pub type QScalar = scalars::QFraction<Rat>;

/// Build a [`Rat`] from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Build a [`Rat`] from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
