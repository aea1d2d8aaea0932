//! Exact coefficient fields.
//!
//! [`CartanFraction`] is the classical field `C(h)` localized at affine
//! forms; [`QFraction`] is the q-symbolic field in `q` and `q^{h_{α_k}}`.
//! Both implement [`ModeScalar`], the interface used by the route calculus.

mod cartan_scalar;
mod mode;
mod poly;
mod qscalar;

pub use cartan_scalar::CartanFraction;
pub use mode::{b_factor, ModeScalar, ScalarMode};
pub use poly::{Exponents, Poly};
pub use qscalar::QFraction;

/// `[η]_q` as a q-symbolic scalar.
pub fn q_bracket<T: crate::Coefficient>(eta: &crate::cartan::AffineForm<T>) -> crate::Result<QFraction<T>> {
    QFraction::bracket(eta)
}
