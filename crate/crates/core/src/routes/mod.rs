//! Local operators on the free modules `Φ_X`, `Ψ_X` spanned by routes.
//!
//! Coefficients always sit on the right. A route in `Φ_X` has weight
//! `ν_min − ν_max`, a route in `Ψ_X` has weight `−ν_max`; a scalar crossing a
//! route `m⃗` from the left becomes `τ_{wt m⃗}` of itself. Every computation
//! is generic over [`ModeScalar`], so the classical and q-symbolic cases run
//! through the same code.

mod chains;
mod projection;

use std::collections::BTreeMap;

pub use chains::{three_chain_combination, two_chain_combination, Chain, ChainKind};
pub use projection::{intertwine_sides, p_phi, p_phi_psi, p_psi, LaxModel};

use crate::AffineForm;
use crate::hasse::{HasseDiagram, Route};
use crate::scalars::ModeScalar;
use crate::{Error, Rat, Result, RootSystem, Weight};

/// Formal sum of routes with right coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteSum<S> {
    terms: BTreeMap<Route, S>,
}

/// Element of `Φ_X`.
pub type PhiVector<S> = RouteSum<S>;
/// Element of `Ψ_X`.
pub type PsiVector<S> = RouteSum<S>;

impl<S: ModeScalar> RouteSum<S> {
    pub fn zero() -> Self {
        RouteSum { terms: BTreeMap::new() }
    }

    pub fn route(r: Route) -> Self {
        Self::term(r, S::one())
    }

    pub fn term(r: Route, s: S) -> Self {
        let mut out = Self::zero();
        out.add_term(r, s);
        out
    }

    pub fn add_term(&mut self, r: Route, s: S) {
        if s.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&r) {
            Some(c) => c.add(&s),
            None => s,
        };
        if !sum.is_zero() {
            self.terms.insert(r, sum);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (r, s) in &other.terms {
            self.add_term(r.clone(), s.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Route, &S)> {
        self.terms.iter()
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

    pub fn coefficient(&self, r: &Route) -> S {
        self.terms.get(r).cloned().unwrap_or_else(S::zero)
    }
}

/// Element of `Φ_X ⊗ Φ_X` or `Φ_X ⊗ Ψ_X`, scalar on the far right.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector<S> {
    terms: BTreeMap<(Route, Route), S>,
}

impl<S: ModeScalar> TensorVector<S> {
    pub fn zero() -> Self {
        TensorVector { terms: BTreeMap::new() }
    }

    pub fn term(a: Route, b: Route, s: S) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, s);
        out
    }

    pub fn add_term(&mut self, a: Route, b: Route, s: S) {
        if s.is_zero() {
            return;
        }
        let key = (a, b);
        let sum = match self.terms.remove(&key) {
            Some(c) => c.add(&s),
            None => s,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for ((a, b), s) in &other.terms {
            self.add_term(a.clone(), b.clone(), s.clone());
        }
    }

    pub fn scale_right(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.mul(s));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Route, Route), &S)> {
        self.terms.iter()
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
}

/// Which module the right tensor factor belongs to; fixes its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Phi,
    Psi,
}

/// Route calculus on one Hasse diagram.
#[derive(Debug, Clone)]
pub struct RouteCalculus<'a> {
    diagram: &'a HasseDiagram,
    rs: &'a RootSystem,
    eta: Vec<AffineForm>,
}

impl<'a> RouteCalculus<'a> {
    pub fn new(diagram: &'a HasseDiagram, rs: &'a RootSystem) -> Self {
        let eta = (0..diagram.len()).map(|i| rs.eta_form(diagram.weight(i))).collect();
        RouteCalculus { diagram, rs, eta }
    }

    pub fn diagram(&self) -> &HasseDiagram {
        self.diagram
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// `η_i = η_{ν_i}`.
    pub fn eta(&self, i: usize) -> &AffineForm {
        &self.eta[i]
    }

    fn pairings(&self, w: &Weight) -> Vec<Rat> {
        self.rs.shift_pairings(w)
    }

    fn weight(&self, r: &Route, side: Side) -> Weight {
        match side {
            Side::Phi => r.phi_weight(self.diagram),
            Side::Psi => r.psi_weight(self.diagram),
        }
    }

    fn concat(&self, a: &Route, b: &Route) -> Route {
        self.diagram.concat(a, b).expect("factors produced by the calculus are adjacent")
    }

    /// Simple-root index labelling the arrow `l ← r`.
    pub fn pair_root(&self, (l, r): (usize, usize)) -> Result<usize> {
        self.diagram
            .arrow(l, r)
            .map(|a| a.root)
            .ok_or_else(|| Error::RoutePrecondition(format!("({l},{r}) is not a simple pair")))
    }

    fn h_alpha(&self, k: usize) -> AffineForm {
        AffineForm::var(self.rs.rank, k)
    }

    /// `T·((l) ⊗ n⃗)`.
    fn times_left_unit<S: ModeScalar<Coeff = Rat>>(&self, t: &TensorVector<S>, n: &Route, side: Side) -> TensorVector<S> {
        let shift = self.pairings(&self.weight(n, side));
        let mut out = TensorVector::zero();
        for ((x, y), s) in t.terms() {
            out.add_term(x.clone(), self.concat(y, n), s.shift(&shift));
        }
        out
    }

    /// `(m⃗ ⊗ (r))·T`.
    fn unit_right_times<S: ModeScalar<Coeff = Rat>>(&self, m: &Route, t: &TensorVector<S>) -> TensorVector<S> {
        let mut out = TensorVector::zero();
        for ((x, y), s) in t.terms() {
            out.add_term(self.concat(m, x), y.clone(), s.clone());
        }
        out
    }

    fn partial_step<S: ModeScalar<Coeff = Rat>>(&self, (l, r): (usize, usize), k: usize, i: usize, j: usize) -> Result<TensorVector<S>> {
        let d = self.diagram;
        let h = self.h_alpha(k);
        if (i, j) == (l, r) {
            return Ok(TensorVector::term(Route::point(l), Route::point(r), S::bracket(&h)?));
        }
        if i == l && d.succ(r, j) {
            // −(l) ⊗ q^{−h_α}(r,j)
            let rj = d.route(vec![r, j])?;
            let s = S::exp(&-&h)?.shift(&self.pairings(&rj.phi_weight(d))).neg();
            return Ok(TensorVector::term(Route::point(l), rj, s));
        }
        if j == r && d.succ(i, l) {
            // (i,l)q^{h_α} ⊗ (r)
            return Ok(TensorVector::term(d.route(vec![i, l])?, Route::point(r), S::exp(&h)?));
        }
        Ok(TensorVector::zero())
    }

    fn partial_route<S: ModeScalar<Coeff = Rat>>(&self, pair: (usize, usize), k: usize, m: &Route) -> Result<TensorVector<S>> {
        match m.length() {
            0 => Ok(TensorVector::zero()),
            1 => self.partial_step(pair, k, m.max_node(), m.min_node()),
            n => {
                let head = m.slice(0, 1);
                let rest = m.slice(1, n);
                let mut out = self.times_left_unit(&self.partial_step(pair, k, head.max_node(), head.min_node())?, &rest, Side::Phi);
                out.add_assign(&self.unit_right_times(&head, &self.partial_route(pair, k, &rest)?));
                Ok(out)
            }
        }
    }

    /// `∂_{l,r}` on `Φ_X`.
    pub fn partial<S: ModeScalar<Coeff = Rat>>(&self, pair: (usize, usize), v: &PhiVector<S>) -> Result<TensorVector<S>> {
        let k = self.pair_root(pair)?;
        let mut out = TensorVector::zero();
        for (m, s) in v.terms() {
            out.add_assign(&self.partial_route(pair, k, m)?.scale_right(s));
        }
        Ok(out)
    }

    fn nabla_route<S: ModeScalar<Coeff = Rat>>(&self, (l, r): (usize, usize), k: usize, m: &Route) -> Result<TensorVector<S>> {
        let j = m.min_node();
        let mut out = if m.length() == 0 {
            TensorVector::zero()
        } else {
            self.times_left_unit(&self.partial_route((l, r), k, m)?, &Route::point(j), Side::Psi)
        };
        if j == l {
            // (m⃗ ⊗ (r))·∇(l), ∇(l) = −(l) ⊗ (r) q^{−(η_l − η_r)}
            let s = S::exp(&-&(self.eta(l) - self.eta(r)))?.neg();
            out.add_term(m.clone(), Route::point(r), s);
        }
        Ok(out)
    }

    /// `∇_{l,r}` on `Ψ_X`.
    pub fn nabla<S: ModeScalar<Coeff = Rat>>(&self, pair: (usize, usize), v: &PsiVector<S>) -> Result<TensorVector<S>> {
        let k = self.pair_root(pair)?;
        let mut out = TensorVector::zero();
        for (m, s) in v.terms() {
            out.add_assign(&self.nabla_route(pair, k, m)?.scale_right(s));
        }
        Ok(out)
    }

    /// `B^i_j` for nodes `i ≻ j`.
    pub fn b_factor<S: ModeScalar<Coeff = Rat>>(&self, i: usize, j: usize) -> Result<S> {
        S::b_factor(&(self.eta(i) - self.eta(j)))
    }

    /// Product of `B^i_{m_j}` over the nodes below `i = max(m⃗)`.
    pub fn route_factor<S: ModeScalar<Coeff = Rat>>(&self, m: &Route) -> Result<S> {
        let i = m.max_node();
        m.tail().iter().try_fold(S::one(), |acc, &j| Ok(acc.mul(&self.b_factor(i, j)?)))
    }

    /// `m⃗ B^i_{m⃗}` as an element of `Ψ_X`.
    pub fn tilde<S: ModeScalar<Coeff = Rat>>(&self, m: &Route) -> Result<PsiVector<S>> {
        Ok(PsiVector::term(m.clone(), self.route_factor(m)?))
    }

    /// Right-hand sides of the three explicit cases for `∇_{l,r}` on a route
    /// through the pair, written with the Cartan factor pushed right.
    pub fn nabla_closed_form<S: ModeScalar<Coeff = Rat>>(&self, (l, r): (usize, usize), m: &Route) -> Result<TensorVector<S>> {
        let d = self.diagram;
        let d_lr = self.eta(l) - self.eta(r);
        let (pl, pr) = (m.position(l), m.position(r));
        let end = m.nodes().len() - 1;
        let out = match (pl, pr) {
            (Some(a), Some(b)) if b == a + 1 => {
                TensorVector::term(m.slice(0, a), m.slice(b, end), S::bracket(&d_lr)?)
            }
            (Some(a), None) => {
                let mut rho = vec![r];
                rho.extend_from_slice(&m.nodes()[a + 1..]);
                TensorVector::term(m.slice(0, a), d.route(rho)?, S::exp(&-&d_lr)?.neg())
            }
            (None, Some(b)) if b > 0 => {
                let mut ell = m.nodes()[..b].to_vec();
                ell.push(l);
                TensorVector::term(d.route(ell)?, m.slice(b, end), S::exp(&d_lr)?)
            }
            _ => TensorVector::zero(),
        };
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
