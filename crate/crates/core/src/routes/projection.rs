use crate::envelope::{AlgebraElement, Envelope};
use crate::hasse::{HasseDiagram, Route};
use crate::routes::{RouteCalculus, TensorVector};
use crate::{CartanScalar, Result};

/// A concrete realization of a graded module inside the enveloping algebra:
/// F-matrix entries `φ_{ij}` and canonical components `ψ_i`.
pub trait LaxModel {
    fn envelope(&self) -> &Envelope;
    fn diagram(&self) -> &HasseDiagram;
    fn phi(&self, i: usize, j: usize) -> &AlgebraElement;
    fn psi(&self, i: usize) -> &AlgebraElement;

    fn calculus(&self) -> RouteCalculus<'_> {
        RouteCalculus::new(self.diagram(), &self.envelope().levi().ambient)
    }
}

/// `φ_{m_1 m_2} ⋯ φ_{m_{k−1} m_k}`; `1` on a length-0 route.
pub fn p_phi<M: LaxModel + ?Sized>(model: &M, m: &Route) -> AlgebraElement {
    let env = model.envelope();
    m.nodes().windows(2).fold(AlgebraElement::one(), |acc, w| env.multiply(&acc, model.phi(w[0], w[1])))
}

/// `φ_{m⃗} ψ_{min m⃗}` modulo `J₊`.
pub fn p_psi<M: LaxModel + ?Sized>(model: &M, m: &Route) -> AlgebraElement {
    let env = model.envelope();
    env.reduce_mod_jplus(&env.multiply(&p_phi(model, m), model.psi(m.min_node())))
}

/// `Σ p_Φ(x⃗) p_Ψ(y⃗) s` modulo `J₊`.
pub fn p_phi_psi<M: LaxModel + ?Sized>(model: &M, t: &TensorVector<CartanScalar>) -> AlgebraElement {
    let env = model.envelope();
    let mut out = AlgebraElement::zero();
    for ((x, y), s) in t.terms() {
        let prod = env.multiply(&p_phi(model, x), &p_psi(model, y));
        out.add_assign(&prod.mul_scalar_right(s));
    }
    env.reduce_mod_jplus(&out)
}

/// Both sides of `p_{ΦΨ}(Σ_{(l,r)∈P(α)} π^α_{lr} ∇_{l,r} m⃗) = e_α ▷ p_Ψ(m⃗)`
/// for the simple root `α_k` of `g`.
pub fn intertwine_sides<M: LaxModel + ?Sized>(model: &M, k: usize, m: &Route) -> Result<(AlgebraElement, AlgebraElement)> {
    let env = model.envelope();
    let calc = model.calculus();
    let mut lhs_tensor = TensorVector::<CartanScalar>::zero();
    for pair in model.diagram().simple_pairs(k) {
        let entry = model.diagram().arrow(pair.0, pair.1).expect("simple pair is an arrow").entry.clone();
        let v = calc.nabla(pair, &crate::routes::PsiVector::route(m.clone()))?;
        lhs_tensor.add_assign(&v.scale_right(&CartanScalar::constant(entry)));
    }
    let lhs = p_phi_psi(model, &lhs_tensor);
    let rhs = env.reduce_mod_jplus(&env.act_raising(k, &p_psi(model, m))?);
    Ok((lhs, rhs))
}
