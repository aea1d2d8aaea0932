use crate::envelope::{AlgebraElement, Envelope};
use crate::generators::{ComplementModel, MickelssonGenerator, Side};
use crate::hasse::Route;
use crate::{rat, CartanScalar, Error, Result, Weight};

/// One partition summand of the closed formula.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviTerm {
    /// `μ = μ_0, μ_1, …, μ_k` inside the class.
    pub chain: Vec<Weight>,
    /// `α_1, …, α_k` with `μ_j = μ_{j−1} ± α_j`.
    pub steps: Vec<Weight>,
    pub coefficient: CartanScalar,
    /// `f_{α_1} ⋯ f_{α_k} e_{±μ_k}`, normal-ordered.
    pub body: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeviGenerator {
    pub mu: Weight,
    pub side: Side,
    pub terms: Vec<LeviTerm>,
    pub element: AlgebraElement,
}

/// `z^±_μ = e_{±μ} + Σ_k Σ f_{α_1}⋯f_{α_k} e_{±μ_k} Π_j N^±_{α_j,μ_j}/(η_{∓μ} − η_{∓μ_j})`.
///
/// The sum runs over ordered sequences of positive roots of `g` with
/// `μ_j = μ ± (α_1 + … + α_j)` in the class of `μ`. The constants come from
/// the commutator table: `[e_α, e_{−μ_j}] = N^+ e_{−μ_j+α}` on the plus side
/// and `[e_α, e_{μ_j}] = N^− e_{μ_j+α}` on the minus side.
pub fn levi_generator(env: &Envelope, mu: &Weight, side: Side) -> Result<LeviGenerator> {
    let lp = env.levi();
    let rs = &lp.ambient;
    let class = lp.class_of(mu).ok_or_else(|| Error::NotComplementRoot(mu.to_string()))?;
    let members = &lp.classes[class].roots;
    let sign = rat(side.sign());
    let eta_top = rs.eta_form(&mu.scale(&-sign.clone()));

    let mut terms = Vec::new();
    let mut stack: Vec<(Vec<Weight>, Vec<Weight>)> = vec![(vec![mu.clone()], Vec::new())];
    while let Some((chain, steps)) = stack.pop() {
        let last = chain.last().unwrap();
        for alpha in lp.g_positive.iter().rev() {
            let next = last + &alpha.scale(&sign);
            if members.contains(&next) {
                let mut c = chain.clone();
                c.push(next);
                let mut s = steps.clone();
                s.push(alpha.clone());
                stack.push((c, s));
            }
        }
        let mut coefficient = CartanScalar::one();
        for (mu_j, alpha) in chain[1..].iter().zip(&steps) {
            let n = env.table().root_constant(alpha, &mu_j.scale(&-sign.clone()));
            let den = &eta_top - &rs.eta_form(&mu_j.scale(&-sign.clone()));
            coefficient = &(&coefficient * &CartanScalar::constant(n)) * &CartanScalar::inv_affine(&den)?;
        }
        let mut body = AlgebraElement::gen(env.root_vector(&last.scale(&sign))?);
        for alpha in steps.iter().rev() {
            body = env.left_mul_gen(env.root_vector(&-alpha)?, &body);
        }
        terms.push(LeviTerm { chain, steps, coefficient, body });
    }
    terms.sort_by(|a, b| a.chain.len().cmp(&b.chain.len()).then_with(|| a.chain.cmp(&b.chain)));
    let mut element = AlgebraElement::zero();
    for t in &terms {
        element.add_assign(&t.body.mul_scalar_right(&t.coefficient));
    }
    let element = env.reduce_mod_jplus(&element);
    Ok(LeviGenerator { mu: mu.clone(), side, terms, element })
}

impl LeviGenerator {
    /// Express as a [`MickelssonGenerator`] on the nodes of `model`.
    pub fn on_model(&self, model: &ComplementModel) -> Result<MickelssonGenerator> {
        let node_of = |w: &Weight| model.node_of(w).ok_or_else(|| Error::NotComplementRoot(w.to_string()));
        let top = node_of(&self.mu)?;
        let mut terms = Vec::new();
        for t in &self.terms {
            let nodes = t.chain.iter().map(node_of).collect::<Result<Vec<_>>>()?;
            let route = crate::routes::LaxModel::diagram(model).route(nodes)?;
            terms.push(super::GeneratorTerm { route, coefficient: t.coefficient.clone(), body: t.body.clone() });
        }
        let d = crate::routes::LaxModel::diagram(model);
        Ok(MickelssonGenerator {
            node: top,
            label: d.node(top).label.clone(),
            weight: -d.weight(top),
            psi: model.psi_monomial(top).clone(),
            terms,
            element: self.element.clone(),
        })
    }
}

/// The route expansion of `z_i` and the closed formula for the same root
/// agree summand by summand: every route with a nonzero summand matches the
/// partition through the same roots, with equal product modulo `J₊`.
pub fn termwise_agreement(model: &ComplementModel, z: &MickelssonGenerator, levi: &LeviGenerator) -> Result<bool> {
    let env = model.env();
    let from_levi = levi.on_model(model)?;
    let key = |r: &Route| r.nodes().to_vec();
    let mut a: Vec<_> = z
        .terms
        .iter()
        .map(|t| (key(&t.route), env.reduce_mod_jplus(&t.body.mul_scalar_right(&t.coefficient))))
        .filter(|(_, e)| !e.is_zero())
        .collect();
    let mut b: Vec<_> = from_levi
        .terms
        .iter()
        .map(|t| (key(&t.route), env.reduce_mod_jplus(&t.body.mul_scalar_right(&t.coefficient))))
        .filter(|(_, e)| !e.is_zero())
        .collect();
    a.sort_by(|x, y| x.0.cmp(&y.0));
    b.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(a == b && z.element == levi.element)
}
