//! Classical Mickelsson generators for a Levi-type pair `g ⊂ a = sl(n)`.
//!
//! For a quasi-root class the complement root vectors `ψ_i` (side `+`:
//! `e_β`, side `−`: `e_{−β}`) span a `g`-module. Node `i` carries the weight
//! `ν_i = ∓β`, the raising matrices are read off from
//! `[e_α, ψ_i] = −Σ_j π^α_{ij} ψ_j`, and the F-matrix is
//! `φ_{ij} = π^α_{ij} f_α` with `α = ν_i − ν_j ∈ R⁺_g`.
//!
//! The canonical element is `z_i = Σ_{routes (i, m⃗)} φ_{(i,m⃗)} ψ_{min} Π_j 1/(η_i − η_{m_j})`,
//! computed modulo `J₊`.

mod levi;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

pub use levi::{levi_generator, termwise_agreement, LeviGenerator, LeviTerm};

use crate::envelope::{AlgebraElement, Envelope, PbwMonomial};
use crate::hasse::{GradedModule, HasseDiagram, NodeRecord, Route};
use crate::routes::{p_psi, LaxModel};
use crate::{rat, CartanScalar, Error, Rat, Result, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

/// The graded module of one quasi-root class on one side, realized in the
/// enveloping algebra.
#[derive(Debug)]
pub struct ComplementModel {
    env: Arc<Envelope>,
    class: usize,
    side: Side,
    /// Positive complement root `β` attached to each node.
    roots: Vec<Weight>,
    diagram: HasseDiagram,
    psi: Vec<AlgebraElement>,
    psi_monomials: Vec<PbwMonomial>,
    phi: Vec<Vec<AlgebraElement>>,
    /// `π^α_{ij}` for every `α ∈ R⁺_g`, keyed by the index of `α` in `g_positive`.
    pi: BTreeMap<usize, Vec<Vec<Rat>>>,
}

impl ComplementModel {
    pub fn build(env: Arc<Envelope>, class: usize, side: Side) -> Result<Self> {
        let lp = env.levi();
        let rs = &lp.ambient;
        let cls = lp.classes.get(class).ok_or(Error::IndexOutOfRange { index: class + 1, rank: lp.classes.len() })?;
        let sign = rat(side.sign());
        let mut roots = cls.roots.clone();
        // Highest weight ν first; ties by ε-coordinates.
        roots.sort_by(|a, b| {
            let (na, nb) = (a.scale(&-sign.clone()), b.scale(&-sign.clone()));
            rs.pairing(&nb, &rs.rho).cmp(&rs.pairing(&na, &rs.rho)).then_with(|| nb.cmp(&na))
        });
        let n = roots.len();
        let weights: Vec<Weight> = roots.iter().map(|b| b.scale(&-sign.clone())).collect();
        let psi_gens = roots.iter().map(|b| env.root_vector(&b.scale(&sign))).collect::<Result<Vec<_>>>()?;
        let psi: Vec<AlgebraElement> = psi_gens.iter().map(|&g| AlgebraElement::gen(g)).collect();
        let psi_monomials = psi_gens.iter().map(|&g| PbwMonomial::single(g)).collect();

        let table = env.table();
        let mut pi = BTreeMap::new();
        for (a, alpha) in lp.g_positive.iter().enumerate() {
            let mut m = vec![vec![rat(0); n]; n];
            for i in 0..n {
                let target = &weights[i] - alpha;
                if let Some(j) = weights.iter().position(|w| *w == target) {
                    // [e_α, ψ_i] = c ψ_j
                    let c = table.root_constant(alpha, &roots[i].scale(&sign));
                    m[i][j] = -c;
                }
            }
            pi.insert(a, m);
        }

        let nodes = (0..n)
            .map(|i| NodeRecord { label: env.symbol(psi_gens[i]).label.clone(), weight: weights[i].clone() })
            .collect();
        let mut actions = BTreeMap::new();
        for &k in &lp.levi_subset {
            let a = lp.g_positive.iter().position(|r| *r == rs.simple_roots[k]).expect("simple root of g");
            actions.insert(k, pi[&a].clone());
        }
        let diagram = HasseDiagram::build(GradedModule::new(nodes, actions)?)?;

        let mut phi = vec![vec![AlgebraElement::zero(); n]; n];
        for (i, row) in phi.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let diff = &weights[i] - &weights[j];
                if let Some(a) = lp.g_positive.iter().position(|r| *r == diff) {
                    let c = pi[&a][i][j].clone();
                    if c != rat(0) {
                        let f = env.root_vector(&-&diff)?;
                        *cell = AlgebraElement::term(PbwMonomial::single(f), CartanScalar::constant(c));
                    }
                }
            }
        }
        Ok(ComplementModel { env, class, side, roots, diagram, psi, psi_monomials, phi, pi })
    }

    /// Models for every class on the requested sides.
    pub fn build_all(env: Arc<Envelope>, sides: &[Side]) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for class in 0..env.levi().classes.len() {
            for &side in sides {
                out.push(Self::build(env.clone(), class, side)?);
            }
        }
        Ok(out)
    }

    pub fn env(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Positive complement root of node `i`.
    pub fn root(&self, i: usize) -> &Weight {
        &self.roots[i]
    }

    /// Node carrying the complement root `β`.
    pub fn node_of(&self, beta: &Weight) -> Option<usize> {
        self.roots.iter().position(|r| r == beta)
    }

    pub fn psi_monomial(&self, i: usize) -> &PbwMonomial {
        &self.psi_monomials[i]
    }

    /// `π^α_{ij}` for `α ∈ R⁺_g`.
    pub fn pi(&self, alpha: &Weight, i: usize, j: usize) -> Option<&Rat> {
        let a = self.env.levi().g_positive.iter().position(|r| r == alpha)?;
        Some(&self.pi[&a][i][j])
    }

    /// Longest route length in the diagram.
    pub fn depth(&self) -> usize {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).filter_map(move |j| self.diagram.path_length(i, j))).max().unwrap_or(0)
    }

    /// `z_i` with its route expansion.
    pub fn canonical_element(&self, i: usize) -> Result<MickelssonGenerator> {
        if i >= self.len() {
            return Err(Error::UnknownNode(i));
        }
        let calc = self.calculus();
        let mut terms = Vec::new();
        let mut element = AlgebraElement::zero();
        for route in self.diagram.enumerate_routes(i)? {
            let body = p_psi(self, &route);
            if body.is_zero() {
                continue;
            }
            let coefficient: CartanScalar = calc.route_factor(&route)?;
            element.add_assign(&body.mul_scalar_right(&coefficient));
            terms.push(GeneratorTerm { route, coefficient, body });
        }
        let element = self.env.reduce_mod_jplus(&element);
        Ok(MickelssonGenerator {
            node: i,
            label: self.diagram.node(i).label.clone(),
            weight: -self.diagram.weight(i),
            psi: self.psi_monomials[i].clone(),
            terms,
            element,
        })
    }

    /// Every `z_i`, computed in parallel.
    pub fn canonical_elements(&self) -> Result<Vec<MickelssonGenerator>> {
        (0..self.len()).into_par_iter().map(|i| self.canonical_element(i)).collect()
    }

    /// `e_α z ∈ J₊` for every simple root `α` of `g`.
    pub fn verify_invariance(&self, z: &MickelssonGenerator) -> Result<Invariance> {
        verify_invariance(&self.env, &z.element)
    }
}

impl LaxModel for ComplementModel {
    fn envelope(&self) -> &Envelope {
        &self.env
    }
    fn diagram(&self) -> &HasseDiagram {
        &self.diagram
    }
    fn phi(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.phi[i][j]
    }
    fn psi(&self, i: usize) -> &AlgebraElement {
        &self.psi[i]
    }
}

/// One route summand `φ_{m⃗} ψ_{min} · coefficient`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTerm {
    pub route: Route,
    pub coefficient: CartanScalar,
    /// `p_Ψ(m⃗)`, before the coefficient is applied.
    pub body: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MickelssonGenerator {
    pub node: usize,
    pub label: String,
    /// Weight with respect to the ambient Cartan subalgebra, `−ν_i`.
    pub weight: Weight,
    /// `ψ_i` as a monomial.
    pub psi: PbwMonomial,
    pub terms: Vec<GeneratorTerm>,
    /// Normal-ordered representative modulo `J₊`.
    pub element: AlgebraElement,
}

impl MickelssonGenerator {
    /// Longest route used in the expansion.
    pub fn depth(&self) -> usize {
        self.terms.iter().map(|t| t.route.length()).max().unwrap_or(0)
    }

    /// Rebuild the element after changing route coefficients.
    pub fn reassemble(&mut self, env: &Envelope) {
        let mut element = AlgebraElement::zero();
        for t in &self.terms {
            element.add_assign(&t.body.mul_scalar_right(&t.coefficient));
        }
        self.element = env.reduce_mod_jplus(&element);
    }
}

/// Outcome of the invariance test, with the first surviving term as witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Invariance {
    Holds,
    Fails { root: usize, monomial: PbwMonomial, coefficient: CartanScalar },
}

impl Invariance {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Holds)
    }
}

/// Check `e_α a ≡ 0 (mod J₊)` for every simple root `α` of `g`.
pub fn verify_invariance(env: &Envelope, a: &AlgebraElement) -> Result<Invariance> {
    for &k in &env.levi().levi_subset {
        let image = env.reduce_mod_jplus(&env.act_raising(k, a)?);
        let witness = image.terms().next().map(|(m, c)| (m.clone(), c.clone()));
        if let Some((monomial, coefficient)) = witness {
            return Ok(Invariance::Fails { root: k, monomial, coefficient });
        }
    }
    Ok(Invariance::Holds)
}

/// Each leading term is `ψ_i` with coefficient 1 and the leading monomials
/// are pairwise distinct.
pub fn pbw_leading_check(env: &Envelope, zs: &[MickelssonGenerator]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for z in zs {
        match env.leading_term(&z.element) {
            Ok((m, c)) if m == z.psi && c.is_one() => {
                if !seen.insert(m) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}
