//! Serializable result documents and their conversion back into algebra
//! elements.

use std::str::FromStr;

use mickelsson::envelope::{AlgebraElement, Envelope, PbwMonomial};
use mickelsson::generators::{ComplementModel, MickelssonGenerator};
use mickelsson::hasse::HasseDiagram;
use mickelsson::routes::LaxModel;
use mickelsson::{rat, AffineForm, CartanScalar, Poly, Rat, Weight};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub series: String,
    pub rank: usize,
}

/// `Σ_k h[k]·h_{α_{k+1}} + c`, rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineDoc {
    pub h: Vec<String>,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermDoc {
    pub coeff: String,
    /// Exponent of each `h_{α_k}`.
    pub exp: Vec<i32>,
}

/// Numerator polynomial over a product of affine factors, repeated by
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarDoc {
    pub num_poly: Vec<PolyTermDoc>,
    pub den_factors: Vec<AffineDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub label: String,
    pub weight: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub from: String,
    pub to: String,
    /// 1-based simple root.
    pub root: usize,
    pub entry: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    /// 1-based.
    pub class: usize,
    pub roots: Vec<Vec<String>>,
    pub side: String,
    pub nodes: Vec<NodeDoc>,
    pub arrows: Vec<ArrowDoc>,
}

/// Generator labels with powers.
pub type MonomialDoc = Vec<(String, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub route: Vec<String>,
    /// Product of Cartan factors along the route.
    pub coefficient: ScalarDoc,
    /// Product of the F-matrix constants along the route.
    pub factor: String,
    /// `f_{α_1} ⋯ f_{α_k} ψ_min` as written, not normal-ordered.
    pub monomial: MonomialDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTermDoc {
    pub monomial: MonomialDoc,
    pub coefficient: ScalarDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub class: usize,
    pub side: String,
    pub node: String,
    pub weight: Vec<String>,
    pub terms: Vec<TermDoc>,
    /// Normal-ordered representative modulo `J₊`.
    pub element: Vec<ElementTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub invariance: bool,
    pub oracle: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsDoc {
    pub algebra: AlgebraDoc,
    pub levi: Vec<usize>,
    pub classes: Vec<ClassDoc>,
    pub generators: Vec<GeneratorDoc>,
    pub verification: VerificationDoc,
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s).map_err(|_| CliError::Usage(format!("not a rational number: `{s}`")))
}

pub fn weight_doc(w: &Weight) -> Vec<String> {
    w.coords.iter().map(rat_str).collect()
}

/// Coefficient vectors are padded to `rank` entries.
pub fn affine_doc(f: &AffineForm, rank: usize) -> AffineDoc {
    let mut h: Vec<String> = f.linear.iter().map(rat_str).collect();
    h.resize(rank.max(h.len()), "0".into());
    AffineDoc { h, c: rat_str(&f.constant) }
}

pub fn affine_from_doc(d: &AffineDoc) -> Result<AffineForm, CliError> {
    Ok(AffineForm { linear: d.h.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?, constant: parse_rat(&d.c)? })
}

pub fn scalar_doc(s: &CartanScalar, rank: usize) -> ScalarDoc {
    let num_poly = s
        .numerator()
        .terms()
        .map(|(e, c)| {
            let mut exp = e.clone();
            exp.resize(rank.max(exp.len()), 0);
            PolyTermDoc { coeff: rat_str(c), exp }
        })
        .collect();
    let den_factors = s
        .denominator()
        .flat_map(|(f, e)| std::iter::repeat_n(affine_doc(f, rank), e as usize))
        .collect();
    ScalarDoc { num_poly, den_factors }
}

pub fn scalar_from_doc(d: &ScalarDoc) -> Result<CartanScalar, CliError> {
    let mut num = Poly::zero();
    for t in &d.num_poly {
        num = &num + &Poly::monomial(t.exp.clone(), parse_rat(&t.coeff)?);
    }
    let factors = d.den_factors.iter().map(|f| Ok((affine_from_doc(f)?, 1))).collect::<Result<Vec<_>, CliError>>()?;
    Ok(CartanScalar::from_parts(num, &factors)?)
}

pub fn monomial_doc(env: &Envelope, m: &PbwMonomial) -> MonomialDoc {
    m.factors().iter().map(|&(g, p)| (env.symbol(g).label.clone(), p)).collect()
}

/// Product of the listed generators in the given order (not necessarily
/// normal).
pub fn word_from_doc(env: &Envelope, d: &MonomialDoc) -> Result<AlgebraElement, CliError> {
    let mut out = AlgebraElement::one();
    for (label, p) in d.iter().rev() {
        let g = env.by_label(label).ok_or_else(|| CliError::Usage(format!("unknown generator `{label}`")))?;
        for _ in 0..*p {
            out = env.left_mul_gen(g, &out);
        }
    }
    Ok(out)
}

pub fn element_doc(env: &Envelope, a: &AlgebraElement) -> Vec<ElementTermDoc> {
    a.terms().map(|(m, c)| ElementTermDoc { monomial: monomial_doc(env, m), coefficient: scalar_doc(c, env.rank()) }).collect()
}

pub fn element_from_doc(env: &Envelope, terms: &[ElementTermDoc]) -> Result<AlgebraElement, CliError> {
    let mut out = AlgebraElement::zero();
    for t in terms {
        out.add_assign(&word_from_doc(env, &t.monomial)?.mul_scalar_right(&scalar_from_doc(&t.coefficient)?));
    }
    Ok(out)
}

fn labels(d: &HasseDiagram, nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&i| d.node(i).label.clone()).collect()
}

pub fn class_doc(model: &ComplementModel) -> ClassDoc {
    let d = model.diagram();
    ClassDoc {
        class: model.class() + 1,
        roots: (0..model.len()).map(|i| weight_doc(model.root(i))).collect(),
        side: model.side().to_string(),
        nodes: (0..d.len()).map(|i| NodeDoc { label: d.node(i).label.clone(), weight: weight_doc(d.weight(i)) }).collect(),
        arrows: d
            .arrows()
            .iter()
            .map(|a| ArrowDoc { from: d.node(a.from).label.clone(), to: d.node(a.to).label.clone(), root: a.root + 1, entry: rat_str(&a.entry) })
            .collect(),
    }
}

pub fn generator_doc(model: &ComplementModel, z: &MickelssonGenerator) -> Result<GeneratorDoc, CliError> {
    let env = model.env();
    let d = model.diagram();
    let mut terms = Vec::new();
    for t in &z.terms {
        let nodes = t.route.nodes();
        let mut factor = rat(1);
        let mut monomial = MonomialDoc::new();
        for w in nodes.windows(2) {
            let alpha = d.weight(w[0]) - d.weight(w[1]);
            factor *= model.pi(&alpha, w[0], w[1]).cloned().unwrap_or_default();
            monomial.push((env.symbol(env.root_vector(&-&alpha)?).label.clone(), 1));
        }
        monomial.extend(monomial_doc(env, model.psi_monomial(t.route.min_node())));
        terms.push(TermDoc { route: labels(d, nodes), coefficient: scalar_doc(&t.coefficient, env.rank()), factor: rat_str(&factor), monomial });
    }
    Ok(GeneratorDoc {
        class: model.class() + 1,
        side: model.side().to_string(),
        node: z.label.clone(),
        weight: weight_doc(&z.weight),
        terms,
        element: element_doc(env, &z.element),
    })
}

/// Rebuild `z` from its route terms: `Σ factor · word · coefficient` modulo `J₊`.
pub fn element_from_terms(env: &Envelope, g: &GeneratorDoc) -> Result<AlgebraElement, CliError> {
    let mut out = AlgebraElement::zero();
    for t in &g.terms {
        let s = &CartanScalar::constant(parse_rat(&t.factor)?) * &scalar_from_doc(&t.coefficient)?;
        out.add_assign(&word_from_doc(env, &t.monomial)?.mul_scalar_right(&s));
    }
    Ok(env.reduce_mod_jplus(&out))
}
