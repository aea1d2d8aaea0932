//! Extremal projector of `g` (rank ≤ 2) as an independent oracle.
//!
//! For each positive root `β` of `g` the factor `℘_β = Σ_k f_β^k e_β^k c_k`
//! is solved degree by degree from `e_β ℘_β = 0` in the localized
//! enveloping algebra; the full projector is the product of the factors over
//! a normal ordering of `R⁺_g`. Inside the product the factor of `β` is the
//! sl(2) solution evaluated at `h_β + (ρ, β) − 1`, which differs from the
//! bare solution only for non-simple `β`. Applied to an element of `A/J₊` the series
//! terminate, since `e_β^k x ∈ J₊` for large `k`.

use crate::envelope::{AlgebraElement, Envelope, Gen, PbwMonomial};
use crate::generators::{ComplementModel, MickelssonGenerator};
use crate::{rat, CartanScalar, Error, Result, Weight};

/// Degree cap for the adaptive truncation.
pub const MAX_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorFactor {
    pub beta: Weight,
    e: Gen,
    f: Gen,
    /// `c_0 = 1, c_1, …, c_K` solving `e_β ℘_β = 0`.
    pub coefficients: Vec<CartanScalar>,
    /// `τ` data of the substitution `h_β ↦ h_β + (ρ, β) − 1`.
    rho_shift: Vec<crate::Rat>,
}

fn power_monomial(f: Gen, a: u32, e: Gen, b: u32) -> PbwMonomial {
    let mut v = Vec::new();
    if a > 0 {
        v.push((f, a));
    }
    if b > 0 {
        v.push((e, b));
    }
    PbwMonomial::from_factors(v).expect("f_β precedes e_β")
}

impl ProjectorFactor {
    fn new(env: &Envelope, beta: &Weight) -> Result<Self> {
        if !env.levi().is_g_root(beta) {
            return Err(Error::NotInSubalgebra(0));
        }
        let rs = &env.levi().ambient;
        // τ_{sβ/2} moves h_β by s(β, β)/2 = s.
        let s = rs.pairing(beta, &rs.rho) - rat(1);
        let rho_shift = rs.shift_pairings(&beta.scale(&(s / rat(2))));
        Ok(ProjectorFactor {
            rho_shift,
            beta: beta.clone(),
            e: env.root_vector(beta)?,
            f: env.root_vector(&-beta)?,
            coefficients: vec![CartanScalar::one()],
        })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `Σ_{k ≤ K} f^k e^k c_k`.
    pub fn truncated(&self) -> AlgebraElement {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| (power_monomial(self.f, k as u32, self.e, k as u32), c.clone()))
            .collect()
    }

    /// `℘_β² ≡ ℘_β` on every `f^d e^d` with `d ≤ K`, and `e_β ℘_β` has no
    /// component of degree `≤ 2K`.
    pub fn idempotent_through_degree(&self, env: &Envelope) -> bool {
        let k = self.degree() as u32;
        let p = self.truncated();
        let sq = env.multiply(&p, &p);
        let squares = (0..=k).all(|d| {
            let m = power_monomial(self.f, d, self.e, d);
            sq.coefficient(&m) == p.coefficient(&m)
        });
        squares && env.left_mul_gen(self.e, &p).terms().all(|(m, _)| m.degree() > 2 * k)
    }

    /// Solve for `c_{K+1}` from the `f^K e^{K+1}` component of `e·℘ = 0`.
    fn extend(&mut self, env: &Envelope) -> Result<()> {
        let k = self.degree() as u32;
        let target = power_monomial(self.f, k, self.e, k + 1);
        let have = env.left_mul_gen(self.e, &self.truncated()).coefficient(&target);
        let next = AlgebraElement::monomial(power_monomial(self.f, k + 1, self.e, k + 1));
        let unit = env.left_mul_gen(self.e, &next).coefficient(&target);
        let c = (-&have).checked_div(&unit)?;
        self.coefficients.push(c);
        Ok(())
    }

    fn ensure(&mut self, env: &Envelope, k: usize) -> Result<()> {
        if k > MAX_DEGREE {
            return Err(Error::TruncationExceeded(MAX_DEGREE));
        }
        while self.degree() < k {
            self.extend(env)?;
        }
        Ok(())
    }

    /// `℘_β x` modulo `J₊`, truncating where `e_β^k x ∈ J₊`.
    pub fn apply(&mut self, env: &Envelope, x: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        let mut ek = x.clone();
        let mut k = 0usize;
        while !ek.is_zero() {
            self.ensure(env, k)?;
            // f^k e^k c_k x = f^k · τ_{−kβ}(c_k) · e^k x
            let pairings = env.levi().ambient.shift_pairings(&self.beta.scale(&rat(-(k as i64))));
            let c = self.coefficients[k].shift(&self.rho_shift).shift(&pairings);
            let mut term = env.scalar_left(&c, &ek);
            for _ in 0..k {
                term = env.left_mul_gen(self.f, &term);
            }
            out.add_assign(&term);
            ek = env.reduce_mod_jplus(&env.left_mul_gen(self.e, &ek));
            k += 1;
        }
        Ok(env.reduce_mod_jplus(&out))
    }
}

/// Coefficients `c_0..c_K` of `℘_β`.
pub fn solve_factor(env: &Envelope, beta: &Weight, k: usize) -> Result<ProjectorFactor> {
    let mut f = ProjectorFactor::new(env, beta)?;
    f.ensure(env, k)?;
    Ok(f)
}

/// Normal ordering of `R⁺_g` for `g` of rank at most 2: `α, α+β, β` when the
/// simple roots are linked, otherwise any order.
pub fn normal_ordering(env: &Envelope) -> Result<Vec<Weight>> {
    let lp = env.levi();
    if lp.g_rank() > 2 {
        return Err(Error::UnsupportedOracleRank(lp.g_rank()));
    }
    let simple: Vec<Weight> = lp.levi_subset.iter().map(|&k| lp.ambient.simple_roots[k].clone()).collect();
    if simple.len() == 2 {
        let sum = &simple[0] + &simple[1];
        if lp.is_g_root(&sum) {
            return Ok(vec![simple[0].clone(), sum, simple[1].clone()]);
        }
    }
    Ok(simple)
}

/// The product `℘ = ℘_{β_1} ⋯ ℘_{β_m}`.
#[derive(Debug, Clone)]
pub struct Projector {
    factors: Vec<ProjectorFactor>,
}

impl Projector {
    pub fn new(env: &Envelope) -> Result<Self> {
        Self::with_order(env, &normal_ordering(env)?)
    }

    pub fn with_order(env: &Envelope, order: &[Weight]) -> Result<Self> {
        if env.levi().g_rank() > 2 {
            return Err(Error::UnsupportedOracleRank(env.levi().g_rank()));
        }
        let factors = order.iter().map(|b| ProjectorFactor::new(env, b)).collect::<Result<_>>()?;
        Ok(Projector { factors })
    }

    pub fn factors(&self) -> &[ProjectorFactor] {
        &self.factors
    }

    /// `℘ x` modulo `J₊`; the rightmost factor acts first.
    pub fn apply(&mut self, env: &Envelope, x: &AlgebraElement) -> Result<AlgebraElement> {
        let mut y = env.reduce_mod_jplus(x);
        for f in self.factors.iter_mut().rev() {
            y = f.apply(env, &y)?;
        }
        Ok(y)
    }
}

/// `℘ a` modulo `J₊`.
pub fn projector_apply(env: &Envelope, a: &AlgebraElement) -> Result<AlgebraElement> {
    Projector::new(env)?.apply(env, a)
}

/// `z_i = ℘ ψ_i` exactly in `A/J₊`.
pub fn oracle_compare(model: &ComplementModel, z: &MickelssonGenerator) -> Result<bool> {
    let env = model.env();
    let psi = AlgebraElement::monomial(z.psi.clone());
    Ok(projector_apply(env, &psi)? == z.element)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cartan::Series;
    use crate::generators::{verify_invariance, Side};
    use crate::{AffineForm, LeviPair, RootSystem};

    fn env(rank: usize, levi: &[usize]) -> Envelope {
        Envelope::new(LeviPair::new(RootSystem::build(Series::A, rank).unwrap(), levi).unwrap())
    }

    #[test]
    fn first_coefficients() {
        let e = env(2, &[0]);
        let alpha = Weight::from_ints(&[1, -1, 0]);
        let f = solve_factor(&e, &alpha, 2).unwrap();
        assert!(f.coefficients[0].is_one());
        let h2 = AffineForm::var(2, 0).add_constant(&rat(2));
        assert_eq!(f.coefficients[1], -&CartanScalar::inv_affine(&h2).unwrap());
    }

    #[test]
    fn factor_idempotent_through_truncation() {
        for (rank, levi) in [(2, vec![0]), (3, vec![0, 1])] {
            let e = env(rank, &levi);
            for beta in e.levi().g_positive.clone() {
                let f = solve_factor(&e, &beta, 4).unwrap();
                assert!(f.idempotent_through_degree(&e));
                let mut broken = f.clone();
                broken.coefficients[2] = &broken.coefficients[2] + &CartanScalar::one();
                assert!(!broken.idempotent_through_degree(&e));
            }
        }
    }

    #[test]
    fn kills_lowering_side() {
        let e = env(3, &[0, 1]);
        let x = AlgebraElement::gen(e.matrix_unit(2, 3).unwrap());
        for beta in e.levi().g_positive.clone() {
            let f = AlgebraElement::gen(e.root_vector(&-&beta).unwrap());
            let fx = e.multiply(&f, &x);
            assert!(projector_apply(&e, &fx).unwrap().is_zero());
        }
    }

    #[test]
    fn output_is_invariant_and_order_free() {
        let e = env(3, &[0, 1]);
        let order = normal_ordering(&e).unwrap();
        let reversed: Vec<Weight> = order.iter().rev().cloned().collect();
        let samples = [
            AlgebraElement::gen(e.matrix_unit(2, 3).unwrap()),
            AlgebraElement::gen(e.matrix_unit(3, 0).unwrap()),
            e.multiply(&AlgebraElement::gen(e.matrix_unit(1, 3).unwrap()), &AlgebraElement::gen(e.matrix_unit(3, 2).unwrap())),
        ];
        for x in samples {
            let a = Projector::with_order(&e, &order).unwrap().apply(&e, &x).unwrap();
            let b = Projector::with_order(&e, &reversed).unwrap().apply(&e, &x).unwrap();
            assert_eq!(a, b);
            assert!(verify_invariance(&e, &a).unwrap().holds());
        }
    }

    #[test]
    fn oracle_matches_generators() {
        let e = Arc::new(env(2, &[0]));
        for m in ComplementModel::build_all(e, &[Side::Plus, Side::Minus]).unwrap() {
            for z in m.canonical_elements().unwrap() {
                assert!(oracle_compare(&m, &z).unwrap());
            }
        }
    }

    #[test]
    fn oracle_rejects_perturbation() {
        let e = Arc::new(env(2, &[0]));
        let m = ComplementModel::build(e.clone(), 0, Side::Plus).unwrap();
        let mut z = m.canonical_element(0).unwrap();
        z.terms[1].coefficient = &z.terms[1].coefficient + &CartanScalar::one();
        z.reassemble(&e);
        assert!(!oracle_compare(&m, &z).unwrap());
    }

    #[test]
    fn fixed_point_on_minimal_node() {
        let e = Arc::new(env(2, &[0]));
        let m = ComplementModel::build(e.clone(), 0, Side::Plus).unwrap();
        let psi = AlgebraElement::monomial(m.psi_monomial(1).clone());
        assert_eq!(projector_apply(&e, &psi).unwrap(), psi);
    }

    #[test]
    fn rank_limit() {
        let e = env(3, &[0, 1, 2]);
        assert!(matches!(Projector::new(&e), Err(Error::UnsupportedOracleRank(3))));
    }
}
