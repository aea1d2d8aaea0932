use std::collections::BTreeMap;

use crate::hasse::Route;
use crate::routes::{PsiVector, RouteCalculus};
use crate::scalars::ModeScalar;
use crate::{Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainKind {
    One,
    Two,
    Three,
}

/// A group of routes from one node, summed with their `B` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub kind: ChainKind,
    pub pair: (usize, usize),
    pub top: usize,
    /// Routes in enumeration order.
    pub members: Vec<Route>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    One(Route),
    Two(Vec<usize>),
    Three(Vec<usize>, Vec<usize>),
}

impl RouteCalculus<'_> {
    /// `m⃗ ∪ {l, r}` sorted descending, if it is a route from `max(m⃗)`.
    fn union_route(&self, m: &Route, (l, r): (usize, usize)) -> Option<Vec<usize>> {
        let d = self.diagram();
        let mut nodes: Vec<usize> = m.nodes().to_vec();
        for x in [l, r] {
            if !nodes.contains(&x) {
                nodes.push(x);
            }
        }
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if !d.succ(nodes[a], nodes[b]) && !d.succ(nodes[b], nodes[a]) {
                    return None;
                }
            }
        }
        let below = |x: usize| nodes.iter().filter(|&&y| d.succ(x, y)).count();
        let mut sorted = nodes.clone();
        sorted.sort_by_key(|&x| std::cmp::Reverse(below(x)));
        let nodes = sorted;
        (nodes[0] == m.max_node()).then_some(nodes)
    }

    #[cfg(test)]
    pub(crate) fn union_route_public(&self, m: &Route, pair: (usize, usize)) -> bool {
        self.union_route(m, pair).is_some()
    }

    /// Split the routes from `i` into `(l,r)`-chains.
    pub fn classify_chains(&self, pair: (usize, usize), i: usize) -> Result<Vec<Chain>> {
        self.pair_root(pair)?;
        let (l, r) = pair;
        let routes = self.diagram().enumerate_routes(i)?;
        let mut groups: BTreeMap<Key, Vec<Route>> = BTreeMap::new();
        let mut order: Vec<Key> = Vec::new();
        for m in routes {
            let key = if !m.contains(l) && !m.contains(r) {
                Key::One(m.clone())
            } else {
                match self.union_route(&m, pair) {
                    None => Key::One(m.clone()),
                    Some(u) => {
                        let pl = u.iter().position(|&x| x == l).unwrap();
                        let rho = u[pl + 2..].to_vec();
                        if l == i {
                            Key::Two(rho)
                        } else {
                            Key::Three(u[..pl].to_vec(), rho)
                        }
                    }
                }
            };
            if !groups.contains_key(&key) {
                order.push(key.clone());
            }
            groups.entry(key).or_default().push(m);
        }
        Ok(order
            .into_iter()
            .map(|key| {
                let kind = match key {
                    Key::One(_) => ChainKind::One,
                    Key::Two(_) => ChainKind::Two,
                    Key::Three(..) => ChainKind::Three,
                };
                let members = groups.remove(&key).unwrap();
                Chain { kind, pair, top: i, members }
            })
            .collect())
    }

    /// Sum of `m⃗ B^i_{m⃗}` over the chain.
    pub fn chain_vector<S: ModeScalar<Coeff = Rat>>(&self, chain: &Chain) -> Result<PsiVector<S>> {
        let mut out = PsiVector::zero();
        for m in &chain.members {
            out.add_assign(&self.tilde(m)?);
        }
        Ok(out)
    }

    /// Apply `∇_{l,r}` to the chain and test for exact zero.
    pub fn verify_chain_killed<S: ModeScalar<Coeff = Rat>>(&self, chain: &Chain) -> Result<bool> {
        Ok(self.nabla(chain.pair, &self.chain_vector::<S>(chain)?)?.is_zero())
    }
}

/// `−q^{−d} + [d]_q B^l_r` with `d = η_l − η_r`: the 2-chain combination.
pub fn two_chain_combination<S: ModeScalar<Coeff = Rat>>(eta_l: &crate::AffineForm, eta_r: &crate::AffineForm) -> Result<S> {
    let d = eta_l - eta_r;
    Ok(S::exp(&-&d)?.neg().add(&S::bracket(&d)?.mul(&S::b_factor(&d)?)))
}

/// `−q^{−d}B^i_l + [d]_q B^i_l B^i_r + q^{d}B^i_r` with `d = η_l − η_r`: the
/// 3-chain combination.
pub fn three_chain_combination<S: ModeScalar<Coeff = Rat>>(
    eta_i: &crate::AffineForm,
    eta_l: &crate::AffineForm,
    eta_r: &crate::AffineForm,
) -> Result<S> {
    let d = eta_l - eta_r;
    let bl = S::b_factor(&(eta_i - eta_l))?;
    let br = S::b_factor(&(eta_i - eta_r))?;
    let a = S::exp(&-&d)?.neg().mul(&bl);
    let b = S::bracket(&d)?.mul(&bl).mul(&br);
    let c = S::exp(&d)?.mul(&br);
    Ok(a.add(&b).add(&c))
}
