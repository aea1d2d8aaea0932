use std::collections::BTreeMap;

use crate::cartan::matrix_unit_bracket;
use crate::{rat, Rat, RootSystem, Weight};

/// Basis of `a = sl(n)`: off-diagonal matrix units and simple coroots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `e_{ij}`, 0-based, `i ≠ j`.
    E(usize, usize),
    /// `h_{α_k} = e_{kk} − e_{k+1,k+1}`, 0-based.
    H(usize),
}

/// Linear combination of basis elements.
pub type LinComb = BTreeMap<BasisElement, Rat>;

fn push(out: &mut LinComb, b: BasisElement, c: Rat) {
    if c == rat(0) {
        return;
    }
    let e = out.entry(b).or_insert_with(|| rat(0));
    *e += c;
    if *e == rat(0) {
        out.remove(&b);
    }
}

/// Commutator table of `sl(n)` in the matrix-unit realization.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    rs: RootSystem,
}

impl StructureConstants {
    pub fn new(rs: RootSystem) -> Self {
        StructureConstants { rs }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        let n = self.rs.dim();
        let mut out: Vec<_> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| BasisElement::E(i, j))).collect();
        out.extend((0..self.rs.rank).map(BasisElement::H));
        out
    }

    /// Weight of a basis element (zero for Cartan elements).
    pub fn weight(&self, b: BasisElement) -> Weight {
        match b {
            BasisElement::E(i, j) => Weight::root(self.rs.dim(), i, j),
            BasisElement::H(_) => Weight::zero(self.rs.dim()),
        }
    }

    /// `h_{ε_i − ε_j}` expanded in the simple coroots.
    pub fn coroot_comb(&self, i: usize, j: usize) -> LinComb {
        let mut out = LinComb::new();
        let form = self.rs.coroot(&Weight::root(self.rs.dim(), i, j));
        for (k, c) in form.linear.into_iter().enumerate() {
            push(&mut out, BasisElement::H(k), c);
        }
        out
    }

    pub fn bracket(&self, a: BasisElement, b: BasisElement) -> LinComb {
        use BasisElement::*;
        let mut out = LinComb::new();
        match (a, b) {
            (E(i, j), E(k, l)) => {
                if j == k && i == l {
                    return self.coroot_comb(i, j);
                }
                if let Some(((p, s), sign)) = matrix_unit_bracket((i, j), (k, l)) {
                    push(&mut out, E(p, s), rat(sign));
                }
            }
            (H(k), E(i, j)) => {
                let c = self.rs.pairing(&self.rs.simple_roots[k], &Weight::root(self.rs.dim(), i, j));
                push(&mut out, E(i, j), c);
            }
            (E(_, _), H(_)) => {
                for (x, c) in self.bracket(b, a) {
                    push(&mut out, x, -c);
                }
            }
            (H(_), H(_)) => {}
        }
        out
    }

    pub fn bracket_comb(&self, a: &LinComb, b: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (x, c) in a {
            for (y, d) in b {
                for (z, e) in self.bracket(*x, *y) {
                    push(&mut out, z, c * d * e);
                }
            }
        }
        out
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
    pub fn jacobi_defect(&self, a: BasisElement, b: BasisElement, c: BasisElement) -> LinComb {
        let single = |x: BasisElement| LinComb::from([(x, rat(1))]);
        let mut out = LinComb::new();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            let inner = self.bracket(y, z);
            for (w, v) in self.bracket_comb(&single(x), &inner) {
                push(&mut out, w, v);
            }
        }
        out
    }

    /// `N` with `[e_a, e_b] = N e_{a+b}` for roots `a`, `b`, `a + b`; zero
    /// when `a + b` is not a root.
    pub fn root_constant(&self, a: &Weight, b: &Weight) -> Rat {
        let (Some(x), Some(y)) = (self.rs.root_indices(a), self.rs.root_indices(b)) else {
            return rat(0);
        };
        match matrix_unit_bracket(x, y) {
            Some((_, sign)) => rat(sign),
            None => rat(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    fn table(rank: usize) -> StructureConstants {
        StructureConstants::new(RootSystem::build(Series::A, rank).unwrap())
    }

    #[test]
    fn sl3_commutators() {
        let t = table(2);
        use BasisElement::*;
        assert_eq!(t.bracket(E(0, 1), E(1, 2)), LinComb::from([(E(0, 2), rat(1))]));
        assert_eq!(t.bracket(E(1, 2), E(0, 1)), LinComb::from([(E(0, 2), rat(-1))]));
        assert_eq!(t.bracket(E(0, 1), E(1, 0)), LinComb::from([(H(0), rat(1))]));
        assert_eq!(t.bracket(E(0, 2), E(2, 0)), LinComb::from([(H(0), rat(1)), (H(1), rat(1))]));
        assert_eq!(t.bracket(H(0), E(0, 1)), LinComb::from([(E(0, 1), rat(2))]));
        assert_eq!(t.bracket(H(1), E(0, 1)), LinComb::from([(E(0, 1), rat(-1))]));
        assert!(t.bracket(E(0, 1), E(0, 2)).is_empty());
    }

    #[test]
    fn antisymmetric() {
        let t = table(3);
        let basis = t.basis();
        for &a in &basis {
            for &b in &basis {
                let ab = t.bracket(a, b);
                let ba: LinComb = t.bracket(b, a).into_iter().map(|(k, v)| (k, -v)).collect();
                assert_eq!(ab, ba, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn jacobi_rank_three() {
        let t = table(3);
        let basis = t.basis();
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    assert!(t.jacobi_defect(a, b, c).is_empty());
                }
            }
        }
    }

    #[test]
    fn brackets_respect_weights() {
        let t = table(3);
        let basis = t.basis();
        for &a in &basis {
            for &b in &basis {
                let w = &t.weight(a) + &t.weight(b);
                for (z, _) in t.bracket(a, b) {
                    assert_eq!(t.weight(z), w);
                }
            }
        }
    }
}
