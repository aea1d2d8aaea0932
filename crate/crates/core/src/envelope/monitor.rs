use crate::envelope::{AlgebraElement, Bracket, Envelope, Gen, PbwMonomial};
use crate::CartanScalar;

/// Bookkeeping of an unmemoized straightening run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StraightenStats {
    /// Adjacent-swap rewrites performed.
    pub rewrites: u64,
    /// Inversions of the input word against the PBW order.
    pub initial_inversions: u64,
    /// Rewrites whose children failed to decrease `(length, inversions)`.
    pub violations: u64,
}

fn inversions(word: &[Gen]) -> u64 {
    let mut n = 0;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                n += 1;
            }
        }
    }
    n
}

fn measure(word: &[Gen]) -> (usize, u64) {
    (word.len(), inversions(word))
}

/// Normal-order a word by adjacent swaps, without the memo table, checking
/// that every rewrite strictly decreases `(length, inversions)`
/// lexicographically. This is an independent reference for
/// [`Envelope::multiply`] and a termination witness.
pub fn straighten_word(env: &Envelope, word: &[Gen]) -> (AlgebraElement, StraightenStats) {
    let mut stats = StraightenStats { initial_inversions: inversions(word), ..Default::default() };
    let mut out = AlgebraElement::zero();
    let mut work: Vec<(Vec<Gen>, CartanScalar)> = vec![(word.to_vec(), CartanScalar::one())];
    while let Some((w, c)) = work.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            out.add_term(PbwMonomial::from_sorted_word(&w), c);
            continue;
        };
        stats.rewrites += 1;
        let parent = measure(&w);
        let mut children = Vec::new();
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        children.push((swapped, c.clone()));
        match env.bracket_gens(w[k], w[k + 1]) {
            Bracket::Zero => {}
            Bracket::Gen(g, x) => {
                let mut child = w[..k].to_vec();
                child.push(*g);
                child.extend_from_slice(&w[k + 2..]);
                children.push((child, &CartanScalar::constant(x.clone()) * &c));
            }
            Bracket::Cartan(form) => {
                let tail = &w[k + 2..];
                let shifted = form.shift(&env.pairings_of(tail.iter().map(|&g| (g, 1))));
                let mut child = w[..k].to_vec();
                child.extend_from_slice(tail);
                children.push((child, &CartanScalar::from_affine(&shifted) * &c));
            }
        }
        for (child, coeff) in children {
            if measure(&child) >= parent {
                stats.violations += 1;
            }
            if !coeff.is_zero() {
                work.push((child, coeff));
            }
        }
    }
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use crate::{LeviPair, RootSystem};

    #[test]
    fn matches_memoized_engine() {
        let env = Envelope::new(LeviPair::new(RootSystem::build(Series::A, 2).unwrap(), &[0]).unwrap());
        let n = env.generators().len() as u16;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let word = [Gen(a), Gen(b), Gen(c)];
                    let (x, stats) = straighten_word(&env, &word);
                    let y = word.iter().rev().fold(AlgebraElement::one(), |acc, &g| env.left_mul_gen(g, &acc));
                    assert_eq!(x, y);
                    assert_eq!(stats.violations, 0);
                    assert!(stats.rewrites >= stats.initial_inversions);
                }
            }
        }
    }

    #[test]
    fn sorted_word_needs_no_rewrites() {
        let env = Envelope::new(LeviPair::new(RootSystem::build(Series::A, 3).unwrap(), &[1]).unwrap());
        let (x, stats) = straighten_word(&env, &[Gen(0), Gen(0), Gen(3), Gen(7)]);
        assert_eq!(stats.rewrites, 0);
        assert_eq!(x.len(), 1);
    }
}
