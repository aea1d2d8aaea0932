//! Root data of the ambient algebra `a = sl(n)`, Levi-type subalgebras and
//! affine Cartan forms.
//!
//! Weights are stored in ambient ε-coordinates and paired with the standard
//! dot product (the trace form), so every root has squared length 2. Cartan
//! elements are written in the basis `h_k = h_{α_k}` of simple coroots of
//! `a`; an [`AffineForm`] is an element of `h ⊕ C` in that basis.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::coeff::from_i64;
use crate::{Coefficient, Error, Result};

/// Root-system series. Only A is implemented; the others parse so that the
/// CLI can report a precise error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::UnsupportedSeries(other.to_string())),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(c)
    }
}

/// A weight in ambient ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight<T> {
    pub coords: Vec<T>,
}

impl<T: Coefficient> Weight<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Weight { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Weight { coords: vec![T::zero(); dim] }
    }

    /// `ε_i − ε_j` (0-based indices).
    pub fn root(dim: usize, i: usize, j: usize) -> Self {
        let mut w = Self::zero(dim);
        w.coords[i] = w.coords[i].clone() + T::one();
        w.coords[j] = w.coords[j].clone() - T::one();
        w
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| from_i64(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Trace-form pairing.
    pub fn dot(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Weight { coords: self.coords.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.to_exact_i64().is_some())
    }
}

impl<T: Coefficient> Add for &Weight<T> {
    type Output = Weight<T>;
    fn add(self, rhs: Self) -> Weight<T> {
        Weight {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Coefficient> Sub for &Weight<T> {
    type Output = Weight<T>;
    fn sub(self, rhs: Self) -> Weight<T> {
        Weight {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Coefficient> Neg for &Weight<T> {
    type Output = Weight<T>;
    fn neg(self) -> Weight<T> {
        Weight { coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Coefficient> fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Σ_k linear[k]·h_{α_k} + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm<T> {
    pub linear: Vec<T>,
    pub constant: T,
}

impl<T: Coefficient> AffineForm<T> {
    pub fn zero(rank: usize) -> Self {
        AffineForm { linear: vec![T::zero(); rank], constant: T::zero() }
    }

    pub fn constant(rank: usize, c: T) -> Self {
        AffineForm { linear: vec![T::zero(); rank], constant: c }
    }

    /// The coordinate function `h_{α_k}`.
    pub fn var(rank: usize, k: usize) -> Self {
        let mut f = Self::zero(rank);
        f.linear[k] = T::one();
        f
    }

    pub fn rank(&self) -> usize {
        self.linear.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        AffineForm {
            linear: self.linear.iter().map(|c| c.clone() * s.clone()).collect(),
            constant: self.constant.clone() * s.clone(),
        }
    }

    pub fn add_constant(&self, c: &T) -> Self {
        AffineForm { linear: self.linear.clone(), constant: self.constant.clone() + c.clone() }
    }

    /// Translation automorphism `τ_μ`, given `pairings[k] = (α_k, μ)`.
    pub fn shift(&self, pairings: &[T]) -> Self {
        let delta = self
            .linear
            .iter()
            .zip(pairings)
            .fold(T::zero(), |acc, (c, p)| acc + c.clone() * p.clone());
        self.add_constant(&delta)
    }

    /// Integer exponent vector `[constant, linear…]`, if every entry is integral.
    pub fn integer_exponents(&self) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.linear.len() + 1);
        out.push(self.constant.to_exact_i64()?);
        for c in &self.linear {
            out.push(c.to_exact_i64()?);
        }
        Some(out)
    }
}

impl<T: Coefficient> Add for &AffineForm<T> {
    type Output = AffineForm<T>;
    fn add(self, rhs: Self) -> AffineForm<T> {
        let n = self.linear.len().max(rhs.linear.len());
        let get = |v: &Vec<T>, k: usize| v.get(k).cloned().unwrap_or_else(T::zero);
        AffineForm {
            linear: (0..n).map(|k| get(&self.linear, k) + get(&rhs.linear, k)).collect(),
            constant: self.constant.clone() + rhs.constant.clone(),
        }
    }
}

impl<T: Coefficient> Sub for &AffineForm<T> {
    type Output = AffineForm<T>;
    fn sub(self, rhs: Self) -> AffineForm<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Neg for &AffineForm<T> {
    type Output = AffineForm<T>;
    fn neg(self) -> AffineForm<T> {
        AffineForm {
            linear: self.linear.iter().map(|c| -c.clone()).collect(),
            constant: -self.constant.clone(),
        }
    }
}

/// Writes `c·h_k` terms followed by the constant, e.g. `h_1 - 2h_3 + 1`.
impl<T: Coefficient> fmt::Display for AffineForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &T, var: Option<usize>| -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match var {
                Some(k) if mag.is_one() => write!(f, "h_{}", k + 1),
                Some(k) => write!(f, "{}h_{}", mag, k + 1),
                None => write!(f, "{mag}"),
            }
        };
        for (k, c) in self.linear.iter().enumerate() {
            term(f, c, Some(k))?;
        }
        term(f, &self.constant, None)?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Ambient root system (A-series, realised by `(rank+1)×(rank+1)` matrix units).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem<T> {
    pub series: Series,
    pub rank: usize,
    pub simple_roots: Vec<Weight<T>>,
    /// Ordered by height, then lexicographically on ε-coordinates.
    pub positive_roots: Vec<Weight<T>>,
    pub rho: Weight<T>,
}

impl<T: Coefficient> RootSystem<T> {
    pub fn build(series: Series, rank: usize) -> Result<Self> {
        if series != Series::A {
            return Err(Error::UnsupportedSeries(series.to_string()));
        }
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let n = rank + 1;
        let simple_roots: Vec<_> = (0..rank).map(|k| Weight::root(n, k, k + 1)).collect();
        let mut positive: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        positive.sort_by(|a, b| (a.1 - a.0).cmp(&(b.1 - b.0)).then_with(|| b.cmp(a)));
        let positive_roots: Vec<_> = positive.iter().map(|&(i, j)| Weight::root(n, i, j)).collect();
        let half = T::one() / from_i64::<T>(2);
        let sum = positive_roots.iter().fold(Weight::zero(n), |acc, r| &acc + r);
        let rho = sum.scale(&half);
        Ok(RootSystem { series, rank, simple_roots, positive_roots, rho })
    }

    /// Number of ε-coordinates.
    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn pairing(&self, a: &Weight<T>, b: &Weight<T>) -> T {
        a.dot(b)
    }

    fn check_dim(&self, w: &Weight<T>) -> Result<()> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: w.dim() });
        }
        Ok(())
    }

    /// Coordinates of the traceless projection of `μ` in the basis of
    /// simple roots (partial sums of the centred ε-coordinates).
    pub fn simple_coordinates(&self, mu: &Weight<T>) -> Vec<T> {
        let n = from_i64::<T>(self.dim() as i64);
        let mean = mu.coords.iter().fold(T::zero(), |a, c| a + c.clone()) / n;
        let mut acc = T::zero();
        (0..self.rank)
            .map(|k| {
                acc = acc.clone() + mu.coords[k].clone() - mean.clone();
                acc.clone()
            })
            .collect()
    }

    /// `h_μ` in the basis `{h_{α_k}}`.
    pub fn coroot(&self, mu: &Weight<T>) -> AffineForm<T> {
        AffineForm { linear: self.simple_coordinates(mu), constant: T::zero() }
    }

    /// `η_μ = h_μ + (μ, ρ) − ½(μ, μ)`.
    pub fn eta_form(&self, mu: &Weight<T>) -> AffineForm<T> {
        let half = T::one() / from_i64::<T>(2);
        let c = self.pairing(mu, &self.rho) - half * self.pairing(mu, mu);
        self.coroot(mu).add_constant(&c)
    }

    /// `(α_k, μ)` for every simple root; the data of the translation `τ_μ`.
    pub fn shift_pairings(&self, mu: &Weight<T>) -> Vec<T> {
        self.simple_roots.iter().map(|a| self.pairing(a, mu)).collect()
    }

    /// Number of simple roots in `μ ∈ Γ₊`.
    pub fn height(&self, mu: &Weight<T>) -> Result<u64> {
        self.check_dim(mu)?;
        let total = mu.coords.iter().fold(T::zero(), |a, c| a + c.clone());
        let fail = || Error::NotInPositiveCone(mu.to_string());
        if !total.is_zero() {
            return Err(fail());
        }
        let mut h = 0u64;
        for c in self.simple_coordinates(mu) {
            let n = c.to_exact_i64().ok_or_else(fail)?;
            if n < 0 {
                return Err(fail());
            }
            h += n as u64;
        }
        Ok(h)
    }

    /// Matrix-unit indices `(i, j)` when `μ = ε_i − ε_j` is a root.
    pub fn root_indices(&self, mu: &Weight<T>) -> Option<(usize, usize)> {
        if mu.dim() != self.dim() {
            return None;
        }
        let mut plus = None;
        let mut minus = None;
        for (k, c) in mu.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            } else if c.is_one() && plus.is_none() {
                plus = Some(k);
            } else if (-c.clone()).is_one() && minus.is_none() {
                minus = Some(k);
            } else {
                return None;
            }
        }
        Some((plus?, minus?))
    }

    pub fn is_root(&self, mu: &Weight<T>) -> bool {
        self.root_indices(mu).is_some()
    }

    /// Index of `μ` among the simple roots.
    pub fn simple_index(&self, mu: &Weight<T>) -> Option<usize> {
        self.simple_roots.iter().position(|a| a == mu)
    }
}

/// `[e_a, e_b]` for matrix units `e_a = e_{a.0 a.1}` with off-diagonal
/// arguments; returns the off-diagonal result with its sign, or `None` when
/// the bracket is zero or diagonal.
pub(crate) fn matrix_unit_bracket(a: (usize, usize), b: (usize, usize)) -> Option<((usize, usize), i64)> {
    // [e_ij, e_kl] = δ_jk e_il − δ_li e_kj
    let (i, j) = a;
    let (k, l) = b;
    if j == k && i != l {
        Some(((i, l), 1))
    } else if l == i && k != j {
        Some(((k, j), -1))
    } else {
        None
    }
}

/// One irreducible `g`-submodule of the complement, listed by its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiRootClass<T> {
    /// Positive complement roots, ordered by height then ε-coordinates.
    pub roots: Vec<Weight<T>>,
}

impl<T: Coefficient> QuasiRootClass<T> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, mu: &Weight<T>) -> bool {
        self.roots.contains(mu)
    }
}

/// A pair `g ⊂ a` with `g` generated by a subset of the simple roots of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviPair<T> {
    pub ambient: RootSystem<T>,
    /// 0-based simple-root indices `Π_g ⊂ Π_a`, sorted.
    pub levi_subset: Vec<usize>,
    pub g_positive: Vec<Weight<T>>,
    pub complement_positive: Vec<Weight<T>>,
    pub classes: Vec<QuasiRootClass<T>>,
    /// Ambient simple roots not in `Π_g`; their coroots span the centre part
    /// `c` of the Cartan subalgebra `k = h ⊕ c`, up to a change of basis.
    pub centre_indices: Vec<usize>,
}

impl<T: Coefficient> LeviPair<T> {
    pub fn new(ambient: RootSystem<T>, subset: &[usize]) -> Result<Self> {
        let mut levi: Vec<usize> = subset.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&k| k >= ambient.rank) {
            return Err(Error::IndexOutOfRange { index: bad + 1, rank: ambient.rank });
        }
        let in_g = |mu: &Weight<T>| {
            let (i, j) = ambient.root_indices(mu).expect("positive roots are roots");
            (i..j).all(|k| levi.binary_search(&k).is_ok())
        };
        let (g_positive, complement_positive): (Vec<_>, Vec<_>) =
            ambient.positive_roots.iter().cloned().partition(|r| in_g(r));

        // Close each complement root vector under ad e_{±α}, α ∈ Π_g.
        let mut seen = vec![false; complement_positive.len()];
        let mut classes = Vec::new();
        for start in 0..complement_positive.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let root = ambient.root_indices(&complement_positive[c]).unwrap();
                for &k in &levi {
                    for gen in [(k, k + 1), (k + 1, k)] {
                        if let Some((target, _)) = matrix_unit_bracket(gen, root) {
                            let w = Weight::root(ambient.dim(), target.0, target.1);
                            if let Some(p) = complement_positive.iter().position(|r| *r == w) {
                                if !seen[p] {
                                    seen[p] = true;
                                    members.push(p);
                                    queue.push_back(p);
                                }
                            }
                        }
                    }
                }
            }
            members.sort_unstable();
            classes.push(QuasiRootClass { roots: members.iter().map(|&m| complement_positive[m].clone()).collect() });
        }
        // Order classes by the height of their lowest root, ties broken by
        // descending ε-coordinates of that root.
        let key = |c: &QuasiRootClass<T>| {
            let low = &c.roots[0];
            (ambient.height(low).unwrap(), std::cmp::Reverse(low.clone()))
        };
        classes.sort_by_key(key);
        let centre_indices = (0..ambient.rank).filter(|k| levi.binary_search(k).is_err()).collect();
        Ok(LeviPair { ambient, levi_subset: levi, g_positive, complement_positive, classes, centre_indices })
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank
    }

    pub fn g_rank(&self) -> usize {
        self.levi_subset.len()
    }

    pub fn is_g_simple(&self, k: usize) -> bool {
        self.levi_subset.binary_search(&k).is_ok()
    }

    pub fn is_g_root(&self, mu: &Weight<T>) -> bool {
        self.g_positive.contains(mu)
    }

    pub fn class_of(&self, mu: &Weight<T>) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(mu))
    }
}
