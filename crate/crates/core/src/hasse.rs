//! Hasse diagrams of finite graded modules, the reachability order and routes.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::{rat, Error, Rat, Result, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub label: String,
    pub weight: Weight,
}

/// Weight basis with the action of the simple raising operators.
///
/// `actions[k][i][j] = π^{α_k}_{ij}`, the coefficient of `x_i` in `e_{α_k} x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub nodes: Vec<NodeRecord>,
    pub actions: BTreeMap<usize, Vec<Vec<Rat>>>,
}

impl GradedModule {
    /// Validate dimensions, weight integrality and weight compatibility of
    /// every nonzero matrix entry.
    pub fn new(nodes: Vec<NodeRecord>, actions: BTreeMap<usize, Vec<Vec<Rat>>>) -> Result<Self> {
        let n = nodes.len();
        let dim = nodes.first().map(|x| x.weight.dim()).unwrap_or(0);
        for node in &nodes {
            if node.weight.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: node.weight.dim() });
            }
            if !node.weight.is_integral() {
                return Err(Error::InvalidModule(format!("non-integral weight {} at node {}", node.weight, node.label)));
            }
        }
        for (&k, m) in &actions {
            if k + 1 >= dim.max(1) && n > 0 {
                return Err(Error::IndexOutOfRange { index: k + 1, rank: dim.saturating_sub(1) });
            }
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, got: m.len() });
            }
            let alpha = Weight::root(dim, k, k + 1);
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if *c != rat(0) && &nodes[i].weight - &nodes[j].weight != alpha {
                        return Err(Error::InvalidModule(format!(
                            "entry ({}, {}) of α_{} joins weights differing by {}",
                            nodes[i].label,
                            nodes[j].label,
                            k + 1,
                            &nodes[i].weight - &nodes[j].weight
                        )));
                    }
                }
            }
        }
        Ok(GradedModule { nodes, actions })
    }
}

/// `i ←α j`: `e_α x_j` has a nonzero `x_i` component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    /// 0-based simple-root index.
    pub root: usize,
    pub entry: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    module: GradedModule,
    arrows: Vec<Arrow>,
    /// `above[i][j]` iff `i ≻ j` strictly.
    above: Vec<Vec<bool>>,
}

impl HasseDiagram {
    pub fn build(module: GradedModule) -> Result<Self> {
        let n = module.nodes.len();
        let mut arrows = Vec::new();
        for (&k, m) in &module.actions {
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if *c != rat(0) {
                        arrows.push(Arrow { from: i, to: j, root: k, entry: c.clone() });
                    }
                }
            }
        }
        arrows.sort_by_key(|a| (a.from, a.to, a.root));
        let mut above = vec![vec![false; n]; n];
        for a in &arrows {
            above[a.from][a.to] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if above[i][k] {
                    for j in 0..n {
                        if above[k][j] {
                            above[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i][i]) {
            return Err(Error::CyclicOrder(i));
        }
        Ok(HasseDiagram { module, arrows, above })
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.module.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &NodeRecord {
        &self.module.nodes[i]
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.module.nodes[i].weight
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Strict order `i ≻ j`.
    pub fn succ(&self, i: usize, j: usize) -> bool {
        self.above[i][j]
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::UnknownNode(i));
        }
        Ok(())
    }

    /// Arrows labelled `α_k`, as `(l, r)` pairs.
    pub fn simple_pairs(&self, k: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.root == k).map(|a| (a.from, a.to)).collect()
    }

    /// The arrow from `l` to `r`, if any.
    pub fn arrow(&self, l: usize, r: usize) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.from == l && a.to == r)
    }

    /// Simple-root indices labelling at least one arrow.
    pub fn labels(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.arrows.iter().map(|a| a.root).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every route with maximal node `i`, ordered by length, then
    /// lexicographically.
    pub fn enumerate_routes(&self, i: usize) -> Result<Vec<Route>> {
        self.check(i)?;
        let mut out = Vec::new();
        let mut stack = vec![vec![i]];
        while let Some(r) = stack.pop() {
            let last = *r.last().unwrap();
            for j in (0..self.len()).rev() {
                if self.above[last][j] {
                    let mut next = r.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
            out.push(Route(r));
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Every route in the diagram.
    pub fn all_routes(&self) -> Vec<Route> {
        (0..self.len()).flat_map(|i| self.enumerate_routes(i).expect("node in range")).collect()
    }

    /// Validate a node sequence as a route.
    pub fn route(&self, nodes: Vec<usize>) -> Result<Route> {
        if nodes.is_empty() {
            return Err(Error::RoutePrecondition("empty route".into()));
        }
        for &x in &nodes {
            self.check(x)?;
        }
        if let Some(w) = nodes.windows(2).find(|w| !self.above[w[0]][w[1]]) {
            return Err(Error::RoutePrecondition(format!("{} does not dominate {}", w[0], w[1])));
        }
        Ok(Route(nodes))
    }

    /// `(m⃗, n⃗)`, defined when `min(m⃗) ≻ max(n⃗)`.
    pub fn union(&self, a: &Route, b: &Route) -> Result<Route> {
        if !self.above[a.min_node()][b.max_node()] {
            return Err(Error::RoutePrecondition(format!("union {a} and {b}: {} does not dominate {}", a.min_node(), b.max_node())));
        }
        let mut v = a.0.clone();
        v.extend_from_slice(&b.0);
        Ok(Route(v))
    }

    /// `m⃗·n⃗`, defined when `min(m⃗) = max(n⃗)`; the shared node appears once.
    pub fn concat(&self, a: &Route, b: &Route) -> Result<Route> {
        if a.min_node() != b.max_node() {
            return Err(Error::RoutePrecondition(format!("concat {a} and {b}: endpoints differ")));
        }
        let mut v = a.0.clone();
        v.extend_from_slice(&b.0[1..]);
        Ok(Route(v))
    }

    /// Length of the longest route from `i` to `j` (0 when `i = j`).
    pub fn path_length(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(0);
        }
        if !self.above[i][j] {
            return None;
        }
        (0..self.len())
            .filter(|&k| self.arrow(i, k).is_some() && (k == j || self.above[k][j]))
            .filter_map(|k| self.path_length(k, j))
            .max()
            .map(|d| d + 1)
    }

    /// Graphviz description; arrows point in the direction of the raising
    /// action (`j → i` for `i ←α j`).
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, n) in self.module.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\\n{}\"];", n.label, n.weight);
        }
        for a in &self.arrows {
            let _ = writeln!(s, "  n{} -> n{} [label=\"α_{}\"];", a.to, a.from, a.root + 1);
        }
        s.push_str("}\n");
        s
    }
}

/// Strictly descending node sequence `m_1 ≻ … ≻ m_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Route(Vec<usize>);

impl Route {
    /// The length-0 route `(i)`.
    pub fn point(i: usize) -> Self {
        Route(vec![i])
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn max_node(&self) -> usize {
        self.0[0]
    }

    pub fn min_node(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Number of steps `|m⃗| = k − 1`.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// Nodes below the maximal one.
    pub fn tail(&self) -> &[usize] {
        &self.0[1..]
    }

    /// Sub-route `m_a … m_b` (inclusive).
    pub fn slice(&self, a: usize, b: usize) -> Route {
        Route(self.0[a..=b].to_vec())
    }

    /// Position of node `i`.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == i)
    }

    /// `ν_min − ν_max`.
    pub fn phi_weight(&self, d: &HasseDiagram) -> Weight {
        d.weight(self.min_node()) - d.weight(self.max_node())
    }

    /// `−ν_max`.
    pub fn psi_weight(&self, d: &HasseDiagram) -> Weight {
        -d.weight(self.max_node())
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(label: &str, w: &[i64]) -> NodeRecord {
        NodeRecord { label: label.into(), weight: Weight::from_ints(w) }
    }

    /// Total order `0 ≻ 1 ≻ … ≻ k−1` as a path with arrows α_1, α_2, ….
    pub(crate) fn chain(k: usize) -> HasseDiagram {
        let n = k + 1;
        let nodes: Vec<_> = (0..k)
            .map(|i| {
                let mut w = vec![0; n];
                w[i] = 1;
                w[n - 1] = -1;
                node(&format!("x{i}"), &w)
            })
            .collect();
        let mut actions = BTreeMap::new();
        for a in 0..k.saturating_sub(1) {
            let mut m = vec![vec![rat(0); k]; k];
            m[a][a + 1] = rat(1);
            actions.insert(a, m);
        }
        HasseDiagram::build(GradedModule::new(nodes, actions).unwrap()).unwrap()
    }

    #[test]
    fn path_diagram() {
        let d = chain(3);
        assert_eq!(d.arrows().len(), 2);
        assert!(d.succ(0, 2));
        assert!(!d.succ(2, 0));
        assert_eq!(d.simple_pairs(1), vec![(1, 2)]);
        assert_eq!(d.path_length(0, 2), Some(2));
    }

    #[test]
    fn routes_of_total_orders() {
        let d = chain(3);
        let r: Vec<Vec<usize>> = d.enumerate_routes(0).unwrap().iter().map(|r| r.nodes().to_vec()).collect();
        assert_eq!(r, vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]]);
        for k in 1..6 {
            assert_eq!(chain(k).enumerate_routes(0).unwrap().len(), 1 << (k - 1));
        }
        assert_eq!(chain(2).enumerate_routes(0).unwrap().len(), 2);
        assert_eq!(chain(1).enumerate_routes(0).unwrap(), vec![Route::point(0)]);
    }

    #[test]
    fn subsequences_are_routes() {
        let d = chain(4);
        for r in d.enumerate_routes(0).unwrap() {
            let n = r.nodes().len();
            for mask in 1u32..(1 << n) {
                let sub: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| r.nodes()[b]).collect();
                assert!(d.route(sub).is_ok());
            }
        }
    }

    #[test]
    fn partial_operations() {
        let d = chain(3);
        let u = d.union(&Route::point(0), &d.route(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(u.nodes(), &[0, 1, 2]);
        let c = d.concat(&d.route(vec![0, 1]).unwrap(), &d.route(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(c.nodes(), &[0, 1, 2]);
        assert!(d.union(&Route::point(2), &Route::point(0)).is_err());
        assert!(d.concat(&Route::point(0), &Route::point(1)).is_err());
        assert!(d.route(vec![1, 0]).is_err());
    }

    #[test]
    fn incompatible_entry_rejected() {
        let nodes = vec![node("a", &[1, 0, -1]), node("b", &[1, -1, 0])];
        let mut actions = BTreeMap::new();
        actions.insert(0, vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]]);
        assert!(matches!(GradedModule::new(nodes, actions), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn non_integral_weight_rejected() {
        let nodes = vec![NodeRecord { label: "a".into(), weight: Weight::new(vec![crate::ratio(1, 2), crate::ratio(-1, 2)]) }];
        assert!(matches!(GradedModule::new(nodes, BTreeMap::new()), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn isolated_node() {
        let d = HasseDiagram::build(GradedModule::new(vec![node("a", &[1, -1])], BTreeMap::new()).unwrap()).unwrap();
        assert!(d.simple_pairs(0).is_empty());
        assert_eq!(d.enumerate_routes(0).unwrap().len(), 1);
        assert!(matches!(d.enumerate_routes(3), Err(Error::UnknownNode(3))));
    }

    #[test]
    fn dot_export() {
        let dot = chain(2).to_dot("demo");
        assert!(dot.contains("n1 -> n0 [label=\"α_1\"]"));
        assert!(dot.starts_with("digraph"));
    }
}
