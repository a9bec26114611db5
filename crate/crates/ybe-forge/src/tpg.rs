//! Twisted tensor product graphs for `V(lambda_a) ⊗ V(lambda_b)`: the `(c, k)`
//! decomposition grid, its edges, and the coefficient functions `rho_nu(z)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::liealg::{casimir_eigenvalue, grid_weight, AlgebraSignature, Weight};
use crate::scalars::{bracket, DeformParam, Rat, RatFuncZ, Sign};
use crate::Error;

/// A node of the extended graph: a grid point or the merged indecomposable node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    Grid(i64, i64),
    V,
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Grid(c, k) => write!(f, "{c},{k}"),
            NodeId::V => f.write_str("V"),
        }
    }
}

impl Serialize for NodeId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NodeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<NodeId, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for NodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<NodeId, Error> {
        if s == "V" {
            return Ok(NodeId::V);
        }
        let bad = || Error::Usage(format!("bad node label {s:?}"));
        let (c, k) = s.split_once(',').ok_or_else(bad)?;
        Ok(NodeId::Grid(c.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TPGNode {
    pub c: i64,
    pub k: i64,
    pub weight: Weight,
    pub casimir: Rat,
    /// Relative parity class `c mod 2`.
    pub parity: u8,
    pub indecomposable: bool,
}

impl TPGNode {
    pub fn id(&self) -> NodeId {
        NodeId::Grid(self.c, self.k)
    }
}

/// The decomposition grid `{(c, k) : 0 <= k <= c <= a}` of `V(lambda_a) ⊗ V(lambda_b)`.
#[derive(Clone, Debug, Serialize)]
pub struct Grid {
    pub a: i64,
    pub b: i64,
    pub nodes: Vec<TPGNode>,
    /// `m = n` and `a = b`: nodes `(a,0)` and `(a,1)` merge into an indecomposable.
    pub has_vnode: bool,
}

impl Grid {
    pub fn node(&self, c: i64, k: i64) -> Option<&TPGNode> {
        self.nodes.iter().find(|n| n.c == c && n.k == k)
    }
}

pub fn decomposition_grid(a: i64, b: i64, sig: &AlgebraSignature) -> Result<Grid, Error> {
    if a < 1 || b < a {
        return Err(Error::Usage(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
    }
    let has_vnode = sig.m == sig.n && a == b;
    let mut nodes = Vec::new();
    for c in 0..=a {
        for k in 0..=c {
            let weight = grid_weight(a, b, c, k, sig);
            nodes.push(TPGNode {
                c,
                k,
                casimir: casimir_eigenvalue(&weight, sig),
                weight,
                parity: (c % 2) as u8,
                indecomposable: has_vnode && c == a && k <= 1,
            });
        }
    }
    Ok(Grid { a, b, nodes, has_vnode })
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    /// `+1` between equal parities (same row), `-1` otherwise.
    pub sign: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedTPG {
    pub sig: AlgebraSignature,
    pub grid: Grid,
    pub edges: Vec<Edge>,
}

impl TwistedTPG {
    pub fn node_ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> =
            self.grid.nodes.iter().filter(|n| !n.indecomposable).map(TPGNode::id).collect();
        if self.grid.has_vnode {
            ids.push(NodeId::V);
        }
        ids
    }

    fn casimir(&self, id: NodeId) -> Option<&Rat> {
        match id {
            NodeId::Grid(c, k) => self.grid.node(c, k).map(|n| &n.casimir),
            NodeId::V => None,
        }
    }
}

/// Edges of the extended twisted graph: `(c,k)-(c,k+1)` (sign `+1`) and
/// `(c,k)-(c+1,k+1)` (sign `-1`). In the indecomposable case the merged node
/// attaches to `(a-1,0)` (opposite parity) and `(a,2)` (same parity).
pub fn build_extended_ttpg(grid: &Grid, sig: &AlgebraSignature) -> TwistedTPG {
    let a = grid.a;
    let merged = |c: i64, k: i64| grid.has_vnode && c == a && k <= 1;
    let mut edges = Vec::new();
    for c in 0..=a {
        for k in 0..c {
            if !merged(c, k) && !merged(c, k + 1) {
                edges.push(Edge { from: NodeId::Grid(c, k), to: NodeId::Grid(c, k + 1), sign: 1 });
            }
        }
    }
    for c in 0..a {
        for k in 0..=c {
            if !merged(c + 1, k + 1) {
                edges.push(Edge { from: NodeId::Grid(c, k), to: NodeId::Grid(c + 1, k + 1), sign: -1 });
            }
        }
    }
    if grid.has_vnode {
        edges.push(Edge { from: NodeId::Grid(a - 1, 0), to: NodeId::V, sign: -1 });
        if a >= 2 {
            edges.push(Edge { from: NodeId::V, to: NodeId::Grid(a, 2), sign: 1 });
        }
    }
    TwistedTPG { sig: *sig, grid: grid.clone(), edges }
}

/// Bracket exponent on an edge: `(C(nu') - C(nu)) / 2` for stepping from `nu'` to `nu`.
fn edge_exponent(t: &TwistedTPG, from: NodeId, to: NodeId) -> Result<i64, Error> {
    let (cf, ct) = match (t.casimir(from), t.casimir(to)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Inconsistent(format!("edge {from}-{to} has no Casimir data"))),
    };
    let d = (cf - ct) / Rat::int(2);
    if !num::One::is_one(d.denom()) {
        return Err(Error::Inconsistent(format!("half-integral Casimir step on edge {from}-{to}")));
    }
    Ok(num::ToPrimitive::to_i64(d.numer()).expect("exponent overflow"))
}

/// Bracket factors `(exponent, sign)` of each node's coefficient along a BFS tree
/// from `(0,0)` through the irreducible nodes.
pub fn coefficient_factors(grid: &Grid, sig: &AlgebraSignature) -> BTreeMap<NodeId, Vec<(i64, Sign)>> {
    let t = build_extended_ttpg(grid, sig);
    let (factors, _) = spanning_factors(&t).expect("grid Casimirs are integral");
    factors
}

type Factors = BTreeMap<NodeId, Vec<(i64, Sign)>>;

fn spanning_factors(t: &TwistedTPG) -> Result<(Factors, Vec<&Edge>), Error> {
    let root = NodeId::Grid(0, 0);
    let mut factors: Factors = BTreeMap::from([(root, vec![])]);
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([root]);
    let regular: Vec<&Edge> = t.edges.iter().filter(|e| e.from != NodeId::V && e.to != NodeId::V).collect();
    while let Some(n) = queue.pop_front() {
        for e in &regular {
            let other = if e.from == n {
                e.to
            } else if e.to == n {
                e.from
            } else {
                continue;
            };
            if factors.contains_key(&other) {
                continue;
            }
            let x = edge_exponent(t, n, other)?;
            let mut f = factors[&n].clone();
            f.push((x, Sign::from_parity(e.sign > 0)));
            factors.insert(other, f);
            tree_edges.push(*e);
            queue.push_back(other);
        }
    }
    Ok((factors, tree_edges))
}

fn product(factors: &[(i64, Sign)], dp: &DeformParam) -> Result<RatFuncZ, Error> {
    let mut acc = RatFuncZ::one();
    for &(x, s) in factors {
        acc = acc.mul(&bracket(x, s, dp)?);
    }
    Ok(acc)
}

/// Solves `rho_nu = <(C(nu') - C(nu))/2>_{eps_nu eps_nu'} rho_nu'` from
/// `rho_{(0,0)} = 1` along a spanning tree, then requires every remaining edge
/// to close exactly. In the indecomposable case the merged node gets `rho_V`.
pub fn solve_coefficients(t: &TwistedTPG, dp: &DeformParam) -> Result<BTreeMap<NodeId, RatFuncZ>, Error> {
    let (factors, tree) = spanning_factors(t)?;
    let mut rho = BTreeMap::new();
    for (id, f) in &factors {
        rho.insert(*id, product(f, dp)?);
    }
    for e in &t.edges {
        if e.from == NodeId::V || e.to == NodeId::V || tree.iter().any(|x| std::ptr::eq(*x, e)) {
            continue;
        }
        let x = edge_exponent(t, e.from, e.to)?;
        let lhs = &rho[&e.to];
        let rhs = bracket(x, Sign::from_parity(e.sign > 0), dp)?.mul(&rho[&e.from]);
        if *lhs != rhs {
            return Err(Error::Inconsistent(format!(
                "loop through edge {}-{} does not close: {lhs} vs {rhs}",
                e.from, e.to
            )));
        }
    }
    if t.grid.has_vnode {
        rho.insert(NodeId::V, rho_v_n(t.grid.a, &t.sig, dp)?.rho_v);
    }
    Ok(rho)
}

/// Exponent of the `i`-th diagonal factor in the closed form: `2i - a - b - 2`,
/// i.e. `(C_{i-1,k} - C_{i,k+1}) / 2`.
pub fn diagonal_exponent(i: i64, a: i64, b: i64) -> i64 {
    2 * i - a - b - 2
}

/// Exponent of the `j`-th same-row factor: `m - n + 2j - a - b`.
pub fn row_exponent(j: i64, a: i64, b: i64, sig: &AlgebraSignature) -> i64 {
    sig.m as i64 - sig.n as i64 + 2 * j - a - b
}

/// `rho_{(c,k)} = prod_{j=1}^{c-k} <m-n+2j-a-b>_+ * prod_{i=1}^{c} <2i-a-b-2>_-`.
pub fn closed_form_coefficients(
    a: i64,
    b: i64,
    sig: &AlgebraSignature,
    dp: &DeformParam,
) -> Result<BTreeMap<NodeId, RatFuncZ>, Error> {
    let grid = decomposition_grid(a, b, sig)?;
    let mut out = BTreeMap::new();
    for n in grid.nodes.iter().filter(|n| !n.indecomposable) {
        let mut f: Vec<(i64, Sign)> = (1..=n.c - n.k).map(|j| (row_exponent(j, a, b, sig), Sign::Plus)).collect();
        f.extend((1..=n.c).map(|i| (diagonal_exponent(i, a, b), Sign::Minus)));
        out.insert(n.id(), product(&f, dp)?);
    }
    if grid.has_vnode {
        out.insert(NodeId::V, rho_v_n(a, sig, dp)?.rho_v);
    }
    Ok(out)
}

/// Coefficients of the indecomposable block.
#[derive(Clone, Debug, Serialize)]
pub struct RhoVN {
    pub rho_v: RatFuncZ,
    /// `(-1)^a q^{-a^2} (1-z)/(1+z) rho_V(z)`, the closed-form nilpotent coefficient.
    pub rho_n: RatFuncZ,
    /// `rho_N / rho_V`.
    pub ratio: RatFuncZ,
}

/// `rho_V(z) = (z - q^2)/(1 - z q^2) * rho_{(a-1,0)}(z)` and the closed-form `rho_N`.
pub fn rho_v_n(a: i64, sig: &AlgebraSignature, dp: &DeformParam) -> Result<RhoVN, Error> {
    if sig.m != sig.n {
        return Err(Error::Usage("the indecomposable block exists only for m = n".into()));
    }
    let q2 = dp.q_pow(2);
    let mut rho_v = RatFuncZ::linear(-&q2, Rat::one(), Rat::one(), -&q2);
    for j in 1..a {
        rho_v = rho_v.mul(&bracket(2 * j - 2 * a, Sign::Plus, dp)?);
    }
    for i in 1..a {
        rho_v = rho_v.mul(&bracket(diagonal_exponent(i, a, a), Sign::Minus, dp)?);
    }
    let sign = if a % 2 == 0 { Rat::one() } else { Rat::int(-1) };
    let pref = sign * dp.q_pow(-a * a);
    let shape = RatFuncZ::linear(Rat::one(), Rat::int(-1), Rat::one(), Rat::one());
    let ratio = shape.scale(&pref);
    Ok(RhoVN { rho_n: ratio.mul(&rho_v), rho_v, ratio })
}

/// Graphviz rendering with deterministic node order; the merged node is double-circled.
pub fn emit_dot(t: &TwistedTPG) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "graph ttpg_m{}_n{}_a{}_b{} {{\n  rankdir=LR;\n  node [shape=circle];\n",
        t.sig.m, t.sig.n, t.grid.a, t.grid.b
    ));
    let name = |id: NodeId| match id {
        NodeId::Grid(c, k) => format!("n{c}_{k}"),
        NodeId::V => "V".to_string(),
    };
    for n in t.grid.nodes.iter().filter(|n| !n.indecomposable) {
        let sign = if n.parity == 0 { "+" } else { "-" };
        s.push_str(&format!("  {} [label=\"{}\\n({},{}) {}\"];\n", name(n.id()), n.weight, n.c, n.k, sign));
    }
    if t.grid.has_vnode {
        let a = t.grid.a;
        let sign = if a % 2 == 0 { "+" } else { "-" };
        s.push_str(&format!(
            "  V [shape=doublecircle, label=\"V\\n({a},0)+({a},1) {sign}\"];\n"
        ));
    }
    for e in &t.edges {
        let style = if e.sign > 0 { "solid" } else { "dashed" };
        s.push_str(&format!("  {} -- {} [style={style}];\n", name(e.from), name(e.to)));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp() -> DeformParam {
        DeformParam::new(Rat::new(6, 5)).unwrap()
    }

    #[test]
    fn grid_a1_b2() {
        let sig = AlgebraSignature::new(2, 4).unwrap();
        let g = decomposition_grid(1, 2, &sig).unwrap();
        let ws: Vec<String> = g.nodes.iter().map(|n| n.weight.to_string()).collect();
        assert_eq!(ws, ["3d1", "1d1", "2d1+1d2"]);
        assert!(decomposition_grid(0, 1, &sig).is_err());
        assert!(decomposition_grid(2, 1, &sig).is_err());
    }

    #[test]
    fn edge_counts_a2() {
        let sig = AlgebraSignature::new(2, 4).unwrap();
        let t = build_extended_ttpg(&decomposition_grid(2, 2, &sig).unwrap(), &sig);
        assert_eq!(t.edges.iter().filter(|e| e.sign == 1).count(), 3);
        assert_eq!(t.edges.iter().filter(|e| e.sign == -1).count(), 3);
    }

    #[test]
    fn vector_case_coefficients() {
        let sig = AlgebraSignature::new(2, 4).unwrap();
        let d = dp();
        let t = build_extended_ttpg(&decomposition_grid(1, 1, &sig).unwrap(), &sig);
        let rho = solve_coefficients(&t, &d).unwrap();
        let m2 = bracket(-2, Sign::Minus, &d).unwrap();
        let p2 = bracket(-2, Sign::Plus, &d).unwrap();
        assert_eq!(rho[&NodeId::Grid(0, 0)], RatFuncZ::one());
        assert_eq!(rho[&NodeId::Grid(1, 1)], m2);
        assert_eq!(rho[&NodeId::Grid(1, 0)], p2.mul(&m2));
    }

    #[test]
    fn vnode_attachments() {
        let sig = AlgebraSignature::new(4, 4).unwrap();
        let g = decomposition_grid(2, 2, &sig).unwrap();
        let t = build_extended_ttpg(&g, &sig);
        let att: Vec<(NodeId, i64)> = t
            .edges
            .iter()
            .filter(|e| e.to == NodeId::V || e.from == NodeId::V)
            .map(|e| (if e.to == NodeId::V { e.from } else { e.to }, e.sign))
            .collect();
        assert_eq!(att, vec![(NodeId::Grid(1, 0), -1), (NodeId::Grid(2, 2), 1)]);
        assert_eq!(g.node(1, 0).unwrap().weight.to_string(), "2d1");
        assert_eq!(g.node(2, 2).unwrap().weight.to_string(), "2d1+2d2");
    }

    #[test]
    fn rho_v_a1() {
        let sig = AlgebraSignature::new(4, 4).unwrap();
        let d = dp();
        let r = rho_v_n(1, &sig, &d).unwrap();
        assert_eq!(r.rho_v.eval(&Rat::one()).unwrap(), Rat::one());
        assert!(r.rho_n.eval(&Rat::one()).unwrap().is_zero());
        assert_eq!(r.rho_v.eval(&Rat::zero()).unwrap(), -d.q_pow(2));
    }
}
