//! Assembly of the spectral R-matrix `Ř(z): V_a⊗V_b → V_b⊗V_a` from projectors
//! onto the irreducible components, the indecomposable block `(P_V, N)` when
//! `m = n`, and an independent direct solver of the intertwining equations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graded::{graded_permutation, GradedOp};
use crate::liealg::{casimir_eigenvalue, AlgebraSignature, Weight};
use crate::linalg::{axpy, canonicalize, inverse, is_zero_vec, SparseRref, Subspace};
use crate::reps::{
    cyclic_submodule, fuse_minimal, highest_weight_vectors, tensor_rep, FusionInfo, Representation,
    WeightedSubspace,
};
use crate::scalars::{DeformParam, Rat, RatFuncZ};
use crate::tpg::{self, Grid, NodeId};
use crate::Error;

/// The non-semisimple block of `V(lambda_a)⊗V(lambda_a)` for `m = n`.
#[derive(Clone, Debug)]
pub struct IndecomposableBlock {
    /// `V̄(delta_1 + delta_2)`, the unique maximal submodule of `V`.
    pub vbar: WeightedSubspace,
    /// `V = V̄ + span(xi)`.
    pub v: WeightedSubspace,
    /// The invariant vector spanning the trivial submodule, inside `V̄`.
    pub v0: Vec<Rat>,
    /// Spans `V` modulo `V̄`; reduced modulo `V̄` and canonicalized.
    pub xi: Vec<Rat>,
    pub weight0: Weight,
}

/// Projectors of `A⊗B` onto its components, with the matching intertwiners
/// `A⊗B → B⊗A` normalized hw-vector to hw-vector.
#[derive(Clone, Debug)]
pub struct ProjectorFamily {
    pub parities: Vec<u8>,
    pub components: BTreeMap<NodeId, GradedOp>,
    pub intertwiners: BTreeMap<NodeId, GradedOp>,
    pub p_v: Option<GradedOp>,
    pub n: Option<GradedOp>,
    pub block: Option<IndecomposableBlock>,
    /// Canonical hw vectors in `A⊗B` and `B⊗A` per node (for `V`: the `V̄` generator).
    pub hw_ab: BTreeMap<NodeId, Vec<Rat>>,
    pub hw_ba: BTreeMap<NodeId, Vec<Rat>>,
    pub ranks: BTreeMap<NodeId, usize>,
}

struct Piece {
    node: NodeId,
    vec: Vec<Rat>,
    partner: Vec<Rat>,
}

fn hw_by_weight(rep: &Representation) -> BTreeMap<Weight, Vec<Vec<Rat>>> {
    let mut out: BTreeMap<Weight, Vec<Vec<Rat>>> = BTreeMap::new();
    for h in highest_weight_vectors(rep) {
        out.entry(h.weight).or_default().push(h.vector);
    }
    out
}

fn unique_hw(map: &BTreeMap<Weight, Vec<Vec<Rat>>>, w: &Weight, what: &str) -> Result<Vec<Rat>, Error> {
    match map.get(w).map(Vec::as_slice) {
        Some([v]) => Ok(v.clone()),
        Some(vs) => Err(Error::Degenerate(format!("{} highest-weight vectors of weight {w} in {what}", vs.len()))),
        None => Err(Error::Degenerate(format!("no highest-weight vector of weight {w} in {what}"))),
    }
}

fn grid_for(a: i64, b: i64, sig: &AlgebraSignature) -> Result<Grid, Error> {
    tpg::decomposition_grid(a.min(b), a.max(b), sig)
}

/// Decomposes `ab = A⊗B` (finite part) into components with projectors, and
/// transports each component to `ba = B⊗A` by the intertwiner fixed on the
/// canonical highest-weight vectors.
pub fn projectors(ab: &Representation, ba: &Representation, grid: &Grid) -> Result<ProjectorFamily, Error> {
    let hab = hw_by_weight(ab);
    let hba = hw_by_weight(ba);
    let total: usize = hab.values().map(Vec::len).sum();
    if total != grid.nodes.len() {
        return Err(Error::Degenerate(format!(
            "{total} highest-weight vectors for {} grid nodes",
            grid.nodes.len()
        )));
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut hw_ab = BTreeMap::new();
    let mut hw_ba = BTreeMap::new();
    let mut vbar_data = None;
    for node in &grid.nodes {
        let (c, k) = (node.c, node.k);
        if node.indecomposable && k == 0 {
            continue;
        }
        let id = if node.indecomposable { NodeId::V } else { node.id() };
        let x = unique_hw(&hab, &node.weight, "the tensor product")?;
        let y = unique_hw(&hba, &node.weight, "the flipped tensor product")?;
        let sub = cyclic_submodule(ab, &node.weight, &x, Some((ba, &y)));
        for s in sub.values() {
            for (v, p) in s.basis().iter().zip(s.partners()) {
                pieces.push(Piece { node: id, vec: v.clone(), partner: p.clone() });
            }
        }
        hw_ab.insert(id, x);
        hw_ba.insert(id, y);
        if node.indecomposable {
            let w0 = grid.node(c, 0).expect("merged partner node").weight.clone();
            vbar_data = Some((sub, w0));
        }
    }
    let mut block = None;
    if let Some((vbar, w0)) = vbar_data {
        let v0 = unique_hw(&hab, &w0, "the tensor product")?;
        let b = find_block(ab, vbar, v0, w0)?;
        pieces.push(Piece { node: NodeId::V, vec: b.xi.clone(), partner: b.xi.clone() });
        block = Some(b);
    }
    if pieces.len() != ab.dim() {
        return Err(Error::Degenerate(format!(
            "component dimensions sum to {} instead of {}",
            pieces.len(),
            ab.dim()
        )));
    }

    // invert the adapted basis weight space by weight space
    let spaces = ab.weight_spaces();
    let mut by_weight: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
    for (j, p) in pieces.iter().enumerate() {
        let w = &ab.weights[p.vec.iter().position(|x| !x.is_zero()).expect("nonzero basis vector")];
        by_weight.entry(w).or_default().push(j);
    }
    let mut trip: BTreeMap<NodeId, Vec<(usize, usize, Rat)>> = BTreeMap::new();
    let mut trip_ba: BTreeMap<NodeId, Vec<(usize, usize, Rat)>> = BTreeMap::new();
    let mut n_trip = Vec::new();
    let mut ranks: BTreeMap<NodeId, usize> = BTreeMap::new();
    for (w, idx) in &spaces {
        let js = by_weight.get(w).cloned().unwrap_or_default();
        if js.len() != idx.len() {
            return Err(Error::Degenerate(format!("weight space {w}: {} component vectors for dimension {}", js.len(), idx.len())));
        }
        // B[r][j] = piece j at local coordinate r
        let bmat: Vec<Vec<Rat>> = idx.iter().map(|&r| js.iter().map(|&j| pieces[j].vec[r].clone()).collect()).collect();
        let binv = inverse(&bmat).map_err(|_| Error::Degenerate(format!("components overlap in weight space {w}")))?;
        for (jj, &j) in js.iter().enumerate() {
            let p = &pieces[j];
            *ranks.entry(p.node).or_default() += 1;
            let phi: Vec<(usize, &Rat)> = idx.iter().zip(&binv[jj]).filter(|(_, x)| !x.is_zero()).map(|(&c, x)| (c, x)).collect();
            let t = trip.entry(p.node).or_default();
            for (r, x) in p.vec.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (c, y) in &phi {
                    t.push((r, *c, x * *y));
                }
            }
            let t = trip_ba.entry(p.node).or_default();
            for (r, x) in p.partner.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (c, y) in &phi {
                    t.push((r, *c, x * *y));
                }
            }
            if let Some(b) = &block {
                if p.node == NodeId::V && p.vec == b.xi {
                    for (r, x) in b.v0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (c, y) in &phi {
                            n_trip.push((r, *c, x * *y));
                        }
                    }
                }
            }
        }
    }
    let par = &ab.parities;
    let mut components = BTreeMap::new();
    let mut intertwiners = BTreeMap::new();
    let mut p_v = None;
    for (id, t) in trip {
        let op = GradedOp::from_triples(par, par, t);
        let inter = GradedOp::from_triples(&ba.parities, par, trip_ba.remove(&id).unwrap_or_default());
        if id == NodeId::V {
            p_v = Some(op);
        } else {
            components.insert(id, op);
        }
        intertwiners.insert(id, inter);
    }
    let n = block.as_ref().map(|_| GradedOp::from_triples(par, par, n_trip));
    Ok(ProjectorFamily { parities: par.clone(), components, intertwiners, p_v, n, block, hw_ab, hw_ba, ranks })
}

/// Locates `xi`: the weight-`w0` vectors whose images under every finite
/// generator lie in `V̄` span `V̄_{w0}` plus exactly one more direction.
fn find_block(rep: &Representation, vbar: WeightedSubspace, v0: Vec<Rat>, w0: Weight) -> Result<IndecomposableBlock, Error> {
    let empty = Subspace::new(rep.dim());
    if !vbar.get(&w0).is_some_and(|s| s.contains(&v0)) {
        return Err(Error::Construction("the invariant vector does not lie in the maximal submodule".into()));
    }
    let idx = rep.weight_spaces().remove(&w0).unwrap_or_default();
    let mut rref = SparseRref::new(idx.len());
    for i in 1..rep.nodes() {
        for (op, shift) in [(&rep.e[i], rep.roots[i].clone()), (&rep.f[i], rep.roots[i].scale(&Rat::int(-1)))] {
            let target = vbar.get(&w0.add(&shift)).unwrap_or(&empty);
            // column k: op(u_k) reduced modulo V̄
            let cols: Vec<Vec<Rat>> = idx
                .iter()
                .map(|&k| {
                    let mut u = vec![Rat::zero(); rep.dim()];
                    u[k] = Rat::one();
                    let mut img = op.apply(&u);
                    target.reduce(&mut img, None);
                    img
                })
                .collect();
            for p in 0..rep.dim() {
                let eq: Vec<(usize, Rat)> =
                    cols.iter().enumerate().filter(|(_, c)| !c[p].is_zero()).map(|(k, c)| (k, c[p].clone())).collect();
                if !eq.is_empty() {
                    rref.push(eq);
                }
            }
        }
    }
    let base = vbar.get(&w0).cloned().unwrap_or_else(|| Subspace::new(rep.dim()));
    let mut quotient = Subspace::new(rep.dim());
    let mut xi = None;
    for small in rref.nullspace() {
        let mut v = vec![Rat::zero(); rep.dim()];
        for (k, x) in small.into_iter().enumerate() {
            v[idx[k]] = x;
        }
        base.reduce(&mut v, None);
        if is_zero_vec(&v) {
            continue;
        }
        canonicalize(&mut v);
        if quotient.insert(v.clone()) && xi.is_none() {
            xi = Some(v);
        }
    }
    if quotient.len() != 1 {
        return Err(Error::Construction(format!("quotient by the maximal submodule has dimension {}", quotient.len())));
    }
    let xi = xi.expect("one quotient direction");
    let mut v = vbar.clone();
    v.entry(w0.clone()).or_insert_with(|| Subspace::new(rep.dim())).insert(xi.clone());
    Ok(IndecomposableBlock { vbar, v, v0, xi, weight0: w0 })
}

/// The nilpotent invariant `N` with `N xi = v0`, `N V̄ = 0` and `N = 0` off the block.
pub fn nilpotent_invariant(fam: &ProjectorFamily) -> Option<&GradedOp> {
    fam.n.as_ref()
}

/// Index of the unique basis vector of the top weight `lambda_a + lambda_b`.
fn top_index(rep: &Representation) -> Result<usize, Error> {
    let spaces = rep.weight_spaces();
    match spaces.get(&rep.highest_weight).map(Vec::as_slice) {
        Some([i]) => Ok(*i),
        _ => Err(Error::Construction("top weight space is not one-dimensional".into())),
    }
}

/// Unknowns `X[r, c]` of a weight-preserving map `L → R`, with the equations
/// `X l_x = r_x X` for each pair of operators.
fn intertwiner_system(l: &Representation, r: &Representation, ops: &[(&GradedOp, &GradedOp)]) -> (SparseRref, Vec<(usize, usize)>) {
    let lw = l.weight_spaces();
    let rw = r.weight_spaces();
    let mut var: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut list = Vec::new();
    for (w, ridx) in &rw {
        if let Some(lidx) = lw.get(w) {
            for &i in ridx {
                for &c in lidx {
                    var.insert((i, c), list.len());
                    list.push((i, c));
                }
            }
        }
    }
    let mut rref = SparseRref::new(list.len());
    for (lop, rop) in ops {
        let mut lcols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); l.dim()];
        for (k, c, v) in lop.triples() {
            lcols[c].push((k, v.clone()));
        }
        // (X L - R X)[i, c] = sum_k X[i,k] L[k,c] - sum_k R[i,k] X[k,c]
        for i in 0..r.dim() {
            for (c, lc) in lcols.iter().enumerate() {
                let mut eq: Vec<(usize, Rat)> = Vec::new();
                for (k, v) in lc {
                    if let Some(&x) = var.get(&(i, *k)) {
                        eq.push((x, v.clone()));
                    }
                }
                for (k, v) in rop.row(i) {
                    if let Some(&x) = var.get(&(*k, c)) {
                        eq.push((x, -v));
                    }
                }
                if !eq.is_empty() {
                    rref.push(eq);
                }
            }
        }
    }
    (rref, list)
}

/// Solves `X Δ^{AB}_z(x) = Δ^{BA}_z(x) X` for all finite generators and `e_0`
/// directly, as one linear system. Normalized so that the top component maps
/// its canonical vector to the canonical vector (coefficient of the `(0,0)` node is 1).
pub fn solve_jimbo_direct(a: &Representation, b: &Representation, z0: &Rat) -> Result<GradedOp, Error> {
    let one = Rat::one();
    let l = tensor_rep(a, b, z0, &one);
    let r = tensor_rep(b, a, &one, z0);
    let mut ops: Vec<(&GradedOp, &GradedOp)> = vec![(&l.e[0], &r.e[0])];
    for i in 1..l.nodes() {
        ops.push((&l.e[i], &r.e[i]));
        ops.push((&l.f[i], &r.f[i]));
    }
    let (rref, list) = intertwiner_system(&l, &r, &ops);
    let ns = rref.nullspace();
    if ns.len() != 1 {
        return Err(Error::Degenerate(format!("Jimbo solution space has dimension {} at z = {z0}", ns.len())));
    }
    let x = GradedOp::from_triples(
        &r.parities,
        &l.parities,
        list.iter().zip(&ns[0]).filter(|(_, v)| !v.is_zero()).map(|(&(i, c), v)| (i, c, v.clone())),
    );
    let top = x.get(top_index(&r)?, top_index(&l)?);
    if top.is_zero() {
        return Err(Error::Degenerate(format!("top component is annihilated at z = {z0}")));
    }
    Ok(x.scale(&top.recip()))
}

/// Rank of an operator over the rationals.
pub fn op_rank(op: &GradedOp) -> usize {
    let mut r = SparseRref::new(op.cols());
    for i in 0..op.rows() {
        r.push(op.row(i).iter().cloned());
    }
    r.rank()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub node: NodeId,
    pub rho: RatFuncZ,
    #[serde(rename = "P")]
    pub op: GradedOp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMeta {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub t: Rat,
    pub q: Rat,
    pub parities_a: Vec<u8>,
    pub parities_b: Vec<u8>,
    /// Node scales of the intertwiners fixed against the direct solver (all 1 when a = b).
    pub node_scales: BTreeMap<NodeId, Rat>,
    /// Spectral value used for the scale solve.
    pub oracle_z: Rat,
    /// Solved constant `c` in `rho_N = c (1-z)/(1+z) rho_V`.
    pub n_constant: Option<Rat>,
    /// The closed-form constant `(-1)^a q^{-a^2}`, for comparison.
    pub n_constant_formula: Option<Rat>,
    /// `rho_V(0)` of the assembled matrix and the closed form `eps_V q^{-C_{lambda_a}}`.
    pub rho_v_at_zero: Option<Rat>,
    pub rho_v_at_zero_formula: Option<Rat>,
    pub fusion: Vec<FusionInfo>,
    /// Set by the command line when it swapped `a > b` into order.
    #[serde(default)]
    pub swapped: bool,
}

/// `Ř(z) = Σ rho_nu(z) P_nu (+ rho_V(z) P_V + rho_N(z) N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralRMatrix {
    pub meta: RMeta,
    pub terms: Vec<Term>,
    #[serde(rename = "V")]
    pub v: Option<Term>,
    #[serde(rename = "N")]
    pub n: Option<Term>,
}

impl SpectralRMatrix {
    pub fn all_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().chain(self.v.as_ref()).chain(self.n.as_ref())
    }

    pub fn eval(&self, z: &Rat) -> Result<GradedOp, Error> {
        let first = &self.terms[0].op;
        let mut acc = GradedOp::zeros(&first.parity_row, &first.parity_col);
        for t in self.all_terms() {
            let c = t.rho.eval(z).map_err(|_| Error::Pole(format!("coefficient of node {} has a pole at z = {z}: {}", t.node, t.rho)))?;
            acc = acc.lincomb(&Rat::one(), &t.op, &c);
        }
        Ok(acc)
    }

    /// Non-checked form `R(z) = P Ř(z)` on `V_a⊗V_b`.
    pub fn eval_r(&self, z: &Rat) -> Result<GradedOp, Error> {
        let p = graded_permutation(&self.meta.parities_b, &self.meta.parities_a);
        Ok(p.mul(&self.eval(z)?))
    }
}

/// `dim V(lambda_a) = sum_j C(m, j) C(n + a - j - 1, a - j)`: the graded
/// antisymmetric power of `C^{m|n}`, symmetric in the odd coordinates.
pub fn minimal_dim(a: i64, sig: &AlgebraSignature) -> usize {
    let binom = |n: i64, k: i64| -> usize {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
    };
    let (m, n) = (sig.m as i64, sig.n as i64);
    (0..=a).map(|j| binom(m, j) * binom(n + a - j - 1, a - j)).sum()
}

/// Everything built along the way, kept for verification.
pub struct Assembled {
    pub rmatrix: SpectralRMatrix,
    pub va: Representation,
    pub vb: Representation,
    pub ab: Representation,
    pub ba: Representation,
    pub family: ProjectorFamily,
}

const ORACLE_POINTS: [(i64, i64); 4] = [(13, 7), (-11, 5), (17, 3), (-23, 9)];

/// Builds `Ř(z)` for `V(lambda_a)⊗V(lambda_b)` (either order).
pub fn assemble(a: i64, b: i64, sig: &AlgebraSignature, dp: &DeformParam) -> Result<SpectralRMatrix, Error> {
    Ok(assemble_full(a, b, sig, dp)?.rmatrix)
}

pub fn assemble_full(a: i64, b: i64, sig: &AlgebraSignature, dp: &DeformParam) -> Result<Assembled, Error> {
    let va = fuse_minimal(a, sig, dp)?;
    let vb = if a == b { va.clone() } else { fuse_minimal(b, sig, dp)? };
    assemble_from(a, b, va, vb)
}

pub fn assemble_from(a: i64, b: i64, va: Representation, vb: Representation) -> Result<Assembled, Error> {
    let sig = va.sig;
    let dp = va.dp.clone();
    let grid = grid_for(a, b, &sig)?;
    let graph = tpg::build_extended_ttpg(&grid, &sig);
    let rho = tpg::solve_coefficients(&graph, &dp)?;
    let one = Rat::one();
    let ab = tensor_rep(&va, &vb, &one, &one);
    let ba = tensor_rep(&vb, &va, &one, &one);
    let family = projectors(&ab, &ba, &grid)?;

    // one generic point for the scale solve, skipping poles and degenerate points
    let mut solved = None;
    for (p, d) in ORACLE_POINTS {
        let z0 = Rat::new(p, d);
        if rho.values().any(|f| f.eval(&z0).map_or(true, |v| v.is_zero())) {
            continue;
        }
        match solve_jimbo_direct(&va, &vb, &z0) {
            Ok(x) => {
                solved = Some((z0, x));
                break;
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let (z0, x) = solved.ok_or_else(|| Error::Degenerate("no generic point for the scale solve".into()))?;

    let mut node_scales = BTreeMap::new();
    let mut terms = Vec::new();
    let mut residual = x.clone();
    for (id, p) in &family.intertwiners {
        if *id == NodeId::V {
            continue;
        }
        let r0 = rho[id].eval(&z0)?;
        let s = if a == b {
            Rat::one()
        } else {
            let lam = component_scalar(&x, &family.hw_ab[id], &family.hw_ba[id])?;
            lam / &r0
        };
        let op = p.scale(&s);
        residual = residual.lincomb(&Rat::one(), &op, &-&r0);
        node_scales.insert(*id, s);
        terms.push(Term { node: *id, rho: rho[id].clone(), op });
    }

    let mut v_term = None;
    let mut n_term = None;
    let (mut n_constant, mut n_formula, mut v0, mut v0_formula) = (None, None, None, None);
    if let (Some(pv), Some(n)) = (&family.p_v, &family.n) {
        let rv = tpg::rho_v_n(a, &sig, &dp)?;
        residual = residual.lincomb(&Rat::one(), pv, &-&rv.rho_v.eval(&z0)?);
        let kappa = n_multiple(&residual, n)
            .ok_or_else(|| Error::Construction(format!("direct solution differs from the assembled block at z = {z0}")))?;
        // rho_N = c (1-z)/(1+z) rho_V
        let shape = RatFuncZ::linear(Rat::one(), Rat::int(-1), Rat::one(), Rat::one()).mul(&rv.rho_v);
        let c = kappa / shape.eval(&z0)?;
        n_constant = Some(c.clone());
        n_formula = rv.ratio.eval(&Rat::zero()).ok();
        v0 = Some(rv.rho_v.eval(&Rat::zero())?);
        let cas = casimir_eigenvalue(&sig.delta(1).scale(&Rat::int(a)), &sig);
        let eps = if a % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        v0_formula = num::ToPrimitive::to_i64(cas.numer())
            .filter(|_| num::One::is_one(cas.denom()))
            .map(|cv| eps * dp.q_pow(-cv));
        v_term = Some(Term { node: NodeId::V, rho: rv.rho_v.clone(), op: pv.clone() });
        n_term = Some(Term { node: NodeId::V, rho: shape.scale(&c), op: n.clone() });
        node_scales.insert(NodeId::V, Rat::one());
    } else if !residual.is_zero() {
        return Err(Error::Construction(format!("assembled matrix disagrees with the direct solution at z = {z0}")));
    }

    let fusion = [&va, &vb].iter().filter_map(|r| r.fusion.clone()).collect();
    let meta = RMeta {
        m: sig.m,
        n: sig.n,
        a,
        b,
        t: dp.t().clone(),
        q: dp.q().clone(),
        parities_a: va.parities.clone(),
        parities_b: vb.parities.clone(),
        node_scales,
        oracle_z: z0,
        n_constant,
        n_constant_formula: n_formula,
        rho_v_at_zero: v0,
        rho_v_at_zero_formula: v0_formula,
        fusion,
        swapped: false,
    };
    let rmatrix = SpectralRMatrix { meta, terms, v: v_term, n: n_term };
    Ok(Assembled { rmatrix, va, vb, ab, ba, family })
}

/// `lambda` with `x hw_ab = lambda hw_ba`.
fn component_scalar(x: &GradedOp, hw_ab: &[Rat], hw_ba: &[Rat]) -> Result<Rat, Error> {
    let y = x.apply(hw_ab);
    let p = hw_ba.iter().position(|v| !v.is_zero()).expect("nonzero hw vector");
    let lam = &y[p] / &hw_ba[p];
    let mut d = y.clone();
    axpy(&mut d, &-&lam, hw_ba);
    if !is_zero_vec(&d) {
        return Err(Error::Construction("direct solution does not map a highest-weight vector to its partner".into()));
    }
    Ok(lam)
}

/// `kappa` with `y = kappa n`, if it exists.
fn n_multiple(y: &GradedOp, n: &GradedOp) -> Option<Rat> {
    let (r, c, v) = n.triples().next()?;
    let kappa = &y.get(r, c) / v;
    (y.sub(&n.scale(&kappa)).is_zero()).then_some(kappa)
}

/// Coefficient `kappa(z)` of `N` in the direct solution at `z`, after removing
/// the irreducible components and `rho_V P_V`; `None` if the remainder is not a
/// multiple of `N`.
pub fn solve_n_coefficient(asm: &Assembled, z: &Rat) -> Result<Option<Rat>, Error> {
    let (Some(pv), Some(n)) = (&asm.family.p_v, &asm.family.n) else { return Ok(None) };
    let x = solve_jimbo_direct(&asm.va, &asm.vb, z)?;
    let mut y = x;
    for t in &asm.rmatrix.terms {
        y = y.lincomb(&Rat::one(), &t.op, &-&t.rho.eval(z)?);
    }
    let rv = asm.rmatrix.v.as_ref().expect("V term").rho.eval(z)?;
    y = y.lincomb(&Rat::one(), pv, &-rv);
    Ok(n_multiple(&y, n))
}
