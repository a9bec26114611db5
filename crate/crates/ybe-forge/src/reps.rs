//! Weight representations of the twisted quantum affine superalgebra on which the
//! Chevalley generators `e_i, f_i` (i = 0..=s) act by exact matrices and
//! `q^{h_i/2}` acts diagonally by `t^{(alpha_i, wt)}`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graded::{graded_commutator, tensor_parities, GradedOp};
use crate::liealg::{form_int, osp_generators, weight_form, AlgebraSignature, Weight};
use crate::linalg::{canonicalize, Subspace, SparseRref};
use crate::scalars::{DeformParam, Rat};
use crate::{tpg, Error};

/// How a fused module was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionInfo {
    /// Spectral value at which the top component was invariant.
    pub z0: Rat,
    /// Candidates tried, in order.
    pub candidates: Vec<Rat>,
    /// The affine generators were rescaled by `1/sqrt(z0)` (e0) and `sqrt(z0)` (f0).
    pub centering: Rat,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub sig: AlgebraSignature,
    pub dp: DeformParam,
    pub parities: Vec<u8>,
    pub weights: Vec<Weight>,
    pub roots: Vec<Weight>,
    pub e: Vec<GradedOp>,
    pub f: Vec<GradedOp>,
    pub highest_weight: Weight,
    pub label: String,
    pub fusion: Option<FusionInfo>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Number of Chevalley nodes including the affine node 0.
    pub fn nodes(&self) -> usize {
        self.roots.len()
    }

    /// `q^{h_i/2}` raised to `power`: `diag(t^{power * (alpha_i, wt)})`.
    pub fn k_pow(&self, i: usize, power: i64) -> GradedOp {
        let d = self
            .weights
            .iter()
            .map(|w| self.dp.t_pow(power * form_int(&self.roots[i], w)))
            .collect();
        GradedOp::diagonal(&self.parities, d)
    }

    /// `h_i = diag((alpha_i, wt))`.
    pub fn h(&self, i: usize) -> GradedOp {
        let d = self.weights.iter().map(|w| weight_form(&self.roots[i], w)).collect();
        GradedOp::diagonal(&self.parities, d)
    }

    pub fn root_parity(&self, i: usize) -> u8 {
        self.roots[i].parity()
    }

    /// Indices of basis vectors grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// Looks up a generator by CLI label such as `e0`, `F3`, `h2`, `K1`.
    pub fn generator(&self, label: &str) -> Result<GradedOp, Error> {
        let bad = || Error::Usage(format!("unknown generator label {label:?}"));
        let (kind, idx) = label.split_at(1);
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i >= self.nodes() {
            return Err(bad());
        }
        match kind {
            "e" | "E" => Ok(self.e[i].clone()),
            "f" | "F" => Ok(self.f[i].clone()),
            "h" | "H" => Ok(self.h(i)),
            "k" | "K" => Ok(self.k_pow(i, 1)),
            _ => Err(bad()),
        }
    }
}

/// The vector module `V(lambda_1)` of dimension `m + n`, undeformed: classical
/// generator matrices with only the Cartan exponentials depending on `q`.
pub fn vector_rep(sig: &AlgebraSignature, dp: &DeformParam) -> Representation {
    let ch = osp_generators(sig);
    Representation {
        sig: *sig,
        dp: dp.clone(),
        parities: sig.parities(),
        weights: (0..sig.dim()).map(|p| sig.basis_weight(p)).collect(),
        roots: ch.roots,
        e: ch.e,
        f: ch.f,
        highest_weight: sig.delta(1),
        label: "lambda_1".into(),
        fusion: None,
    }
}

/// `Delta` with `D_{zl}` on the left factor and `D_{zr}` on the right:
/// `e_i -> q^{-h_i/2}⊗e_i + e_i⊗q^{h_i/2}`, the affine terms scaled by the `z`'s.
pub fn tensor_rep(a: &Representation, b: &Representation, zl: &Rat, zr: &Rat) -> Representation {
    assert_eq!(a.sig, b.sig, "tensor of representations of different algebras");
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..a.nodes() {
        let kai = a.k_pow(i, -1);
        let kb = b.k_pow(i, 1);
        let (sl, sr) = if i == 0 { (zl.clone(), zr.clone()) } else { (Rat::one(), Rat::one()) };
        let left = kai.tensor(&b.e[i]).scale(&sr);
        let right = a.e[i].tensor(&kb).scale(&sl);
        e.push(left.add(&right));
        let left = kai.tensor(&b.f[i]).scale(&sr.recip());
        let right = a.f[i].tensor(&kb).scale(&sl.recip());
        f.push(left.add(&right));
    }
    Representation {
        sig: a.sig,
        dp: a.dp.clone(),
        parities: tensor_parities(&a.parities, &b.parities),
        weights: a.weights.iter().flat_map(|x| b.weights.iter().map(move |y| x.add(y))).collect(),
        roots: a.roots.clone(),
        e,
        f,
        highest_weight: a.highest_weight.add(&b.highest_weight),
        label: format!("{}x{}", a.label, b.label),
        fusion: None,
    }
}

/// `Delta^z_{AB} = (D_z ⊗ 1) Delta`.
pub fn coproduct_rep(a: &Representation, b: &Representation, z: &Rat) -> Representation {
    tensor_rep(a, b, z, &Rat::one())
}

fn q_int(x: &Rat, n: i64) -> Rat {
    (x.pow(n) - x.pow(-n)) / (x - &x.recip())
}

fn q_binom(x: &Rat, n: i64, k: i64) -> Rat {
    let fact = |m: i64| (1..=m).fold(Rat::one(), |acc, j| acc * q_int(x, j));
    fact(n) / (fact(k) * fact(n - k))
}

fn power(op: &GradedOp, k: usize) -> GradedOp {
    let mut out = GradedOp::identity(&op.parity_col);
    for _ in 0..k {
        out = out.mul(op);
    }
    out
}

/// Residual of the Serre-type relation between `x_i` and `x_j` (both raising or
/// both lowering), or `None` when no relation is imposed for the pair.
fn serre_residual(rep: &Representation, xi: &GradedOp, xj: &GradedOp, i: usize, j: usize) -> Option<GradedOp> {
    let ai = &rep.roots[i];
    let aj = &rep.roots[j];
    let aii = form_int(ai, ai);
    let aij = form_int(ai, aj);
    let pi = ai.parity();
    if aii == 0 {
        // odd isotropic: only the graded commutator for orthogonal pairs
        if aij != 0 {
            return None;
        }
        return Some(graded_commutator(xi, xj).expect("homogeneous"));
    }
    if 2 * aij % aii != 0 {
        return None;
    }
    let n = 1 - 2 * aij / aii;
    if n < 1 {
        return None;
    }
    if pi == 1 {
        // odd non-isotropic: ad-power with super q-binomials
        let q = rep.dp.q().clone();
        return match n {
            1 => Some(graded_commutator(xi, xj).expect("homogeneous")),
            3 => {
                let c = &q + &q.recip() - Rat::one();
                let e2 = xi.mul(xi);
                let e3 = e2.mul(xi);
                let t1 = e3.mul(xj);
                let t2 = e2.mul(xj).mul(xi).add(&xi.mul(xj).mul(&e2));
                let t3 = xj.mul(&e3);
                Some(t1.lincomb(&Rat::one(), &t2, &-c).add(&t3))
            }
            _ => None,
        };
    }
    let x = rep.dp.t_pow(aii);
    let mut acc = GradedOp::zeros(&xi.parity_row, &xi.parity_col);
    for k in 0..=n {
        let term = power(xi, (n - k) as usize).mul(xj).mul(&power(xi, k as usize));
        let c = q_binom(&x, n, k) * Rat::int(if k % 2 == 0 { 1 } else { -1 });
        acc = acc.lincomb(&Rat::one(), &term, &c);
    }
    Some(acc)
}

/// Checks the defining relations; returns a description of every failure.
pub fn check_relations(rep: &Representation) -> Vec<String> {
    let mut bad = Vec::new();
    let ns = rep.nodes();
    let q = rep.dp.q().clone();
    let denom = &q - &q.recip();
    for i in 0..ns {
        let ki = rep.k_pow(i, 1);
        let kii = rep.k_pow(i, -1);
        for j in 0..ns {
            let a = form_int(&rep.roots[i], &rep.roots[j]);
            let lhs = ki.mul(&rep.e[j]).mul(&kii);
            if lhs != rep.e[j].scale(&rep.dp.t_pow(a)) {
                bad.push(format!("K{i} e{j} K{i}^-1"));
            }
            let lhs = ki.mul(&rep.f[j]).mul(&kii);
            if lhs != rep.f[j].scale(&rep.dp.t_pow(-a)) {
                bad.push(format!("K{i} f{j} K{i}^-1"));
            }
            let c = match graded_commutator(&rep.e[i], &rep.f[j]) {
                Ok(c) => c,
                Err(_) => {
                    bad.push(format!("e{i}/f{j} not homogeneous"));
                    continue;
                }
            };
            let rhs = if i == j {
                rep.k_pow(i, 2).sub(&rep.k_pow(i, -2)).scale(&denom.recip())
            } else {
                GradedOp::zeros(&rep.parities, &rep.parities)
            };
            if c != rhs {
                bad.push(format!("[e{i}, f{j}]"));
            }
        }
        if form_int(&rep.roots[i], &rep.roots[i]) == 0 {
            if !rep.e[i].mul(&rep.e[i]).is_zero() {
                bad.push(format!("e{i}^2"));
            }
            if !rep.f[i].mul(&rep.f[i]).is_zero() {
                bad.push(format!("f{i}^2"));
            }
        }
        for j in 0..ns {
            if i == j {
                continue;
            }
            if let Some(r) = serre_residual(rep, &rep.e[i], &rep.e[j], i, j) {
                if !r.is_zero() {
                    bad.push(format!("serre e{i} e{j}"));
                }
            }
            if let Some(r) = serre_residual(rep, &rep.f[i], &rep.f[j], i, j) {
                if !r.is_zero() {
                    bad.push(format!("serre f{i} f{j}"));
                }
            }
        }
    }
    bad
}

/// Simultaneous eigenspaces of the Cartan action: weight -> basis indices.
pub fn weight_decomposition(rep: &Representation) -> BTreeMap<Weight, Vec<usize>> {
    rep.weight_spaces()
}

/// A highest-weight vector for the finite part (`e_1..e_s`).
#[derive(Clone, Debug)]
pub struct HwVector {
    pub weight: Weight,
    pub vector: Vec<Rat>,
    pub parity: u8,
}

/// Basis of the joint kernel of `e_1..e_s`, weight by weight, heaviest weights
/// first; each vector canonicalized (first nonzero coordinate 1).
pub fn highest_weight_vectors(rep: &Representation) -> Vec<HwVector> {
    let spaces = rep.weight_spaces();
    let mut out = Vec::new();
    for (w, idx) in &spaces {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut rref = SparseRref::new(idx.len());
        for i in 1..rep.nodes() {
            let ei = &rep.e[i];
            for r in 0..rep.dim() {
                let eq: Vec<(usize, Rat)> = ei
                    .row(r)
                    .iter()
                    .filter_map(|(c, v)| pos.get(c).map(|&k| (k, v.clone())))
                    .collect();
                if !eq.is_empty() {
                    rref.push(eq);
                }
            }
        }
        for small in rref.nullspace() {
            let mut v = vec![Rat::zero(); rep.dim()];
            for (k, x) in small.into_iter().enumerate() {
                v[idx[k]] = x;
            }
            canonicalize(&mut v);
            out.push(HwVector { weight: w.clone(), parity: w.parity(), vector: v });
        }
    }
    out.sort_by(|a, b| b.weight.order_key().cmp(&a.weight.order_key()));
    out
}

/// A submodule stored weight space by weight space.
pub type WeightedSubspace = BTreeMap<Weight, Subspace>;

pub fn subspace_dim(s: &WeightedSubspace) -> usize {
    s.values().map(Subspace::len).sum()
}

/// Submodule generated from `seed` (of weight `w`) under `f_1..f_s`. If a partner
/// representation and partner seed are given, every basis vector carries the
/// image of the same lowering word applied to the partner seed.
pub fn cyclic_submodule(
    rep: &Representation,
    w: &Weight,
    seed: &[Rat],
    partner: Option<(&Representation, &[Rat])>,
) -> WeightedSubspace {
    let mut out: WeightedSubspace = BTreeMap::new();
    let mut queue = VecDeque::new();
    let p0 = partner.map(|(_, v)| v.to_vec()).unwrap_or_default();
    let sub = out.entry(w.clone()).or_insert_with(|| Subspace::new(rep.dim()));
    if sub.insert_pair(seed.to_vec(), p0) {
        queue.push_back((w.clone(), sub.basis().last().unwrap().clone(), sub.partners().last().unwrap().clone()));
    }
    while let Some((wt, v, pv)) = queue.pop_front() {
        for i in 1..rep.nodes() {
            let u = rep.f[i].apply(&v);
            if u.iter().all(Rat::is_zero) {
                continue;
            }
            let pu = match partner {
                Some((prep, _)) => prep.f[i].apply(&pv),
                None => Vec::new(),
            };
            let nw = wt.sub(&rep.roots[i]);
            let sub = out.entry(nw.clone()).or_insert_with(|| Subspace::new(rep.dim()));
            if sub.insert_pair(u, pu) {
                queue.push_back((nw, sub.basis().last().unwrap().clone(), sub.partners().last().unwrap().clone()));
            }
        }
    }
    out.retain(|_, s| !s.is_empty());
    out
}

/// Compresses `op` to the invariant subspace `sub` (echelon coordinates);
/// `None` if `op` does not preserve it.
fn compress(op: &GradedOp, sub: &[(Weight, Vec<Rat>, usize)], index: &BTreeMap<usize, usize>) -> Option<Vec<Vec<(usize, Rat)>>> {
    // column j of the compressed matrix = coordinates of op * b_j
    let n = sub.len();
    let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
    for (j, (_, b, _)) in sub.iter().enumerate() {
        let img = op.apply(b);
        let mut recon = vec![Rat::zero(); img.len()];
        for (pos, x) in img.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(&k) = index.get(&pos) {
                rows[k].push((j, x.clone()));
                crate::linalg::axpy(&mut recon, x, &sub[k].1);
            }
        }
        if recon != img {
            return None;
        }
    }
    Some(rows)
}

/// Restriction of a representation to an invariant subspace given weight space by
/// weight space in reduced echelon form. Affine generators are scaled by `c0`
/// (`e_0`) and `1/c0` (`f_0`). Fails if the subspace is not invariant.
pub fn restrict(rep: &Representation, sub: &WeightedSubspace, c0: &Rat) -> Option<Representation> {
    restrict_impl(rep, sub, Some(c0))
}

/// Restriction to a subspace invariant under the finite part only; the affine
/// generators of the result are zero.
pub fn restrict_finite(rep: &Representation, sub: &WeightedSubspace) -> Option<Representation> {
    restrict_impl(rep, sub, None)
}

fn restrict_impl(rep: &Representation, sub: &WeightedSubspace, c0: Option<&Rat>) -> Option<Representation> {
    let mut keys: Vec<&Weight> = sub.keys().collect();
    keys.sort_by(|a, b| b.order_key().cmp(&a.order_key()));
    let mut basis: Vec<(Weight, Vec<Rat>, usize)> = Vec::new();
    for w in keys {
        let s = &sub[w];
        for (b, &p) in s.basis().iter().zip(s.pivots()) {
            basis.push((w.clone(), b.clone(), p));
        }
    }
    let index: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(k, (_, _, p))| (*p, k)).collect();
    let parities: Vec<u8> = basis.iter().map(|(w, _, _)| w.parity()).collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..rep.nodes() {
        let se = match (i, c0) {
            (0, Some(c)) => c.clone(),
            (0, None) => {
                e.push(GradedOp::zeros(&parities, &parities));
                f.push(GradedOp::zeros(&parities, &parities));
                continue;
            }
            _ => Rat::one(),
        };
        let re = compress(&rep.e[i], &basis, &index)?;
        let rf = compress(&rep.f[i], &basis, &index)?;
        e.push(GradedOp::from_rows(&parities, &parities, re).scale(&se));
        f.push(GradedOp::from_rows(&parities, &parities, rf).scale(&se.recip()));
    }
    Some(Representation {
        sig: rep.sig,
        dp: rep.dp.clone(),
        parities,
        weights: basis.iter().map(|(w, _, _)| w.clone()).collect(),
        roots: rep.roots.clone(),
        e,
        f,
        highest_weight: rep.highest_weight.clone(),
        label: rep.label.clone(),
        fusion: None,
    })
}

/// Fusion-point candidates from the coefficient functions of
/// `V(lambda_1) ⊗ V(lambda_{a-1})`: zeros first, then poles, first occurrence order.
pub fn fusion_candidates(a: i64, sig: &AlgebraSignature, dp: &DeformParam) -> Result<Vec<Rat>, Error> {
    let grid = tpg::decomposition_grid(1, a - 1, sig)?;
    let mut factors = tpg::coefficient_factors(&grid, sig);
    if grid.has_vnode {
        // rho_V carries one extra factor <-2>_- beyond its neighbour (a-1, 0)
        factors.insert(tpg::NodeId::V, vec![(-2, crate::scalars::Sign::Minus)]);
    }
    let mut zeros = Vec::new();
    let mut poles = Vec::new();
    for fs in factors.values() {
        for &(x, s) in fs {
            if x == 0 {
                continue;
            }
            // <x>_s = (1 + s z q^x)/(z + s q^x)
            let sv = Rat::int(s.value());
            zeros.push(-(&sv * &dp.q_pow(-x)));
            poles.push(-(&sv * &dp.q_pow(x)));
        }
    }
    let mut out: Vec<Rat> = Vec::new();
    for z in zeros.into_iter().chain(poles) {
        if !out.contains(&z) {
            out.push(z);
        }
    }
    Ok(out)
}

/// `V(lambda_a)` by fusion inside `V(lambda_1) ⊗ V(lambda_{a-1})`.
///
/// The top component (generated from the weight `a delta_1` vector under the
/// finite lowering operators) is invariant under `Delta_{z0}` for exactly one
/// fusion candidate `z0`; the affine generators are compressed there and
/// centred by `D_{1/sqrt(z0)}`.
pub fn fuse_minimal(a: i64, sig: &AlgebraSignature, dp: &DeformParam) -> Result<Representation, Error> {
    let v1 = vector_rep(sig, dp);
    if a <= 1 {
        return Ok(v1);
    }
    let prev = fuse_minimal(a - 1, sig, dp)?;
    let top = sig.delta(1).scale(&Rat::int(a));
    let candidates = fusion_candidates(a, sig, dp)?;
    let base = coproduct_rep(&v1, &prev, &Rat::one());
    let hw = highest_weight_vectors(&base)
        .into_iter()
        .find(|h| h.weight == top)
        .ok_or_else(|| Error::Construction(format!("no highest-weight vector of weight {top}")))?;
    let sub = cyclic_submodule(&base, &top, &hw.vector, None);
    for z0 in &candidates {
        let trial = coproduct_rep(&v1, &prev, z0);
        let Some(c) = z0.sqrt().map(|s| s.recip()) else { continue };
        if let Some(mut rep) = restrict(&trial, &sub, &c) {
            rep.highest_weight = top.clone();
            rep.label = format!("lambda_{a}");
            rep.fusion = Some(FusionInfo { z0: z0.clone(), candidates: candidates.clone(), centering: c });
            return Ok(rep);
        }
    }
    Err(Error::Construction(format!(
        "fusion point search failed for lambda_{a}: no candidate among {candidates:?} leaves the top component invariant"
    )))
}

/// Dimension of the commutant of the finite part (`e_i, f_i`, i >= 1) among
/// weight-preserving operators.
pub fn commutant_dimension(rep: &Representation) -> usize {
    let spaces = rep.weight_spaces();
    // unknowns X[r, c] with wt(r) = wt(c)
    let mut var: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for idx in spaces.values() {
        for &r in idx {
            for &c in idx {
                let n = var.len();
                var.insert((r, c), n);
            }
        }
    }
    let mut rref = SparseRref::new(var.len());
    let ops: Vec<&GradedOp> = (1..rep.nodes()).flat_map(|i| [&rep.e[i], &rep.f[i]]).collect();
    let cols_of = |op: &GradedOp| {
        let mut t: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); op.cols()];
        for (r, c, v) in op.triples() {
            t[c].push((r, v.clone()));
        }
        t
    };
    for op in ops {
        let opt = cols_of(op);
        // (X A - A X)[r, c] = sum_k X[r,k] A[k,c] - sum_k A[r,k] X[k,c]
        for r in 0..rep.dim() {
            for c in 0..rep.dim() {
                let mut eq: Vec<(usize, Rat)> = Vec::new();
                for (k, a) in &opt[c] {
                    if let Some(&x) = var.get(&(r, *k)) {
                        eq.push((x, a.clone()));
                    }
                }
                for (k, a) in op.row(r) {
                    if let Some(&x) = var.get(&(*k, c)) {
                        eq.push((x, -a));
                    }
                }
                if !eq.is_empty() {
                    rref.push(eq);
                }
            }
        }
    }
    var.len() - rref.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp() -> DeformParam {
        DeformParam::new(Rat::new(6, 5)).unwrap()
    }

    #[test]
    fn vector_rep_relations() {
        for (m, n) in [(1, 4), (2, 4), (3, 4), (4, 4), (2, 6), (4, 6), (5, 6)] {
            let sig = AlgebraSignature::new(m, n).unwrap();
            let v = vector_rep(&sig, &dp());
            assert_eq!(v.dim(), m + n);
            let bad = check_relations(&v);
            assert!(bad.is_empty(), "({m},{n}): {bad:?}");
        }
    }

    #[test]
    fn vector_rep_weights_osp24() {
        let sig = AlgebraSignature::new(2, 4).unwrap();
        let v = vector_rep(&sig, &dp());
        let ws = weight_decomposition(&v);
        assert_eq!(ws.len(), 6);
        assert!(ws.values().all(|ix| ix.len() == 1));
    }
}

#[cfg(test)]
mod fusion_tests {
    use super::*;

    #[test]
    fn fused_lambda2_osp24() {
        let sig = AlgebraSignature::new(2, 4).unwrap();
        let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
        let v2 = fuse_minimal(2, &sig, &dp).unwrap();
        assert_eq!(v2.dim(), 19);
        assert_eq!(v2.fusion.as_ref().unwrap().z0, dp.q_pow(-2));
        let bad = check_relations(&v2);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
