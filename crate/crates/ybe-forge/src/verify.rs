//! Exact checks: graded Yang-Baxter equation, unitarity, the intertwining
//! (Jimbo) equations, projector invariants, commutants and the structure of the
//! indecomposable block. A check passes iff its residual is exactly zero.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graded::{embed_leg, GradedOp, Leg};
use crate::linalg::{is_zero_vec, Subspace};
use crate::reps::{self, check_relations, fuse_minimal, restrict_finite, tensor_rep, Representation, WeightedSubspace};
use crate::rmatrix::{op_rank, solve_jimbo_direct, Assembled, SpectralRMatrix};
use crate::scalars::Rat;
use crate::tpg::NodeId;
use crate::Error;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckParams {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub q: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CheckParams {
    pub fn of(rm: &SpectralRMatrix) -> CheckParams {
        let m = &rm.meta;
        CheckParams { m: m.m, n: m.n, a: m.a, b: m.b, q: m.q.clone(), ..Default::default() }
    }

    pub fn at(mut self, z: &Rat) -> CheckParams {
        self.z = Some(z.clone());
        self
    }

    pub fn with_w(mut self, w: &Rat) -> CheckParams {
        self.w = Some(w.clone());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: CheckParams,
    /// `"0"`, or the largest absolute numerator among nonzero residual entries.
    pub residual: String,
    pub pass: bool,
    pub runtime_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn from_residual(name: &str, params: CheckParams, residual: &GradedOp, start: Instant) -> CheckReport {
        CheckReport {
            name: name.into(),
            params,
            residual: residual.max_abs_numer(),
            pass: residual.is_zero(),
            runtime_ms: start.elapsed().as_millis(),
            note: None,
        }
    }

    fn from_bool(name: &str, params: CheckParams, pass: bool, note: String, start: Instant) -> CheckReport {
        CheckReport {
            name: name.into(),
            params,
            residual: if pass { "0".into() } else { "1".into() },
            pass,
            runtime_ms: start.elapsed().as_millis(),
            note: Some(note),
        }
    }

    fn failed(name: &str, params: CheckParams, err: &Error, start: Instant) -> CheckReport {
        CheckReport::from_bool(name, params, false, err.to_string(), start)
    }
}

/// `R12(z) R13(zw) R23(w) = R23(w) R13(zw) R12(z)` on `V1⊗V2⊗V3`, with
/// `R = P Ř` and legs embedded with Koszul signs.
pub fn check_graded_ybe(r12: &SpectralRMatrix, r13: &SpectralRMatrix, r23: &SpectralRMatrix, z: &Rat, w: &Rat) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(r12).at(z).with_w(w);
    let run = || -> Result<GradedOp, Error> {
        let (v1, v2, v3) = (&r12.meta.parities_a, &r12.meta.parities_b, &r23.meta.parities_b);
        if &r13.meta.parities_a != v1 || &r13.meta.parities_b != v3 || &r23.meta.parities_a != v2 {
            return Err(Error::Shape("R-matrices do not share spaces".into()));
        }
        let spaces = [v1.as_slice(), v2.as_slice(), v3.as_slice()];
        let zw = z * w;
        let a12 = embed_leg(&r12.eval_r(z)?, Leg::L12, spaces)?;
        let a13 = embed_leg(&r13.eval_r(&zw)?, Leg::L13, spaces)?;
        let a23 = embed_leg(&r23.eval_r(w)?, Leg::L23, spaces)?;
        let lhs = a12.mul(&a13).mul(&a23);
        let rhs = a23.mul(&a13).mul(&a12);
        Ok(lhs.sub(&rhs))
    };
    match run() {
        Ok(res) => CheckReport::from_residual("graded_ybe", params, &res, start),
        Err(e) => CheckReport::failed("graded_ybe", params, &e, start),
    }
}

/// `Ř^{AB}(z) Ř^{BA}(1/z) = I`.
pub fn check_unitarity(rab: &SpectralRMatrix, rba: &SpectralRMatrix, z: &Rat) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(rab).at(z);
    let run = || -> Result<GradedOp, Error> {
        let x = rab.eval(z)?.mul(&rba.eval(&z.recip())?);
        Ok(x.sub(&GradedOp::identity(&x.parity_col)))
    };
    match run() {
        Ok(res) => CheckReport::from_residual("unitarity", params, &res, start),
        Err(e) => CheckReport::failed("unitarity", params, &e, start),
    }
}

/// Residual of `Ř Δ^{AB}_z(x) = Δ^{BA}_z(x) Ř` for `e_0, f_0` and every
/// finite generator (including `q^{h_i/2}`).
pub fn check_jimbo(rm: &SpectralRMatrix, va: &Representation, vb: &Representation, z: &Rat) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(rm).at(z);
    let run = || -> Result<GradedOp, Error> {
        let x = rm.eval(z)?;
        jimbo_residual(&x, va, vb, z)
    };
    match run() {
        Ok(res) => CheckReport::from_residual("jimbo", params, &res, start),
        Err(e) => CheckReport::failed("jimbo", params, &e, start),
    }
}

/// Intertwining residual `X Δ^{AB}_z(x) - Δ^{BA}_z(x) X`: the last nonzero one
/// over all generators, or zero if every relation holds.
pub fn jimbo_residual(x: &GradedOp, va: &Representation, vb: &Representation, z: &Rat) -> Result<GradedOp, Error> {
    let one = Rat::one();
    let l = tensor_rep(va, vb, z, &one);
    let r = tensor_rep(vb, va, &one, z);
    if x.cols() != l.dim() || x.rows() != r.dim() {
        return Err(Error::Shape("R-matrix does not map A⊗B to B⊗A".into()));
    }
    let mut worst = GradedOp::zeros(&x.parity_row, &x.parity_col);
    for i in 0..l.nodes() {
        for (lo, ro) in [(&l.e[i], &r.e[i]), (&l.f[i], &r.f[i]), (&l.k_pow(i, 1), &r.k_pow(i, 1))] {
            let res = x.mul(lo).sub(&ro.mul(x));
            if !res.is_zero() {
                worst = res;
            }
        }
    }
    Ok(worst)
}

/// `solve_jimbo_direct` agrees with the assembled `Ř(z)` up to one scalar.
pub fn check_oracle(asm: &Assembled, z: &Rat) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(&asm.rmatrix).at(z);
    let run = || -> Result<GradedOp, Error> {
        let x = solve_jimbo_direct(&asm.va, &asm.vb, z)?;
        let y = asm.rmatrix.eval(z)?;
        let Some((r, c, v)) = y.triples().next() else { return Ok(x) };
        let s = &x.get(r, c) / v;
        Ok(x.sub(&y.scale(&s)))
    };
    match run() {
        Ok(res) => CheckReport::from_residual("oracle", params, &res, start),
        Err(e) => CheckReport::failed("oracle", params, &e, start),
    }
}

/// Idempotence, orthogonality, completeness and equivariance of the projectors,
/// plus `P_nu N = N P_nu = 0`, `P_V N = N P_V = N` and `N^2 = 0`.
pub fn check_projectors(asm: &Assembled) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(&asm.rmatrix);
    let fam = &asm.family;
    let mut ps: Vec<(NodeId, &GradedOp)> = fam.components.iter().map(|(k, v)| (*k, v)).collect();
    if let Some(pv) = &fam.p_v {
        ps.push((NodeId::V, pv));
    }
    let mut bad = Vec::new();
    let mut sum = GradedOp::zeros(&fam.parities, &fam.parities);
    for (i, (id, p)) in ps.iter().enumerate() {
        sum = sum.add(p);
        if p.mul(p) != **p {
            bad.push(format!("P_{id} not idempotent"));
        }
        for (jd, q) in &ps[i + 1..] {
            if !p.mul(q).is_zero() || !q.mul(p).is_zero() {
                bad.push(format!("P_{id} P_{jd} != 0"));
            }
        }
        for k in 1..asm.ab.nodes() {
            for x in [&asm.ab.e[k], &asm.ab.f[k]] {
                if p.mul(x) != x.mul(p) {
                    bad.push(format!("P_{id} not equivariant for node {k}"));
                }
            }
        }
        if let Some(n) = &fam.n {
            let expect = if *id == NodeId::V { (*n).clone() } else { GradedOp::zeros(&fam.parities, &fam.parities) };
            if p.mul(n) != expect || n.mul(p) != expect {
                bad.push(format!("P_{id} and N"));
            }
        }
    }
    if sum != GradedOp::identity(&fam.parities) {
        bad.push("projectors do not sum to I".into());
    }
    if let Some(n) = &fam.n {
        if !n.mul(n).is_zero() {
            bad.push("N^2 != 0".into());
        }
    }
    let pass = bad.is_empty();
    let note = if pass { format!("{} projectors", ps.len()) } else { bad.join("; ") };
    CheckReport::from_bool("projectors", params, pass, note, start)
}

/// Dimension of the commutant of the finite part, on the whole module or on
/// an invariant block.
pub fn commutant_dimension(trep: &Representation, block: Option<&WeightedSubspace>) -> Result<usize, Error> {
    match block {
        None => Ok(reps::commutant_dimension(trep)),
        Some(b) => {
            let r = restrict_finite(trep, b).ok_or_else(|| Error::Construction("block is not invariant".into()))?;
            Ok(reps::commutant_dimension(&r))
        }
    }
}

/// Submodule generated by `seed` under all finite `e_i, f_i`.
fn generated_submodule(rep: &Representation, seed: &[Rat]) -> Subspace {
    let mut s = Subspace::new(rep.dim());
    let mut queue = VecDeque::new();
    if s.insert(seed.to_vec()) {
        queue.push_back(seed.to_vec());
    }
    while let Some(v) = queue.pop_front() {
        for i in 1..rep.nodes() {
            for op in [&rep.e[i], &rep.f[i]] {
                let u = op.apply(&v);
                if !is_zero_vec(&u) && s.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    s
}

/// `V ⊃ V̄ ⊃ trivial`: the invariant vector spans the only trivial submodule of
/// `V`, `V̄` is generated by its highest-weight vector, `xi` generates all of
/// `V` (so every proper submodule lies in `V̄`), `(x - eps(x)) xi ∈ V̄`, and
/// `N V = trivial`.
pub fn composition_series_check(asm: &Assembled) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(&asm.rmatrix);
    let Some(block) = &asm.family.block else {
        let mut r = CheckReport::from_bool("composition_series", params, true, "skipped: no indecomposable block".into(), start);
        r.residual = "0".into();
        return r;
    };
    let rep = &asm.ab;
    let dim_v = reps::subspace_dim(&block.v);
    let dim_vbar = reps::subspace_dim(&block.vbar);
    let mut bad = Vec::new();
    // trivial submodule: joint kernel of e_i, f_i inside V
    let v_span: Vec<Vec<Rat>> = block.v.values().flat_map(|s| s.basis().to_vec()).collect();
    let fixed = {
        // coefficients c with sum c_j v_j killed by every finite generator
        let mut rref = crate::linalg::SparseRref::new(v_span.len());
        for i in 1..rep.nodes() {
            for op in [&rep.e[i], &rep.f[i]] {
                let imgs: Vec<Vec<Rat>> = v_span.iter().map(|v| op.apply(v)).collect();
                for p in 0..rep.dim() {
                    let eq: Vec<(usize, Rat)> =
                        imgs.iter().enumerate().filter(|(_, u)| !u[p].is_zero()).map(|(j, u)| (j, u[p].clone())).collect();
                    if !eq.is_empty() {
                        rref.push(eq);
                    }
                }
            }
        }
        v_span.len() - rref.rank()
    };
    if fixed != 1 {
        bad.push(format!("{fixed} invariant directions in V"));
    }
    let gen_v0 = generated_submodule(rep, &block.v0);
    if gen_v0.len() != 1 {
        bad.push("invariant vector is not fixed".into());
    }
    let vbar_gen = asm.family.hw_ab.get(&NodeId::V).map(|h| generated_submodule(rep, h).len());
    if vbar_gen != Some(dim_vbar) {
        bad.push("V̄ is not generated by its highest-weight vector".into());
    }
    if generated_submodule(rep, &block.xi).len() != dim_v || dim_v != dim_vbar + 1 {
        bad.push("xi does not generate V with a one-dimensional top".into());
    }
    let empty = Subspace::new(rep.dim());
    for i in 1..rep.nodes() {
        for (op, sh) in [(&rep.e[i], rep.roots[i].clone()), (&rep.f[i], rep.roots[i].scale(&Rat::int(-1)))] {
            let img = op.apply(&block.xi);
            if !block.vbar.get(&block.weight0.add(&sh)).unwrap_or(&empty).contains(&img) {
                bad.push(format!("generator of node {i} moves xi out of V̄"));
            }
        }
    }
    if let Some(n) = &asm.family.n {
        let img = n.apply(&block.xi);
        if img != block.v0 || op_rank(n) != 1 {
            bad.push("N V is not the trivial submodule".into());
        }
    }
    let pass = bad.is_empty();
    let note = if pass {
        format!("dim V = {dim_v}, dim V̄ = {dim_vbar}, trivial submodule unique")
    } else {
        bad.join("; ")
    };
    CheckReport::from_bool("composition_series", params, pass, note, start)
}

/// `P_nu (e_0⊗K_0) N = P_nu (K_0^{-1}⊗e_0) N = 0` and the same with `N` in
/// place of `P_nu`.
pub fn check_block_identities(asm: &Assembled) -> CheckReport {
    let start = Instant::now();
    let params = CheckParams::of(&asm.rmatrix);
    let Some(n) = &asm.family.n else {
        return CheckReport::from_bool("block_identities", params, true, "skipped: no indecomposable block".into(), start);
    };
    let left = asm.va.e[0].tensor(&asm.vb.k_pow(0, 1));
    let right = asm.va.k_pow(0, -1).tensor(&asm.vb.e[0]);
    let mut worst = GradedOp::zeros(&n.parity_row, &n.parity_col);
    let outers: Vec<&GradedOp> = asm.family.components.values().chain([n]).collect();
    for p in outers {
        for x in [&left, &right] {
            let r = p.mul(x).mul(n);
            if !r.is_zero() {
                worst = r;
            }
        }
    }
    CheckReport::from_residual("block_identities", params, &worst, start)
}

/// The fused `V(lambda_2)` satisfies every defining relation, and `Ř(q^2)` of
/// `V(lambda_1)⊗V(lambda_1)` has rank equal to the top component.
pub fn check_fusion(asm11: &Assembled) -> CheckReport {
    let start = Instant::now();
    let rm = &asm11.rmatrix;
    let q2 = &rm.meta.q * &rm.meta.q;
    let params = CheckParams::of(rm).at(&q2);
    let run = || -> Result<(bool, String), Error> {
        let x = rm.eval(&q2)?;
        let rank = op_rank(&x);
        let top = asm11.family.ranks[&NodeId::Grid(0, 0)];
        let v2 = fuse_minimal(2, &asm11.va.sig, &asm11.va.dp)?;
        let bad = check_relations(&v2);
        let pass = rank == top && v2.dim() == top && bad.is_empty();
        Ok((pass, format!("rank R(q^2) = {rank}, top component {top}, fused dim {}, relation failures {bad:?}", v2.dim())))
    };
    match run() {
        Ok((pass, note)) => CheckReport::from_bool("fusion", params, pass, note, start),
        Err(e) => CheckReport::failed("fusion", params, &e, start),
    }
}

/// Seeded rational points `p/q` with `|p|, q <= 100`, excluding `0, ±1` and
/// anything `reject` refuses (poles).
pub fn random_points(seed: u64, count: usize, reject: impl Fn(&Rat) -> bool) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rat> = Vec::new();
    while out.len() < count {
        let p: i64 = rng.gen_range(-100..=100);
        let d: i64 = rng.gen_range(1..=100);
        if p == 0 {
            continue;
        }
        let z = Rat::new(p, d);
        if z.abs().is_one() || reject(&z) || out.contains(&z) {
            continue;
        }
        out.push(z);
    }
    out
}

/// True if any coefficient of `rm` has a pole at `z` or `1/z`.
pub fn is_pole(rm: &SpectralRMatrix, z: &Rat) -> bool {
    rm.all_terms().any(|t| t.rho.eval(z).is_err() || t.rho.eval(&z.recip()).is_err())
}

/// Copy of `rm` with one entry of the constant top term bumped by 1, at a
/// position drawn from `seed`.
pub fn perturbed(rm: &SpectralRMatrix, seed: u64) -> SpectralRMatrix {
    let mut out = rm.clone();
    let op = &mut out.terms[0].op;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(0..op.rows());
    let c = rng.gen_range(0..op.cols());
    op.bump(r, c, &Rat::one());
    out
}

/// Named groups of checks for the command line.
pub const SUITES: [&str; 10] =
    ["all", "ybe", "unitarity", "jimbo", "oracle", "projectors", "commutant", "composition", "block", "fusion"];

/// Runs a suite on an assembled pair. `flipped` is `Ř^{BA}`, needed for
/// unitarity when `a != b`; YBE runs only when `a = b`.
pub fn run_suite(
    suite: &str,
    asm: &Assembled,
    rm: &SpectralRMatrix,
    flipped: Option<&SpectralRMatrix>,
    seed: u64,
    z: Option<&Rat>,
    w: Option<&Rat>,
) -> Result<Vec<CheckReport>, Error> {
    if !SUITES.contains(&suite) {
        return Err(Error::Usage(format!("unknown suite {suite:?}; expected one of {SUITES:?}")));
    }
    let want = |s: &str| suite == "all" || suite == s;
    let pts = random_points(seed, 3, |p| is_pole(rm, p) || is_pole(rm, &(p * p)));
    let zs: Vec<Rat> = z.map_or_else(|| pts.clone(), |z| vec![z.clone()]);
    let mut out = Vec::new();
    let tag = |mut r: CheckReport| {
        r.params.seed = Some(seed);
        r
    };
    if want("ybe") && rm.meta.a == rm.meta.b {
        let ws = w.map_or_else(|| random_points(seed ^ 0x5eed, zs.len(), |p| is_pole(rm, p)), |w| vec![w.clone(); zs.len()]);
        for (z, w) in zs.iter().zip(&ws) {
            if is_pole(rm, &(z * w)) {
                continue;
            }
            out.push(tag(check_graded_ybe(rm, rm, rm, z, w)));
        }
    }
    if want("unitarity") {
        let back = flipped.unwrap_or(rm);
        for z in &zs {
            out.push(tag(check_unitarity(rm, back, z)));
        }
    }
    if want("jimbo") {
        for z in &zs {
            out.push(tag(check_jimbo(rm, &asm.va, &asm.vb, z)));
        }
    }
    if want("oracle") {
        for z in &zs {
            let mut r = check_oracle(asm, z);
            if rm != &asm.rmatrix {
                // a modified matrix is compared against the solver directly
                let start = Instant::now();
                let res = solve_jimbo_direct(&asm.va, &asm.vb, z).and_then(|x| Ok(x.sub(&rm.eval(z)?)));
                r = match res {
                    Ok(d) => CheckReport::from_residual("oracle", CheckParams::of(rm).at(z), &d, start),
                    Err(e) => CheckReport::failed("oracle", CheckParams::of(rm).at(z), &e, start),
                };
            }
            out.push(tag(r));
        }
    }
    if want("projectors") {
        out.push(tag(check_projectors(asm)));
    }
    if want("commutant") {
        let start = Instant::now();
        let params = CheckParams::of(rm);
        let (dim, expect, what) = match &asm.family.block {
            Some(b) => (commutant_dimension(&asm.ab, Some(&b.v))?, 2, "indecomposable block"),
            None => (commutant_dimension(&asm.ab, None)?, asm.family.components.len(), "tensor product"),
        };
        out.push(tag(CheckReport::from_bool(
            "commutant",
            params,
            dim == expect,
            format!("commutant of the {what}: {dim} (expected {expect})"),
            start,
        )));
    }
    if want("composition") {
        out.push(tag(composition_series_check(asm)));
    }
    if want("block") {
        out.push(tag(check_block_identities(asm)));
    }
    if want("fusion") && rm.meta.a == 1 && rm.meta.b == 1 && rm.meta.m < rm.meta.n {
        out.push(tag(check_fusion(asm)));
    }
    Ok(out)
}

/// Map of node label to projector rank, for reporting.
pub fn component_ranks(asm: &Assembled) -> BTreeMap<String, usize> {
    asm.family.ranks.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::AlgebraSignature;
    use crate::rmatrix::assemble_full;
    use crate::scalars::DeformParam;

    #[test]
    fn suite_24_and_44() {
        let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
        for (m, n) in [(2, 4), (4, 4)] {
            let sig = AlgebraSignature::new(m, n).unwrap();
            let asm = assemble_full(1, 1, &sig, &dp).unwrap();
            let reps = run_suite("all", &asm, &asm.rmatrix, None, 1, None, None).unwrap();
            for r in &reps {
                eprintln!("({m},{n}) {} pass={} res={} {:?} {}ms", r.name, r.pass, r.residual, r.note, r.runtime_ms);
            }
            assert!(reps.iter().all(|r| r.pass));
        }
    }
}
