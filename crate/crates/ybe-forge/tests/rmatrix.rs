//! Assembly, projector structure and the direct solver on small cases.

use ybe_forge::graded::GradedOp;
use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::reps::fuse_minimal;
use ybe_forge::rmatrix::{assemble_from, assemble_full, op_rank, solve_jimbo_direct, Assembled};
use ybe_forge::scalars::{bracket, DeformParam, Rat, RatFuncZ, Sign};
use ybe_forge::tpg::{self, NodeId};
use ybe_forge::verify::{check_block_identities, check_graded_ybe, check_jimbo, check_unitarity, jimbo_residual};

fn dp() -> DeformParam {
    DeformParam::new(Rat::new(6, 5)).unwrap()
}

fn build(m: usize, n: usize, a: i64, b: i64) -> Assembled {
    assemble_full(a, b, &AlgebraSignature::new(m, n).unwrap(), &dp()).unwrap()
}

fn rho_of_weight(asm: &Assembled, weight: &str) -> RatFuncZ {
    let sig = asm.va.sig;
    let grid = tpg::decomposition_grid(asm.rmatrix.meta.a, asm.rmatrix.meta.b, &sig).unwrap();
    let node = grid.nodes.iter().find(|n| n.weight.to_string() == weight).unwrap();
    asm.rmatrix.terms.iter().find(|t| t.node == node.id()).unwrap().rho.clone()
}

#[test]
fn vector_case_osp24_closed_form() {
    let asm = build(2, 4, 1, 1);
    let d = dp();
    let m2 = bracket(-2, Sign::Minus, &d).unwrap();
    let p2 = bracket(-2, Sign::Plus, &d).unwrap();
    assert_eq!(rho_of_weight(&asm, "2d1"), RatFuncZ::one());
    assert_eq!(rho_of_weight(&asm, "1d1+1d2"), m2);
    assert_eq!(rho_of_weight(&asm, "0"), p2.mul(&m2));
    // regression: component ranks 19 + 16 + 1
    let mut ranks: Vec<usize> = asm.family.ranks.values().copied().collect();
    ranks.sort();
    assert_eq!(ranks, vec![1, 16, 19]);
    assert_eq!(ranks.iter().sum::<usize>(), 36);
}

#[test]
fn involution_at_one_and_unitarity() {
    for (m, n) in [(2, 4), (4, 4), (1, 4), (3, 4)] {
        let asm = build(m, n, 1, 1);
        let r1 = asm.rmatrix.eval(&Rat::one()).unwrap();
        assert_eq!(r1.mul(&r1), GradedOp::identity(&asm.ab.parities), "({m},{n})");
        assert!(check_unitarity(&asm.rmatrix, &asm.rmatrix, &Rat::new(9, 7)).pass);
        assert!(check_graded_ybe(&asm.rmatrix, &asm.rmatrix, &asm.rmatrix, &Rat::one(), &Rat::one()).pass);
    }
}

#[test]
fn indecomposable_block_structure() {
    let asm = build(4, 4, 1, 1);
    let q2 = dp().q_pow(2);
    let rho_v = RatFuncZ::linear(-&q2, Rat::one(), Rat::one(), -&q2);
    assert_eq!(asm.rmatrix.v.as_ref().unwrap().rho, rho_v);
    let pv = asm.family.p_v.as_ref().unwrap();
    // rank dim V̄ + 1
    assert_eq!(op_rank(pv), 32);
    let n = asm.family.n.as_ref().unwrap();
    for i in 1..asm.ab.nodes() {
        assert_eq!(n.mul(&asm.ab.e[i]), asm.ab.e[i].mul(n));
        assert_eq!(n.mul(&asm.ab.f[i]), asm.ab.f[i].mul(n));
    }
    assert!(check_block_identities(&asm).pass);
    // rho_N vanishes at z = 1
    assert!(asm.rmatrix.n.as_ref().unwrap().rho.eval(&Rat::one()).unwrap().is_zero());
}

#[test]
fn negative_controls_for_jimbo_and_unitarity() {
    let asm = build(2, 4, 1, 1);
    let z = Rat::new(7, 3);
    let id = GradedOp::identity(&asm.ab.parities);
    assert!(!jimbo_residual(&id, &asm.va, &asm.vb, &z).unwrap().is_zero());
    let mut doubled = asm.rmatrix.clone();
    for t in doubled.terms.iter_mut() {
        t.op = t.op.scale(&Rat::int(2));
    }
    assert!(!check_unitarity(&doubled, &doubled, &Rat::new(9, 7)).pass);
    assert!(check_jimbo(&asm.rmatrix, &asm.va, &asm.vb, &z).pass);
}

#[test]
fn mixed_node_scales_unique() {
    let asm = build(2, 4, 1, 2);
    assert_eq!(asm.rmatrix.meta.node_scales.len(), 3);
    assert_eq!(asm.rmatrix.meta.node_scales[&NodeId::Grid(0, 0)], Rat::one());
    for z in [Rat::new(5, 3), Rat::new(-2, 7)] {
        assert!(check_jimbo(&asm.rmatrix, &asm.va, &asm.vb, &z).pass);
    }
}

#[test]
fn solver_degenerates_at_fusion_point() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let d = dp();
    let v = fuse_minimal(1, &sig, &d).unwrap();
    let q2 = d.q_pow(2);
    match solve_jimbo_direct(&v, &v, &q2) {
        Ok(x) => assert!(op_rank(&x) < 36),
        Err(e) => assert_eq!(e.exit_code(), 3),
    }
    let generic = solve_jimbo_direct(&v, &v, &Rat::new(5, 3)).unwrap();
    assert_eq!(op_rank(&generic), 36);
}

/// At `(2,4)`, `a = b = 2` the diagonal factors `<2i-a-b-2>_-` solve the
/// intertwining equations, while `<i-a-b-1>_-` (agreeing at `i = 1`) do not.
#[test]
fn diagonal_exponent_decided_by_solver() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let d = dp();
    let v2 = fuse_minimal(2, &sig, &d).unwrap();
    let asm = assemble_from(2, 2, v2.clone(), v2).unwrap();
    let z = Rat::new(5, 3);
    assert!(check_jimbo(&asm.rmatrix, &asm.va, &asm.vb, &z).pass);

    let grid = tpg::decomposition_grid(2, 2, &sig).unwrap();
    let mut variant = asm.rmatrix.clone();
    for t in variant.terms.iter_mut() {
        let NodeId::Grid(c, k) = t.node else { continue };
        let mut f = RatFuncZ::one();
        for j in 1..=c - k {
            f = f.mul(&bracket(tpg::row_exponent(j, 2, 2, &sig), Sign::Plus, &d).unwrap());
        }
        for i in 1..=c {
            f = f.mul(&bracket(i - 5, Sign::Minus, &d).unwrap());
        }
        t.rho = f;
    }
    assert_eq!(grid.nodes.len(), 6);
    assert_ne!(variant, asm.rmatrix);
    assert!(!check_jimbo(&variant, &asm.va, &asm.vb, &z).pass);
}
