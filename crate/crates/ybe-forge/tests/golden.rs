use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::tpg::{build_extended_ttpg, decomposition_grid, emit_dot, NodeId};

fn dot(m: usize, n: usize, a: i64, b: i64) -> String {
    let sig = AlgebraSignature::new(m, n).unwrap();
    let grid = decomposition_grid(a, b, &sig).unwrap();
    emit_dot(&build_extended_ttpg(&grid, &sig))
}

#[test]
fn dot_matches_golden_files() {
    for (m, n, a, b) in [(2, 4, 1, 1), (2, 4, 2, 2), (4, 4, 1, 1)] {
        let path = format!("{}/tests/golden/tpg_m{m}_n{n}_a{a}_b{b}.dot", env!("CARGO_MANIFEST_DIR"));
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(dot(m, n, a, b), want, "{path}");
    }
}

#[test]
fn graph_shape() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let t = build_extended_ttpg(&decomposition_grid(2, 3, &sig).unwrap(), &sig);
    // (a+1)(a+2)/2 nodes for a <= b
    assert_eq!(t.node_ids().len(), 6);
    let solid = t.edges.iter().filter(|e| e.sign == 1).count();
    let dashed = t.edges.iter().filter(|e| e.sign == -1).count();
    assert_eq!((solid, dashed), (3, 3));

    let sig = AlgebraSignature::new(4, 4).unwrap();
    let t = build_extended_ttpg(&decomposition_grid(2, 2, &sig).unwrap(), &sig);
    let ids = t.node_ids();
    assert!(ids.contains(&NodeId::V));
    assert!(!ids.contains(&NodeId::Grid(2, 0)) && !ids.contains(&NodeId::Grid(2, 1)));
    assert!(t.edges.iter().any(|e| e.to == NodeId::V || e.from == NodeId::V));
}
