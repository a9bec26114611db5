//! Graphviz source of the extended twisted graph; pipe into `dot -Tsvg`.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::tpg::{build_extended_ttpg, decomposition_grid, emit_dot};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>().expect("integer argument"));
    let m = args.next().unwrap_or(4) as usize;
    let n = args.next().unwrap_or(4) as usize;
    let a = args.next().unwrap_or(2);
    let sig = AlgebraSignature::new(m, n).unwrap();
    let grid = decomposition_grid(a, a, &sig).unwrap();
    print!("{}", emit_dot(&build_extended_ttpg(&grid, &sig)));
}
