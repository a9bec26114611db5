//! Solve the intertwining equations directly at one point and compare with
//! the assembled matrix.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::rmatrix::{assemble_full, op_rank, solve_jimbo_direct};
use ybe_forge::scalars::{DeformParam, Rat};
use ybe_forge::verify::check_oracle;

fn main() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
    let asm = assemble_full(1, 2, &sig, &dp).unwrap();
    let z = Rat::new(13, 7);
    let x = solve_jimbo_direct(&asm.va, &asm.vb, &z).unwrap();
    println!("solver output: {}x{} of rank {}", x.rows(), x.cols(), op_rank(&x));
    for (node, s) in &asm.rmatrix.meta.node_scales {
        println!("scale at {node}: {s}");
    }
    let r = check_oracle(&asm, &Rat::new(-11, 5));
    println!("{} pass={} residual={}", r.name, r.pass, r.residual);
}
