//! Build `Ř(z)` on the vector representation and check the graded
//! Yang-Baxter equation, unitarity and intertwining at a few points.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::rmatrix::assemble_full;
use ybe_forge::scalars::{DeformParam, Rat};
use ybe_forge::verify::{check_graded_ybe, check_jimbo, check_unitarity};

fn main() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
    let asm = assemble_full(1, 1, &sig, &dp).unwrap();
    let rm = &asm.rmatrix;
    for t in &rm.terms {
        println!("rho_{} = {}", t.node, t.rho);
    }
    let (z, w) = (Rat::new(3, 2), Rat::new(-5, 7));
    for r in [
        check_graded_ybe(rm, rm, rm, &z, &w),
        check_unitarity(rm, rm, &z),
        check_jimbo(rm, &asm.va, &asm.vb, &z),
    ] {
        println!("{} pass={} residual={}", r.name, r.pass, r.residual);
    }
}
