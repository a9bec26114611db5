//! Fuse `V(lambda_2)` out of two vector representations and check that
//! `Ř(q^2)` projects onto it.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::reps::{check_relations, fuse_minimal};
use ybe_forge::rmatrix::assemble_full;
use ybe_forge::scalars::{DeformParam, Rat};
use ybe_forge::verify::check_fusion;

fn main() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
    let v2 = fuse_minimal(2, &sig, &dp).unwrap();
    println!("dim V(lambda_2) = {}, relation failures: {}", v2.dim(), check_relations(&v2).len());
    let asm = assemble_full(1, 1, &sig, &dp).unwrap();
    let r = check_fusion(&asm);
    println!("{}: {}", r.name, r.note.unwrap_or_default());
}
