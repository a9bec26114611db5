//! The `m = n` case: the merged node `V`, its nilpotent part `N`, and the
//! coefficient pair `(rho_V, rho_N)`.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::rmatrix::{assemble_full, op_rank};
use ybe_forge::scalars::{DeformParam, Rat};
use ybe_forge::tpg::rho_v_n;
use ybe_forge::verify::check_block_identities;

fn main() {
    let sig = AlgebraSignature::new(4, 4).unwrap();
    let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
    let asm = assemble_full(1, 1, &sig, &dp).unwrap();
    let fam = &asm.family;
    println!("rank P_V = {}", op_rank(fam.p_v.as_ref().unwrap()));
    println!("rank N = {}", op_rank(fam.n.as_ref().unwrap()));
    let rm = &asm.rmatrix;
    println!("rho_V = {}", rm.v.as_ref().unwrap().rho);
    println!("rho_N = {}", rm.n.as_ref().unwrap().rho);
    println!("normalisation of N: {}", rm.meta.n_constant.as_ref().map_or("-".to_string(), Rat::to_string));

    let closed = rho_v_n(1, &sig, &dp).unwrap();
    println!("closed-form rho_N / rho_V = {}", closed.ratio);
    let r = check_block_identities(&asm);
    println!("{} pass={}", r.name, r.pass);
}
