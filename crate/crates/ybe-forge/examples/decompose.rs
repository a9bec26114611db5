//! Highest weights, parities and Casimir values of the components of
//! `V(lambda_a) ⊗ V(lambda_b)`.

use ybe_forge::liealg::AlgebraSignature;
use ybe_forge::rmatrix::minimal_dim;
use ybe_forge::tpg::decomposition_grid;

fn main() {
    let sig = AlgebraSignature::new(2, 4).unwrap();
    let (a, b) = (2, 3);
    let grid = decomposition_grid(a, b, &sig).unwrap();
    println!("dim V(lambda_{a}) = {}, dim V(lambda_{b}) = {}", minimal_dim(a, &sig), minimal_dim(b, &sig));
    for node in &grid.nodes {
        println!("{} weight {} parity {:?} C = {}", node.id(), node.weight, node.parity, node.casimir);
    }
}
