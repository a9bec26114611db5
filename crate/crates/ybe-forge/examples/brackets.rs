//! The rational functions `<x>_±` that every coefficient is built from.

use ybe_forge::scalars::{bracket, DeformParam, Rat, Sign};

fn main() {
    let dp = DeformParam::new(Rat::new(6, 5)).unwrap();
    println!("q = {}", dp.q());
    for x in [-4, -2, 0, 2] {
        let m = bracket(x, Sign::Minus, &dp).unwrap();
        let p = bracket(x, Sign::Plus, &dp).unwrap();
        println!("<{x}>_- = {m}");
        println!("<{x}>_+ = {p}");
        // <x>_±(z) <x>_±(1/z) = 1
        let z = Rat::new(7, 3);
        let prod = m.eval(&z).unwrap() * m.eval(&z.recip()).unwrap();
        assert!(prod.is_one());
    }
}
