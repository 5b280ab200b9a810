//! `P(O² ⊕ O(1))` over `P²` is the blow-up of `P^4` along a line. The map
//! has degree one and the divisor `ξ - h` is contracted.
//!
//! `cargo run --example linear_blowup`

use pbundle::proj_bundle::{point_class, taut_degree};
use pbundle::{BundleClass, MixedClass};

fn main() {
    let f = BundleClass::trivial(2, 2)
        .direct_sum(&BundleClass::line(2, 1))
        .unwrap();
    println!(
        "F = O^2 + O(1) on P^2, c(F) = {}, s(F) = {}",
        f.chern(),
        f.segre()
    );

    let xi = MixedClass::xi(&f).unwrap();
    for k in 0..=4u32 {
        println!("  xi^{k} = {:?}", xi.pow(k));
    }
    println!("deg = ∫ xi^4 = {}", taut_degree(&f).unwrap());

    let h = MixedClass::h(&f).unwrap();
    let exceptional = xi.add(&h.scale(-1)).unwrap();
    let hit = exceptional.mul(&xi.pow(3)).unwrap().integral().unwrap();
    println!("(xi - h)·xi^3 = {hit}");
    println!("point class: {:?}", point_class(&f).unwrap());
}
