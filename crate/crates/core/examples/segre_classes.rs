//! Chern, Segre and Chern-character data of the two bundles.
//!
//! `cargo run --example segre_classes -- 4`

use pbundle::{alt_bundle, hom_bundle, IntClass};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);

    let e = hom_bundle(n);
    println!("E = T(-1)^{n}, rank {}", e.rank());
    println!("  c(E)  = {}", e.chern());
    println!("  s(E)  = {}", e.segre());
    println!("  ch(E) = {}", e.chern_character());

    let v = alt_bundle(n);
    println!("V = wedge^2 T(-1), rank {}", v.rank());
    println!("  c(V)  = {}", v.chern());
    println!("  s(V)  = {}", v.segre());

    let series = IntClass::linear(n, -1)
        .pow(n as u32 + 1)
        .mul(&IntClass::linear(n, -2).series_inverse().expect("unit"))
        .expect("same ambient dimension");
    println!("  (1-h)^{}/(1-2h) = {series}", n + 1);
    assert_eq!(series, v.segre());
}
