//! Degree of the tautological map for `E = T(-1)^n` and `V = Λ²T(-1)`.
//!
//! `cargo run --example theorem_degrees`

use pbundle::proj_bundle::{degree_from_segre, taut_degree};
use pbundle::{alt_bundle, hom_bundle};

fn main() {
    println!(
        "{:>3} {:>8} {:>8} {:>8} {:>8}",
        "n", "dim P(E)", "deg E", "dim P(V)", "deg V"
    );
    for n in 2..=6 {
        let e = hom_bundle(n);
        let v = alt_bundle(n);
        let deg_e = taut_degree(&e).expect("positive rank");
        let deg_v = taut_degree(&v).expect("positive rank");
        // the Segre series gives the same numbers without touching P(E)
        assert_eq!(deg_e, degree_from_segre(&e));
        assert_eq!(deg_v, degree_from_segre(&v));
        println!(
            "{n:>3} {:>8} {deg_e:>8} {:>8} {deg_v:>8}",
            n + e.rank() - 1,
            n + v.rank() - 1
        );
    }
}
