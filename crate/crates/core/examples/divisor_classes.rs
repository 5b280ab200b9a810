//! Top intersections of `a·ξ + b·h` with `ξ^{top-1}`, locating the class of
//! the exceptional divisor.
//!
//! `cargo run --example divisor_classes`

use pbundle::proj_bundle::divisor_top_intersection;
use pbundle::{alt_bundle, hom_bundle};

fn main() {
    for n in 2..=5usize {
        let e = hom_bundle(n);
        let row: Vec<String> = (-1..=1)
            .map(|b| {
                let v = divisor_top_intersection(n as i64, b, &e).expect("positive rank");
                format!("b={b}: {v}")
            })
            .collect();
        println!("P(E_{n}), a = {n}: {}", row.join(", "));
    }
    for n in [2usize, 4, 6] {
        let k = n as i64 / 2;
        let v = divisor_top_intersection(k, -1, &alt_bundle(n)).expect("positive rank");
        println!("P(V_{n}), ({k}ζ - h)·ζ^top = {v}");
    }
}
