//! Exact Pfaffians and the fiberwise Pfaffian section.
//!
//! `cargo run --example pfaffians`

use pbundle::rank_loci::{fiber_over, pf_section, pfaffian, random_alternating};
use pbundle::{ExactMatrix, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let m = ExactMatrix::from_json("[[0, 2, 3, 5], [-2, 0, 7, 11], [-3, -7, 0, 13], [-5, -11, -13, 0]]")
        .expect("valid matrix");
    println!(
        "pf = {}, det = {}",
        pfaffian(&m).unwrap(),
        m.determinant().unwrap()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for size in [6, 8, 10] {
        let a = random_alternating(&mut rng, size, 5);
        let pf = pfaffian(&a).unwrap();
        assert_eq!(&pf * &pf, a.determinant().unwrap());
        println!("random {size}x{size}: pf = {pf}");
    }

    // a generic alternating 5x5 has a one-point kernel, where the section is nonzero
    let phi = random_alternating(&mut rng, 5, 5);
    let fiber = fiber_over(Variant::Alt, &phi).unwrap();
    if let Some(v) = fiber.representative {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!(
            "kernel point [{}], section {}",
            shown.join(", "),
            pf_section(&v, &phi).unwrap()
        );
    }
}
