//! Sheaf cohomology on `P^n`: Bott's table, the Koszul cross-check, and the
//! two section-space computations.
//!
//! `cargo run --example section_spaces`

use pbundle::cohomology::{
    alt_bundle_complex, bott, chase, hom_bundle_complex, koszul_resolution, lemma1_section_space,
    lemma2_section_space,
};

fn main() {
    let n = 3;
    println!("Bott table on P^{n}, rows p, columns t = -5..=5, entry = nonzero h^q as q:dim");
    for p in 0..=n {
        let cells: Vec<String> = (-5..=5)
            .map(|t| {
                let table = bott(n, p, t).expect("p <= n");
                match (0..=n).find(|&q| table.get(q) != 0u32.into()) {
                    Some(q) => format!("{q}:{}", table.get(q)),
                    None => "-".into(),
                }
            })
            .collect();
        println!("  p={p}: {}", cells.join(" "));
    }

    let (p, t) = (1, 2);
    let koszul = chase(n, &koszul_resolution(n, p, t).expect("p <= n")).expect("forced");
    println!("Omega^{p}({t}) via Koszul: {koszul}");
    println!("Omega^{p}({t}) via Bott:   {}", bott(n, p, t).unwrap());

    for n in 2..=5 {
        let e = chase(n, &hom_bundle_complex(n)).unwrap();
        let v = chase(n, &alt_bundle_complex(n)).unwrap();
        println!("n={n}: h^0(E) = {}, h^0(V) = {}", e.get(0), v.get(0));
    }
    for n in 2..=4 {
        println!(
            "n={n}: h^0(O_P(E)(nξ - h)) = {}",
            lemma1_section_space(n).unwrap()
        );
    }
    for n in [2, 4, 6] {
        println!(
            "n={n}: h^0(O_P(V)(kζ - h)) = {}",
            lemma2_section_space(n).unwrap()
        );
    }
}
