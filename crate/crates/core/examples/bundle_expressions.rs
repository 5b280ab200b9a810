//! Parse bundle expressions and print their characteristic classes.
//!
//! `cargo run --example bundle_expressions -- 3 "sym(2, T(-1)) + O(-1)"`

use pbundle::cli::parse;
use pbundle::proj_bundle::taut_degree;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let exprs: Vec<String> = args.collect();
    let exprs = if exprs.is_empty() {
        vec![
            "T(-1)^3".to_string(),
            "wedge(2, T(-1))".into(),
            "Omega(1, 2) + O(1)".into(),
            "twist(dual(T(-1)), 1)".into(),
            "sym(2, T(-1) +".into(),
        ]
    } else {
        exprs
    };
    for src in exprs {
        match parse(&src) {
            Err(e) => println!("{src:?}: {e}"),
            Ok(e) => match e.elaborate(n) {
                Err(err) => println!("{e}: {err}"),
                Ok(b) => {
                    let degree = taut_degree(&b)
                        .map(|d| d.to_string())
                        .unwrap_or_else(|e| e.to_string());
                    println!(
                        "{e} on P^{n}: rank {}, c = {}, s = {}, degree {degree}",
                        b.rank(),
                        b.chern(),
                        b.segre()
                    );
                }
            },
        }
    }
}
