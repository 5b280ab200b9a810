//! Random fibers of the matrix projections and the fiberwise sections that
//! cut out the rank-deficient locus.
//!
//! `cargo run --release --example incidence_probes -- 200 7`

use pbundle::rank_loci::{probe_birational, probe_exceptional};
use pbundle::{SampleConfig, Variant};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let cfg = SampleConfig {
        seed,
        samples,
        ..SampleConfig::default()
    };

    for (variant, n) in [
        (Variant::Hom, 2),
        (Variant::Hom, 3),
        (Variant::Hom, 4),
        (Variant::Alt, 2),
        (Variant::Alt, 4),
    ] {
        let b = probe_birational(variant, n, &cfg).expect("valid parameters");
        let e = probe_exceptional(variant, n, &cfg).expect("valid parameters");
        println!(
            "{variant:?} n={n}: {}/{} single-point fibers, {} degenerate draws; \
             low rank: {}/{} positive-dimensional, {}/{} sections vanish [{}]",
            b.singleton_fibers,
            b.full_rank,
            b.degenerate_draws,
            e.positive_dim_fibers,
            e.low_rank_samples,
            e.vanishing_sections,
            e.kernel_vectors,
            if b.pass && e.pass { "ok" } else { "FAILED" }
        );
    }
}
