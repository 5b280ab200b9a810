//! Exact intersection theory on projective bundles over `P^n`.
//!
//! The crate verifies, with exact integer and rational arithmetic, that the
//! projective bundles `P(Hom(O^n, T(-1)))` and `P(Λ²T(-1))` (the latter for
//! even `n`) map birationally onto projective spaces of matrices, and that
//! the exceptional divisors have the expected classes.
//!
//! * [`chow`]: truncated Chern/Segre class calculus on `P^n`.
//! * [`proj_bundle`]: the Chow ring of `P(E)` and its top intersection numbers.
//! * [`cohomology`]: Bott's formula and long-exact-sequence dimension chases.
//! * [`rank_loci`]: exact matrices, Pfaffians, incidence fibers, sampling probes.
//! * [`cli`]: bundle-expression language, verification reports, command line.

pub mod chow;
pub mod cli;
pub mod cohomology;
pub mod proj_bundle;
pub mod rank_loci;

pub use chow::{BundleClass, ChowError, IntClass, RatClass, TruncatedClass};
pub use cohomology::{CohTable, ExactComplex, SheafAtom, SheafTerm};
pub use proj_bundle::MixedClass;
pub use rank_loci::{ExactMatrix, SampleConfig, Variant};

/// `E_n = Hom(O^n, T(-1))`, the `n`-fold sum of `T(-1)`.
pub fn hom_bundle(n: usize) -> BundleClass {
    BundleClass::tangent_twist(n).multiple(n)
}

/// `V_n = Λ²T(-1)`.
pub fn alt_bundle(n: usize) -> BundleClass {
    BundleClass::tangent_twist(n)
        .exterior_power(2)
        .expect("exterior powers of genuine bundles are integral")
}
