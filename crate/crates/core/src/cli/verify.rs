//! Check batteries for the two degree statements and the two divisor
//! statements.

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use super::report::{int_array, int_value, uint_value, Check, Report};
use crate::chow::IntClass;
use crate::cohomology::{self, CohomologyError};
use crate::proj_bundle::{degree_from_segre, divisor_top_intersection, segre_pushforward, taut_degree};
use crate::rank_loci::{probe_birational, probe_exceptional, SampleConfig, Variant};
use crate::{alt_bundle, hom_bundle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Target {
    Thm1,
    Thm2,
    Lemma1,
    Lemma2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("ODD_N: {target:?} needs even n, got {n}")]
    OddN { target: Target, n: usize },
    #[error("n must be at least 2, got {0}")]
    TooSmall(usize),
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn result_value<T, E: std::fmt::Display>(r: Result<T, E>, f: impl FnOnce(T) -> Value) -> Value {
    match r {
        Ok(v) => f(v),
        Err(e) => json!(format!("error: {e}")),
    }
}

fn chase_value(r: Result<num_bigint::BigUint, CohomologyError>) -> Value {
    result_value(r, |d| uint_value(&d))
}

pub(crate) fn probe_birational_check(variant: Variant, n: usize, cfg: &SampleConfig) -> Check {
    let params = json!({
        "variant": variant, "n": n, "samples": cfg.samples, "seed": cfg.seed, "bound": cfg.bound,
    });
    match probe_birational(variant, n, cfg) {
        Ok(r) => Check::new(
            "probe_birational",
            json!({ "variant": variant, "n": n, "samples": cfg.samples, "seed": cfg.seed,
                    "bound": cfg.bound, "full_rank": r.full_rank, "degenerate_draws": r.degenerate_draws }),
            json!({ "singleton_fibers": r.full_rank }),
            json!({ "singleton_fibers": r.singleton_fibers }),
        ),
        Err(e) => Check::new(
            "probe_birational",
            params,
            json!("pass"),
            json!(format!("error: {e}")),
        ),
    }
}

pub(crate) fn probe_exceptional_check(variant: Variant, n: usize, cfg: &SampleConfig) -> Check {
    let params = json!({
        "variant": variant, "n": n, "samples": cfg.samples, "seed": cfg.seed, "bound": cfg.bound,
    });
    match probe_exceptional(variant, n, cfg) {
        Ok(r) => Check::new(
            "probe_exceptional",
            params,
            json!({
                "positive_dim_fibers": r.low_rank_samples,
                "vanishing_sections": r.kernel_vectors,
                "nonvanishing_sections": r.full_rank,
            }),
            json!({
                "positive_dim_fibers": r.positive_dim_fibers,
                "vanishing_sections": r.vanishing_sections,
                "nonvanishing_sections": r.nonvanishing_sections,
            }),
        ),
        Err(e) => Check::new(
            "probe_exceptional",
            params,
            json!("pass"),
            json!(format!("error: {e}")),
        ),
    }
}

fn thm1(n: usize, cfg: &SampleConfig) -> Vec<Check> {
    let e = hom_bundle(n);
    let p = json!({ "n": n, "bundle": "T(-1)^n" });
    let segre = e.segre();
    let closed = IntClass::linear(n, -1).pow(n as u32);
    let nn = n as u64;
    vec![
        Check::new(
            "segre_closed_form",
            p.clone(),
            int_array(closed.coeffs()),
            int_array(segre.coeffs()),
        ),
        Check::new("segre_top", p.clone(), json!(sign(n)), int_value(&segre.coeff(n))),
        Check::new(
            "segre_pushforward_top",
            p.clone(),
            json!(sign(n)),
            result_value(segre_pushforward(&e, n), |v| int_value(&v)),
        ),
        Check::new(
            "global_sections",
            p.clone(),
            json!(nn * (nn + 1)),
            chase_value(cohomology::chase(n, &cohomology::hom_bundle_complex(n)).map(|t| t.get(0))),
        ),
        Check::new(
            "taut_degree",
            p.clone(),
            json!(1),
            result_value(taut_degree(&e), |v| int_value(&v)),
        ),
        Check::new(
            "degree_from_segre",
            p,
            json!(1),
            int_value(&degree_from_segre(&e)),
        ),
        probe_birational_check(Variant::Hom, n, cfg),
    ]
}

fn thm2(n: usize, cfg: &SampleConfig) -> Vec<Check> {
    let v = alt_bundle(n);
    let p = json!({ "n": n, "bundle": "wedge(2, T(-1))" });
    let expected_degree = i64::from(n % 2 == 0);
    let series = IntClass::linear(n, -1)
        .pow(n as u32 + 1)
        .mul(&IntClass::linear(n, -2).series_inverse().expect("unit"))
        .expect("same n");
    let segre = v.segre();
    let nn = n as u64;
    let mut checks = vec![
        Check::new(
            "segre_two_routes",
            p.clone(),
            int_array(series.coeffs()),
            int_array(segre.coeffs()),
        ),
        Check::new(
            "segre_top",
            p.clone(),
            json!(expected_degree),
            int_value(&segre.coeff(n)),
        ),
        Check::new(
            "global_sections",
            p.clone(),
            json!(nn * (nn + 1) / 2),
            chase_value(cohomology::chase(n, &cohomology::alt_bundle_complex(n)).map(|t| t.get(0))),
        ),
        Check::new(
            "taut_degree",
            p.clone(),
            json!(expected_degree),
            result_value(taut_degree(&v), |d| int_value(&d)),
        ),
        Check::new(
            "degree_from_segre",
            p,
            json!(expected_degree),
            int_value(&degree_from_segre(&v)),
        ),
    ];
    if n % 2 == 0 {
        checks.push(probe_birational_check(Variant::Alt, n, cfg));
    }
    checks
}

fn lemma1(n: usize, cfg: &SampleConfig) -> Vec<Check> {
    let e = hom_bundle(n);
    let p = json!({ "n": n, "bundle": "T(-1)^n" });
    vec![
        Check::new(
            "segre_subtop",
            p.clone(),
            json!(sign(n - 1) * n as i64),
            int_value(&e.segre().coeff(n - 1)),
        ),
        Check::new(
            "divisor_class",
            json!({ "n": n, "a": n, "b": -1 }),
            json!(0),
            result_value(divisor_top_intersection(n as i64, -1, &e), |v| int_value(&v)),
        ),
        Check::new(
            "section_space",
            p,
            json!(1),
            chase_value(cohomology::lemma1_section_space(n)),
        ),
        probe_exceptional_check(Variant::Hom, n, cfg),
    ]
}

fn lemma2(n: usize, cfg: &SampleConfig) -> Vec<Check> {
    let v = alt_bundle(n);
    let k = n / 2;
    let p = json!({ "n": n, "k": k, "bundle": "wedge(2, T(-1))" });
    vec![
        Check::new(
            "segre_subtop",
            p.clone(),
            int_value(&BigInt::from(-(k as i64))),
            int_value(&v.segre().coeff(n - 1)),
        ),
        Check::new(
            "divisor_class",
            json!({ "n": n, "a": k, "b": -1 }),
            json!(0),
            result_value(divisor_top_intersection(k as i64, -1, &v), |d| int_value(&d)),
        ),
        Check::new(
            "section_space",
            p,
            json!(1),
            chase_value(cohomology::lemma2_section_space(n)),
        ),
        probe_exceptional_check(Variant::Alt, n, cfg),
    ]
}

pub fn verify(target: Target, n: usize, cfg: &SampleConfig) -> Result<Report, VerifyError> {
    if n < 2 {
        return Err(VerifyError::TooSmall(n));
    }
    let checks = match target {
        Target::Thm1 => thm1(n, cfg),
        Target::Thm2 => thm2(n, cfg),
        Target::Lemma1 => lemma1(n, cfg),
        Target::Lemma2 => {
            if n % 2 == 1 {
                return Err(VerifyError::OddN { target, n });
            }
            lemma2(n, cfg)
        }
    };
    Ok(Report::new(checks))
}
