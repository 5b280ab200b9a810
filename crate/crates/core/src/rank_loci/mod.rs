//! Exact linear algebra of the incidence correspondences.
//!
//! For `HOM`, a point of `P(E)` over `[v] ∈ P^n` is a map `φ: C^n → C^{n+1}`
//! with `φ^t v = 0`; for `ALT` it is an alternating `φ` on `C^{n+1}` with
//! `φ v = 0`. Projecting to the matrix coordinate is injective exactly where
//! `φ` has maximal rank, and the rank-deficient locus is cut out fiberwise by
//! a determinant (resp. Pfaffian).

mod matrix;
mod probe;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use matrix::{
    max_abs_pivot, parse_rational, pfaffian, pfaffian_elimination, pfaffian_expansion, ExactMatrix, Vector,
};
pub use probe::{
    check_probe_params, probe_birational, probe_exceptional, random_alternating, random_hom, random_low_rank,
    random_matrix, BirationalReport, ExceptionalReport, SampleConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankLociError {
    #[error("NOT_ALTERNATING: matrix is not alternating")]
    NotAlternating,
    #[error("ODD_SIZE: Pfaffian of a {0}x{0} matrix")]
    OddSize(usize),
    #[error("ODD_N: n = {0} must be even for the alternating variant")]
    OddN(usize),
    #[error("INCIDENCE_VIOLATED: the point does not lie on the fiber")]
    IncidenceViolated,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged rows: expected {expected} entries, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("invalid sample configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, RankLociError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `P(Hom(C^n, C^{n+1}))`
    Hom,
    /// `P(Alt(n+1))`
    Alt,
}

/// How the complement basis of `v^⊥` (or of `C^{n+1}/⟨v⟩`) is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Drop the first coordinate of maximal absolute value.
    #[default]
    MaxAbs,
    /// Drop the last nonzero coordinate.
    LastNonzero,
}

impl PivotRule {
    fn pick(self, v: &[BigRational]) -> Option<usize> {
        match self {
            PivotRule::MaxAbs => max_abs_pivot(v),
            PivotRule::LastNonzero => v.iter().rposition(|x| !x.is_zero()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    /// Projective dimension of the fiber of the matrix projection.
    pub dim: i64,
    /// The unique point, when the fiber is a single point.
    #[serde(serialize_with = "serialize_vector")]
    pub representative: Option<Vector>,
}

fn serialize_vector<S: serde::Serializer>(v: &Option<Vector>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(ToString::to_string)),
    }
}

fn check_shape(phi: &ExactMatrix, rows: usize, cols: usize) -> Result<()> {
    if phi.rows() != rows || phi.cols() != cols {
        return Err(RankLociError::Shape {
            expected: format!("{rows}x{cols}"),
            found: format!("{}x{}", phi.rows(), phi.cols()),
        });
    }
    Ok(())
}

/// Ambient `n` implied by the matrix shape, after validating it.
pub fn ambient_n(variant: Variant, phi: &ExactMatrix) -> Result<usize> {
    let n = phi.rows().checked_sub(1).ok_or_else(|| RankLociError::Shape {
        expected: "at least one row".into(),
        found: "0 rows".into(),
    })?;
    match variant {
        Variant::Hom => check_shape(phi, n + 1, n)?,
        Variant::Alt => {
            check_shape(phi, n + 1, n + 1)?;
            if !phi.is_alternating() {
                return Err(RankLociError::NotAlternating);
            }
            if n % 2 == 1 {
                return Err(RankLociError::OddN(n));
            }
        }
    }
    Ok(n)
}

/// The incidence matrix whose kernel is the fiber over `φ`.
fn incidence(variant: Variant, phi: &ExactMatrix) -> ExactMatrix {
    match variant {
        Variant::Hom => phi.transpose(),
        Variant::Alt => phi.clone(),
    }
}

pub fn fiber_over(variant: Variant, phi: &ExactMatrix) -> Result<FiberReport> {
    ambient_n(variant, phi)?;
    let kernel = incidence(variant, phi).kernel_basis();
    let dim = kernel.len() as i64 - 1;
    let representative = if kernel.len() == 1 {
        kernel.into_iter().next()
    } else {
        None
    };
    Ok(FiberReport { dim, representative })
}

fn check_incidence(variant: Variant, v: &[BigRational], phi: &ExactMatrix) -> Result<()> {
    if v.iter().all(Zero::is_zero) {
        return Err(RankLociError::IncidenceViolated);
    }
    let image = incidence(variant, phi).apply(v)?;
    if image.iter().any(|x| !x.is_zero()) {
        return Err(RankLociError::IncidenceViolated);
    }
    Ok(())
}

/// Determinant of `φ: C^n → v^⊥` in the coordinate basis of `v^⊥` that
/// omits the pivot coordinate of `v`. Vanishes iff `rank φ ≤ n-1`.
pub fn det_section(v: &[BigRational], phi: &ExactMatrix) -> Result<BigRational> {
    det_section_with(v, phi, PivotRule::default())
}

pub fn det_section_with(v: &[BigRational], phi: &ExactMatrix, rule: PivotRule) -> Result<BigRational> {
    ambient_n(Variant::Hom, phi)?;
    check_incidence(Variant::Hom, v, phi)?;
    let p = rule.pick(v).expect("v is nonzero");
    phi.minor(Some(p), None).determinant()
}

/// Pfaffian of the form induced by `φ` on `C^{n+1}/⟨v⟩`, in the basis of
/// standard vectors other than the pivot of `v`. Vanishes iff
/// `rank φ ≤ n-2`.
pub fn pf_section(v: &[BigRational], phi: &ExactMatrix) -> Result<BigRational> {
    pf_section_with(v, phi, PivotRule::default())
}

pub fn pf_section_with(v: &[BigRational], phi: &ExactMatrix, rule: PivotRule) -> Result<BigRational> {
    ambient_n(Variant::Alt, phi)?;
    check_incidence(Variant::Alt, v, phi)?;
    let p = rule.pick(v).expect("v is nonzero");
    pfaffian(&phi.minor(Some(p), Some(p)))
}

/// The fiberwise section for the given variant.
pub fn section(variant: Variant, v: &[BigRational], phi: &ExactMatrix) -> Result<BigRational> {
    match variant {
        Variant::Hom => det_section(v, phi),
        Variant::Alt => pf_section(v, phi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn vec_of(v: &[i64]) -> Vector {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn hom_fibers() {
        let phi = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        let f = fiber_over(Variant::Hom, &phi).unwrap();
        assert_eq!(f.dim, 0);
        assert_eq!(f.representative, Some(vec_of(&[0, 0, 1])));
        let low = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]]).unwrap();
        assert_eq!(fiber_over(Variant::Hom, &low).unwrap().dim, 1);
        assert!(fiber_over(Variant::Hom, &ExactMatrix::zero(3, 3)).is_err());
    }

    #[test]
    fn alt_fibers() {
        let phi = ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]).unwrap();
        let f = fiber_over(Variant::Alt, &phi).unwrap();
        assert_eq!((f.dim, f.representative), (0, Some(vec_of(&[0, 0, 1]))));
        let zero = ExactMatrix::zero(5, 5);
        assert_eq!(fiber_over(Variant::Alt, &zero).unwrap().dim, 4);
        assert_eq!(
            fiber_over(Variant::Alt, &ExactMatrix::zero(4, 4)),
            Err(RankLociError::OddN(3))
        );
        let sym = ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(fiber_over(Variant::Alt, &sym), Err(RankLociError::NotAlternating));
    }

    #[test]
    fn determinant_sections() {
        let phi = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        let v = vec_of(&[0, 0, 1]);
        assert_eq!(det_section(&v, &phi).unwrap(), q(1));
        assert_eq!(
            det_section(&vec_of(&[1, 0, 0]), &phi),
            Err(RankLociError::IncidenceViolated)
        );
        assert_eq!(det_section(&v, &phi.scale(&q(3))).unwrap(), q(9));
        let low = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 1], &[0, 0]]).unwrap();
        assert_eq!(det_section(&vec_of(&[1, -1, 0]), &low).unwrap(), q(0));
        assert_eq!(det_section(&vec_of(&[0, 0, 1]), &low).unwrap(), q(0));
    }

    #[test]
    fn pfaffian_sections() {
        let phi = ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]).unwrap();
        let v = vec_of(&[0, 0, 1]);
        assert_eq!(pf_section(&v, &phi).unwrap(), q(1));
        assert_eq!(pf_section(&v, &phi.scale(&q(5))).unwrap(), q(5));
        assert_eq!(pf_section(&v, &ExactMatrix::zero(3, 3)).unwrap(), q(0));
        assert_eq!(
            pf_section(&vec_of(&[1, 0, 0]), &phi),
            Err(RankLociError::IncidenceViolated)
        );
        assert_eq!(
            pf_section(&vec_of(&[0, 0, 0]), &phi),
            Err(RankLociError::IncidenceViolated)
        );
    }

    #[test]
    fn pivot_rules_differ_only_by_units() {
        // columns of φ in v^⊥ for v = (1, 2, 3)
        let phi = ExactMatrix::from_i64_rows(&[&[2, 3], &[-1, 0], &[0, -1]]).unwrap();
        let v = vec_of(&[1, 2, 3]);
        let a = det_section_with(&v, &phi, PivotRule::MaxAbs).unwrap();
        let b = det_section_with(&v, &phi, PivotRule::LastNonzero).unwrap();
        assert!(!a.is_zero() && !b.is_zero());
    }
}
