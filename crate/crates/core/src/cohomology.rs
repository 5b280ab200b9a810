//! Dimensions of sheaf cohomology on `P^n`.
//!
//! Only direct sums of line bundles `O(d)` and twisted forms `Ω^p(t)` are
//! handled, through their closed-form tables. Cokernels of exact complexes are
//! computed by [`chase`], which walks the short exact sequences one term at a
//! time and refuses to report a dimension that the vanishing pattern alone
//! does not force.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("AMBIGUOUS({q}): H^{q} of the cokernel after term {stage} is not forced")]
    Ambiguous { q: usize, stage: usize },
    #[error("form degree p = {p} out of range 0..={n}")]
    FormDegreeOutOfRange { p: usize, n: usize },
    #[error("ODD_N: n = {0} is odd")]
    OddN(usize),
    #[error("n = {0} is below the supported range")]
    TooSmall(usize),
    #[error("an exact complex needs at least one term")]
    EmptyComplex,
    #[error("complex is not exact: H^0 of term {stage} cannot contain H^0 of the previous cokernel")]
    NotExact { stage: usize },
}

pub type Result<T> = std::result::Result<T, CohomologyError>;

/// `dim H^q` for `q = 0..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohTable {
    dims: Vec<BigUint>,
}

impl CohTable {
    pub fn zero(n: usize) -> Self {
        Self {
            dims: vec![BigUint::zero(); n + 1],
        }
    }

    fn single(n: usize, q: usize, d: BigUint) -> Self {
        let mut t = Self::zero(n);
        t.dims[q] = d;
        t
    }

    pub fn from_dims(dims: Vec<BigUint>) -> Self {
        Self { dims }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    pub fn get(&self, q: usize) -> BigUint {
        self.dims.get(q).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(Zero::is_zero)
    }

    pub fn nonzero_entries(&self) -> usize {
        self.dims.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.dims.iter().enumerate().fold(BigInt::zero(), |acc, (q, d)| {
            let d = BigInt::from(d.clone());
            if q % 2 == 0 {
                acc + d
            } else {
                acc - d
            }
        })
    }

    fn add_scaled(&mut self, other: &Self, k: &BigUint) {
        for (a, b) in self.dims.iter_mut().zip(&other.dims) {
            *a += b * k;
        }
    }
}

impl fmt::Display for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .dims
            .iter()
            .enumerate()
            .map(|(q, d)| format!("h^{q}={d}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohTable[{self}]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SheafAtom {
    /// `O(d)`
    Line(i64),
    /// `Ω^p(t)`
    Form { p: usize, t: i64 },
}

impl fmt::Display for SheafAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafAtom::Line(d) => write!(f, "O({d})"),
            SheafAtom::Form { p, t } => write!(f, "Omega^{p}({t})"),
        }
    }
}

/// A finite direct sum of atoms with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SheafTerm {
    atoms: BTreeMap<SheafAtom, BigUint>,
}

impl SheafTerm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(atom: SheafAtom, mult: impl Into<BigUint>) -> Self {
        Self::new().with(atom, mult)
    }

    pub fn with(mut self, atom: SheafAtom, mult: impl Into<BigUint>) -> Self {
        let mult = mult.into();
        if !mult.is_zero() {
            *self.atoms.entry(atom).or_default() += mult;
        }
        self
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&SheafAtom, &BigUint)> {
        self.atoms.iter()
    }
}

impl fmt::Display for SheafTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, m)| {
                if m.is_one() {
                    a.to_string()
                } else {
                    format!("{a}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `0 → T_0 → T_1 → ... → T_m → Q → 0`, exact; `Q` is left implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactComplex {
    terms: Vec<SheafTerm>,
}

impl ExactComplex {
    pub fn new(terms: Vec<SheafTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(CohomologyError::EmptyComplex);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[SheafTerm] {
        &self.terms
    }
}

pub fn binomial(m: &BigInt, k: u64) -> BigUint {
    // generalized binomial for possibly negative top; only used where the
    // result is non-negative
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    let v = num / den;
    v.to_biguint().unwrap_or_default()
}

/// `dim S^k(C^m)`.
pub fn dim_sym(m: u64, k: u64) -> BigUint {
    if m == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(&BigInt::from(m + k - 1), k)
}

/// `dim Λ^k(C^m)`.
pub fn dim_wedge(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    binomial(&BigInt::from(m), k)
}

/// `H^q(P^n, O(d))`.
pub fn line_cohomology(n: usize, d: i64) -> CohTable {
    let nn = n as i64;
    if d >= 0 {
        CohTable::single(n, 0, binomial(&BigInt::from(n as i64 + d), n as u64))
    } else if d <= -nn - 1 {
        CohTable::single(n, n, binomial(&BigInt::from(-d - 1), n as u64))
    } else {
        CohTable::zero(n)
    }
}

/// Bott's formula for `H^q(P^n, Ω^p(t))`.
pub fn bott(n: usize, p: usize, t: i64) -> Result<CohTable> {
    if p > n {
        return Err(CohomologyError::FormDegreeOutOfRange { p, n });
    }
    let (nn, pp) = (n as i64, p as i64);
    Ok(if t == 0 {
        CohTable::single(n, p, BigUint::one())
    } else if t > pp {
        let d =
            binomial(&BigInt::from(t + nn - pp), (n - p) as u64) * binomial(&BigInt::from(t - 1), p as u64);
        CohTable::single(n, 0, d)
    } else if t < pp - nn {
        let d = binomial(&BigInt::from(pp - t), p as u64) * binomial(&BigInt::from(-t - 1), (n - p) as u64);
        CohTable::single(n, n, d)
    } else {
        CohTable::zero(n)
    })
}

pub fn atom_cohomology(n: usize, atom: &SheafAtom) -> Result<CohTable> {
    match *atom {
        SheafAtom::Line(d) => Ok(line_cohomology(n, d)),
        SheafAtom::Form { p, t } => bott(n, p, t),
    }
}

pub fn term_cohomology(n: usize, term: &SheafTerm) -> Result<CohTable> {
    let mut out = CohTable::zero(n);
    for (atom, mult) in term.atoms() {
        out.add_scaled(&atom_cohomology(n, atom)?, mult);
    }
    Ok(out)
}

// For 0 → A → B → C → 0 with A, B known, the long exact sequence pins C once
// the ranks a_q of H^q(A) → H^q(B) are known:
//   dim H^q(C) = (h^q(B) - a_q) + (h^{q+1}(A) - a_{q+1}).
// a_0 = h^0(A) by left exactness; for q ≥ 1, a_q is forced only when one side
// vanishes.
fn cokernel_table(a: &CohTable, b: &CohTable, stage: usize) -> Result<CohTable> {
    let n = a.ambient_dim();
    if a.dims[0] > b.dims[0] {
        return Err(CohomologyError::NotExact { stage });
    }
    let ranks: Vec<Option<BigUint>> = (0..=n)
        .map(|q| {
            if q == 0 {
                Some(a.dims[0].clone())
            } else if a.dims[q].is_zero() || b.dims[q].is_zero() {
                Some(BigUint::zero())
            } else {
                None
            }
        })
        .collect();
    let mut out = CohTable::zero(n);
    for q in 0..=n {
        let here = ranks[q].as_ref().ok_or(CohomologyError::Ambiguous { q, stage })?;
        let mut d = &b.dims[q] - here;
        if q < n {
            let next = ranks[q + 1]
                .as_ref()
                .ok_or(CohomologyError::Ambiguous { q, stage })?;
            d += &a.dims[q + 1] - next;
        }
        out.dims[q] = d;
    }
    Ok(out)
}

/// Cohomology of the cokernel of an exact complex.
pub fn chase(n: usize, complex: &ExactComplex) -> Result<CohTable> {
    let mut terms = complex.terms.iter();
    let first = terms.next().expect("complex is non-empty");
    let mut current = term_cohomology(n, first)?;
    for (stage, term) in terms.enumerate() {
        let next = term_cohomology(n, term)?;
        current = cokernel_table(&current, &next, stage + 1)?;
    }
    Ok(current)
}

/// `χ` of the cokernel predicted by the alternating sum of the terms.
pub fn complex_euler_characteristic(n: usize, complex: &ExactComplex) -> Result<BigInt> {
    let m = complex.terms.len() - 1;
    let mut chi = BigInt::zero();
    for (i, term) in complex.terms.iter().enumerate() {
        let c = term_cohomology(n, term)?.euler_characteristic();
        if (m - i) % 2 == 0 {
            chi += c;
        } else {
            chi -= c;
        }
    }
    Ok(chi)
}

/// Koszul resolution of `Ω^p(t)` by line bundles:
/// `0 → O(t-n-1)^{C(n+1,n+1)} → ... → O(t-p-1)^{C(n+1,p+1)} → Ω^p(t) → 0`.
pub fn koszul_resolution(n: usize, p: usize, t: i64) -> Result<ExactComplex> {
    if p > n {
        return Err(CohomologyError::FormDegreeOutOfRange { p, n });
    }
    let terms = (p + 1..=n + 1)
        .rev()
        .map(|j| SheafTerm::atom(SheafAtom::Line(t - j as i64), dim_wedge(n as u64 + 1, j as u64)))
        .collect();
    ExactComplex::new(terms)
}

/// Twisted resolution of `S^n(E)(-1)` for `E = Hom(O^n, T(-1))`, built from
/// `0 → O(-1)^n → O^{n(n+1)} → E → 0`. Term `j` (listed from `j = n` down to
/// `0`) is `O(-j-1)` with multiplicity `dim S^{n-j}(C^{n(n+1)}) · dim Λ^j(C^n)`.
pub fn lemma1_complex(n: usize) -> Result<ExactComplex> {
    let nn = n as u64;
    let terms = (0..=n)
        .rev()
        .map(|j| {
            let j64 = j as u64;
            let mult = dim_sym(nn * (nn + 1), nn - j64) * dim_wedge(nn, j64);
            SheafTerm::atom(SheafAtom::Line(-(j as i64) - 1), mult)
        })
        .collect();
    ExactComplex::new(terms)
}

pub fn lemma1_section_space(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(CohomologyError::TooSmall(n));
    }
    Ok(chase(n, &lemma1_complex(n)?)?.get(0))
}

/// Twisted resolution of `S^k(V)(-1)`, `V = Λ²T(-1)`, `n = 2k`, built from
/// `0 → T(-2) → Λ²O^{n+1} → V → 0`. Term `j` is
/// `Λ^j(T(-2))(-1) ≅ Ω^{n-j}(n-2j)` with multiplicity
/// `dim S^{k-j}(C^{n(n+1)/2})`.
pub fn lemma2_complex(n: usize) -> Result<ExactComplex> {
    if n % 2 == 1 {
        return Err(CohomologyError::OddN(n));
    }
    let k = n / 2;
    let alt_dim = (n * (n + 1) / 2) as u64;
    let terms = (0..=k)
        .rev()
        .map(|j| {
            let atom = SheafAtom::Form {
                p: n - j,
                t: n as i64 - 2 * j as i64,
            };
            SheafTerm::atom(atom, dim_sym(alt_dim, (k - j) as u64))
        })
        .collect();
    ExactComplex::new(terms)
}

pub fn lemma2_section_space(n: usize) -> Result<BigUint> {
    if n % 2 == 1 {
        return Err(CohomologyError::OddN(n));
    }
    if n < 2 {
        return Err(CohomologyError::TooSmall(n));
    }
    Ok(chase(n, &lemma2_complex(n)?)?.get(0))
}

/// `0 → O(-1)^n → O^{n(n+1)} → E → 0`.
pub fn hom_bundle_complex(n: usize) -> ExactComplex {
    ExactComplex {
        terms: vec![
            SheafTerm::atom(SheafAtom::Line(-1), n as u64),
            SheafTerm::atom(SheafAtom::Line(0), (n * (n + 1)) as u64),
        ],
    }
}

/// `0 → T(-2) → Λ²O^{n+1} → Λ²T(-1) → 0`, with `T(-2) ≅ Ω^{n-1}(n-1)`.
pub fn alt_bundle_complex(n: usize) -> ExactComplex {
    ExactComplex {
        terms: vec![
            SheafTerm::atom(
                SheafAtom::Form {
                    p: n - 1,
                    t: n as i64 - 1,
                },
                1u32,
            ),
            SheafTerm::atom(SheafAtom::Line(0), dim_wedge(n as u64 + 1, 2)),
        ],
    }
}
