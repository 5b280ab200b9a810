//! The Chow ring of a projective bundle `π: P(E) → P^n`.
//!
//! Classes are polynomials in `h = π*(hyperplane)` and the tautological class
//! `ξ = O_{P(E)}(1)`, subject to `h^{n+1} = 0` and the Grothendieck relation
//!
//! ```text
//! ξ^r = Σ_{i=1}^{min(r,n)} (-1)^{i+1} c_i(E) h^i ξ^{r-i},   r = rank E.
//! ```
//!
//! Note on conventions: this is the relation `Σ c_i(E^∨) ξ^{r-i} = 0`, so
//! replacing `E` by its dual and `ξ` by `-ξ` recovers the other common sign
//! choice. With this convention the pushforward of `ξ^{r-1+i}` is
//! `(-1)^i s_i(E)`, which is what [`segre_pushforward`] checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chow::BundleClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("DEGREE_MISMATCH: class has a term of degree {found}, top degree is {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("projective bundle of a rank-0 bundle is empty")]
    ZeroRank,
    #[error("classes live on different projective bundles")]
    BaseMismatch,
    #[error("index {i} outside 0..={n}")]
    IndexOutOfRange { i: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, ProjError>;

/// `Σ a_{ij} h^i ξ^j` on `P(E)`. Terms with `i > n` are dropped eagerly.
///
/// Equality compares normal forms, so two classes are equal exactly when
/// they agree in the Chow ring.
#[derive(Clone)]
pub struct MixedClass {
    base: BundleClass,
    // keyed (xi exponent, h exponent) so the highest ξ-power comes last
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl MixedClass {
    pub fn zero(base: &BundleClass) -> Result<Self> {
        if base.rank() == 0 {
            return Err(ProjError::ZeroRank);
        }
        Ok(Self {
            base: base.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// `coeff · h^i ξ^j`.
    pub fn monomial(base: &BundleClass, i: usize, j: usize, coeff: impl Into<BigInt>) -> Result<Self> {
        let mut out = Self::zero(base)?;
        out.add_term(i, j, coeff.into());
        Ok(out)
    }

    pub fn one(base: &BundleClass) -> Result<Self> {
        Self::monomial(base, 0, 0, 1)
    }

    pub fn h(base: &BundleClass) -> Result<Self> {
        Self::monomial(base, 1, 0, 1)
    }

    pub fn xi(base: &BundleClass) -> Result<Self> {
        Self::monomial(base, 0, 1, 1)
    }

    pub fn base(&self) -> &BundleClass {
        &self.base
    }

    /// `dim P(E) = n + rank - 1`.
    pub fn top_degree(&self) -> usize {
        self.base.ambient_dim() + self.base.rank() - 1
    }

    /// Nonzero terms as `((h exponent, ξ exponent), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> {
        self.terms.iter().map(|(&(j, i), c)| ((i, j), c))
    }

    /// Coefficient of `h^i ξ^j` as stored (not reduced).
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.terms.get(&(j, i)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        if i > self.base.ambient_dim() || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, i)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(ProjError::BaseMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let mut out = self.clone();
        for (&(j, i), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = Self {
            base: self.base.clone(),
            terms: BTreeMap::new(),
        };
        for (&(j, i), c) in &self.terms {
            out.add_term(i, j, c * &k);
        }
        out
    }

    /// Product without applying the Grothendieck relation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let mut out = Self {
            base: self.base.clone(),
            terms: BTreeMap::new(),
        };
        for (&(j1, i1), a) in &self.terms {
            for (&(j2, i2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.base).expect("base has positive rank");
        for _ in 0..e {
            acc = acc.mul(self).expect("same base").reduce();
        }
        acc
    }

    /// Normal form: every ξ-exponent below the rank.
    pub fn reduce(&self) -> Self {
        let r = self.base.rank();
        let n = self.base.ambient_dim();
        let relation: Vec<(usize, BigInt)> = (1..=r.min(n))
            .map(|l| {
                let c = self.base.chern_class(l);
                (l, if l % 2 == 1 { c } else { -c })
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = self.clone();
        while let Some((&(j, i), _)) = out.terms.last_key_value() {
            if j < r {
                break;
            }
            let a = out.terms.remove(&(j, i)).expect("key just seen");
            for (l, c) in &relation {
                out.add_term(i + l, j - l, &a * c);
            }
        }
        out
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|&(j, _)| j < self.base.rank())
    }

    /// Degree of `P(E)`-valued top class against the point class
    /// `h^n ξ^{rank-1}`.
    pub fn integral(&self) -> Result<BigInt> {
        let top = self.top_degree();
        if let Some(&(j, i)) = self.terms.keys().find(|&&(j, i)| i + j != top) {
            return Err(ProjError::DegreeMismatch {
                expected: top,
                found: i + j,
            });
        }
        let reduced = self.reduce();
        Ok(reduced.coeff(self.base.ambient_dim(), self.base.rank() - 1))
    }
}

impl PartialEq for MixedClass {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.reduce().terms == other.reduce().terms
    }
}

impl fmt::Debug for MixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedClass(")?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, ((i, j), c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·h^{i}ξ^{j}")?;
        }
        write!(f, " over {:?})", self.base)
    }
}

/// Degree of the map given by `|ξ|`: `∫ ξ^{n+rank-1}`.
pub fn taut_degree(a: &BundleClass) -> Result<BigInt> {
    let xi = MixedClass::xi(a)?;
    xi.pow(xi.top_degree() as u32).integral()
}

/// `∫ (a·ξ + b·h) · ξ^{n+rank-2}`.
pub fn divisor_top_intersection(a: i64, b: i64, bundle: &BundleClass) -> Result<BigInt> {
    let divisor = MixedClass::xi(bundle)?
        .scale(a)
        .add(&MixedClass::h(bundle)?.scale(b))?;
    let top = divisor.top_degree();
    let rest = MixedClass::xi(bundle)?.pow(top.saturating_sub(1) as u32);
    divisor.mul(&rest)?.integral()
}

/// `(-1)^i ∫ h^{n-i} ξ^{rank-1+i}`, which equals the degree-`i` Segre class.
pub fn segre_pushforward(a: &BundleClass, i: usize) -> Result<BigInt> {
    let n = a.ambient_dim();
    if i > n {
        return Err(ProjError::IndexOutOfRange { i, n });
    }
    if a.rank() == 0 {
        return Err(ProjError::ZeroRank);
    }
    let value = MixedClass::monomial(a, n - i, a.rank() - 1 + i, 1)?.integral()?;
    Ok(if i % 2 == 1 { -value } else { value })
}

/// `(-1)^n s_n(A)`: the degree computed from the Segre series alone.
pub fn degree_from_segre(a: &BundleClass) -> BigInt {
    let n = a.ambient_dim();
    let s = a.segre().coeff(n);
    if n % 2 == 1 {
        -s
    } else {
        s
    }
}

/// The point class `h^n ξ^{rank-1}`.
pub fn point_class(a: &BundleClass) -> Result<MixedClass> {
    if a.rank() == 0 {
        return Err(ProjError::ZeroRank);
    }
    MixedClass::monomial(a, a.ambient_dim(), a.rank() - 1, BigInt::one())
}
