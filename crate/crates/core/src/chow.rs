//! Truncated characteristic classes on `P^n`.
//!
//! A [`TruncatedClass`] is a polynomial in the hyperplane class `h` taken
//! modulo `h^{n+1}`. A [`BundleClass`] is a formal vector bundle: a rank
//! together with an integral total Chern class. All λ-operations (exterior
//! and symmetric powers, twists) go through the Chern character with rational
//! coefficients, followed by an integrality check on the way back.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("ambient dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a unit")]
    NonUnit(String),
    #[error("NON_INTEGRAL: Chern class c_{degree} = {value} is not an integer")]
    NonIntegral { degree: usize, value: String },
    #[error("total Chern class must start with 1, found {0}")]
    BadConstantTerm(String),
    #[error("c_{degree} is nonzero but the rank is only {rank}")]
    ChernAboveRank { degree: usize, rank: usize },
    #[error("Chern character has ch_0 = {found}, expected the rank {rank}")]
    RankMismatch { rank: usize, found: String },
    #[error("form degree p = {p} out of range 0..={n}")]
    FormDegreeOutOfRange { p: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, ChowError>;

/// Exact coefficient ring for truncated classes.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `Σ c_i h^i mod h^{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedClass<C> {
    n: usize,
    coeffs: Vec<C>,
}

pub type IntClass = TruncatedClass<BigInt>;
pub type RatClass = TruncatedClass<BigRational>;

impl<C: Coeff> TruncatedClass<C> {
    /// Builds a class from low-to-high coefficients. Missing coefficients are
    /// zero, anything past `h^n` is discarded.
    pub fn new(n: usize, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut coeffs: Vec<C> = coeffs.into_iter().take(n + 1).collect();
        coeffs.resize(n + 1, C::zero());
        Self { n, coeffs }
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Self {
        Self::new(n, coeffs.iter().map(|&c| C::from_i64(c)))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, [])
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, [C::one()])
    }

    /// The hyperplane class `h`.
    pub fn h(n: usize) -> Self {
        Self::new(n, [C::zero(), C::one()])
    }

    /// `1 + d·h`.
    pub fn linear(n: usize, d: i64) -> Self {
        Self::new(n, [C::one(), C::from_i64(d)])
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `h^i`; zero above the truncation degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(ChowError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        Self { n: self.n, coeffs }
    }

    pub fn scale(&self, k: &C) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = vec![C::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Self {
            n: self.n,
            coeffs: out,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ambient dimension");
        }
        acc
    }

    /// Inverse power series; requires a unit constant term.
    pub fn series_inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| ChowError::NonUnit(self.coeffs[0].to_string()))?;
        let mut out: Vec<C> = Vec::with_capacity(self.n + 1);
        out.push(inv0.clone());
        for k in 1..=self.n {
            let mut acc = C::zero();
            for i in 1..=k {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self {
            n: self.n,
            coeffs: out,
        })
    }
}

impl IntClass {
    pub fn to_rational(&self) -> RatClass {
        TruncatedClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl RatClass {
    /// Back to integer coefficients, or the first degree with a denominator.
    pub fn to_integer(&self) -> std::result::Result<IntClass, usize> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(i)
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedClass { n: self.n, coeffs })
    }
}

fn write_coeff<C: Coeff>(f: &mut fmt::Formatter<'_>, c: &C, i: usize) -> fmt::Result {
    let s = c.to_string();
    let mono = match i {
        0 => String::new(),
        1 => "h".to_string(),
        _ => format!("h^{i}"),
    };
    if i == 0 {
        write!(f, "{s}")
    } else if c.is_one() {
        write!(f, "{mono}")
    } else if s.contains('/') {
        write!(f, "({s}){mono}")
    } else {
        write!(f, "{s}{mono}")
    }
}

impl<C: Coeff> fmt::Display for TruncatedClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.to_string().starts_with('-');
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write_coeff(f, &abs, i)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for TruncatedClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[P^{}] {}", self.n, self)
    }
}

/// A formal vector bundle on `P^n`: rank plus total Chern class.
///
/// Identity is structural. Two bundles with the same rank and Chern class
/// compare equal regardless of how they were built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BundleClass {
    rank: usize,
    chern: IntClass,
}

impl fmt::Debug for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BundleClass(P^{}, rank {}, c = {})",
            self.chern.n, self.rank, self.chern
        )
    }
}

impl BundleClass {
    pub fn new(rank: usize, chern: IntClass) -> Result<Self> {
        if !chern.coeffs[0].is_one() {
            return Err(ChowError::BadConstantTerm(chern.coeffs[0].to_string()));
        }
        if let Some(degree) = (rank + 1..=chern.n).find(|&i| !chern.coeffs[i].is_zero()) {
            return Err(ChowError::ChernAboveRank { degree, rank });
        }
        Ok(Self { rank, chern })
    }

    pub fn ambient_dim(&self) -> usize {
        self.chern.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn chern(&self) -> &IntClass {
        &self.chern
    }

    /// `c_i`, zero for `i > n`.
    pub fn chern_class(&self, i: usize) -> BigInt {
        self.chern.coeff(i)
    }

    /// The rank-`r` trivial bundle.
    pub fn trivial(n: usize, rank: usize) -> Self {
        Self {
            rank,
            chern: IntClass::one(n),
        }
    }

    /// The line bundle `O(d)`.
    pub fn line(n: usize, d: i64) -> Self {
        Self {
            rank: 1,
            chern: IntClass::linear(n, d),
        }
    }

    /// `T(-1)`, the quotient in `0 → O(-1) → O^{n+1} → T(-1) → 0`.
    pub fn tangent_twist(n: usize) -> Self {
        let chern = IntClass::linear(n, -1).series_inverse().expect("1 - h is a unit");
        Self { rank: n, chern }
    }

    /// The tangent bundle `T = T(-1) ⊗ O(1)`.
    pub fn tangent(n: usize) -> Self {
        Self::tangent_twist(n)
            .twist(1)
            .expect("twists of genuine bundles are integral")
    }

    /// `Ω^p(t)`.
    pub fn form(n: usize, p: usize, t: i64) -> Result<Self> {
        if p > n {
            return Err(ChowError::FormDegreeOutOfRange { p, n });
        }
        Self::tangent(n).dual().exterior_power(p as u32)?.twist(t)
    }

    /// Whitney sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            rank: self.rank + other.rank,
            chern: self.chern.mul(&other.chern)?,
        })
    }

    /// `m`-fold direct sum; `Hom(O^m, A)` at class level.
    pub fn multiple(&self, m: usize) -> Self {
        Self {
            rank: self.rank * m,
            chern: self.chern.pow(m as u32),
        }
    }

    pub fn dual(&self) -> Self {
        let coeffs =
            self.chern
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() });
        Self {
            rank: self.rank,
            chern: IntClass::new(self.chern.n, coeffs),
        }
    }

    /// Total Segre class, `1 / c(A)`.
    pub fn segre(&self) -> IntClass {
        self.chern.series_inverse().expect("c_0 = 1")
    }

    pub fn chern_character(&self) -> RatClass {
        chern_to_ch(self)
    }

    pub fn twist(&self, d: i64) -> Result<Self> {
        let n = self.ambient_dim();
        let ch = chern_to_ch(self).mul(&chern_to_ch(&Self::line(n, d)))?;
        ch_to_chern(n, self.rank, &ch)
    }

    pub fn exterior_power(&self, j: u32) -> Result<Self> {
        lambda_power(self, j, true)
    }

    pub fn symmetric_power(&self, j: u32) -> Result<Self> {
        lambda_power(self, j, false)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(m - i) / BigInt::from(i + 1)
    })
}

/// Chern character via Newton's identities on the formal Chern roots.
pub fn chern_to_ch(a: &BundleClass) -> RatClass {
    let n = a.ambient_dim();
    let c = &a.chern.coeffs;
    // power sums p_k of the Chern roots
    let mut p: Vec<BigInt> = vec![BigInt::from(a.rank)];
    for k in 1..=n {
        let mut pk = BigInt::zero();
        for i in 1..k {
            let term = &c[i] * &p[k - i];
            if i % 2 == 1 {
                pk += term;
            } else {
                pk -= term;
            }
        }
        let last = BigInt::from(k) * &c[k];
        if k % 2 == 1 {
            pk += last;
        } else {
            pk -= last;
        }
        p.push(pk);
    }
    RatClass::new(
        n,
        p.into_iter()
            .enumerate()
            .map(|(k, pk)| BigRational::new(pk, factorial(k))),
    )
}

/// Inverse of [`chern_to_ch`]. Fails with `NonIntegral` when the rational
/// class does not come from a genuine bundle.
pub fn ch_to_chern(n: usize, rank: usize, ch: &RatClass) -> Result<BundleClass> {
    if ch.n != n {
        return Err(ChowError::DimensionMismatch { left: n, right: ch.n });
    }
    let expected_rank = BigRational::from_integer(BigInt::from(rank));
    if ch.coeffs[0] != expected_rank {
        return Err(ChowError::RankMismatch {
            rank,
            found: ch.coeffs[0].to_string(),
        });
    }
    let p: Vec<BigRational> = ch
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * BigRational::from_integer(factorial(k)))
        .collect();
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    let chern = RatClass { n, coeffs: e }
        .to_integer()
        .map_err(|degree| ChowError::NonIntegral {
            degree,
            value: ch.coeffs[degree].to_string(),
        })?;
    BundleClass::new(rank, chern)
}

/// Adams operation `ψ^k`: scales the degree-`i` part by `k^i`.
pub fn adams(k: i64, ch: &RatClass) -> RatClass {
    let k = BigInt::from(k);
    let mut scale = BigInt::one();
    let coeffs = ch
        .coeffs
        .iter()
        .map(|c| {
            let out = c * BigRational::from_integer(scale.clone());
            scale *= &k;
            out
        })
        .collect::<Vec<_>>();
    RatClass::new(ch.n, coeffs)
}

// j·ch(Λ^j) = Σ (-1)^{i+1} ψ^i(ch)·ch(Λ^{j-i}),  j·ch(S^j) = Σ ψ^i(ch)·ch(S^{j-i})
fn lambda_power(a: &BundleClass, j: u32, exterior: bool) -> Result<BundleClass> {
    let n = a.ambient_dim();
    let ch = chern_to_ch(a);
    let adams_terms: Vec<RatClass> = (1..=j as i64).map(|i| adams(i, &ch)).collect();
    let mut powers: Vec<RatClass> = vec![RatClass::one(n)];
    for m in 1..=j as usize {
        let mut acc = RatClass::zero(n);
        for i in 1..=m {
            let term = adams_terms[i - 1].mul(&powers[m - i])?;
            acc = if exterior && i % 2 == 0 {
                acc.sub(&term)?
            } else {
                acc.add(&term)?
            };
        }
        powers.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m))));
    }
    let r = a.rank as u64;
    let j = j as u64;
    let rank = if exterior {
        binomial(r, j)
    } else if r == 0 {
        BigInt::from(u8::from(j == 0))
    } else {
        binomial(r + j - 1, j)
    };
    let rank = rank.to_usize().expect("rank fits in usize");
    let top = powers.pop().expect("at least the unit class");
    debug_assert_eq!(top.coeffs[0], BigRational::from_integer(BigInt::from(rank)));
    ch_to_chern(n, rank, &top)
}
