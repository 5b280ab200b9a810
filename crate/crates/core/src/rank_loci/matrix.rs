use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RankLociError, Result};

pub type Vector = Vec<BigRational>;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(RankLociError::Ragged {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    /// An alternating matrix from its strict upper triangle, row by row.
    pub fn alternating_from_upper(size: usize, upper: &[BigRational]) -> Self {
        assert_eq!(upper.len(), size * size.saturating_sub(1) / 2);
        let mut m = Self::zero(size, size);
        let mut it = upper.iter();
        for i in 0..size {
            for j in i + 1..size {
                let v = it.next().expect("length checked").clone();
                m.set(j, i, -v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    /// Parses a JSON array of rows. Entries are integers or strings `"p/q"`.
    pub fn from_json(src: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(src).map_err(|e| RankLociError::Parse(e.to_string()))?;
        let rows = value
            .as_array()
            .ok_or_else(|| RankLociError::Parse("expected an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| RankLociError::Parse("each row must be an array".into()))?
                    .iter()
                    .map(parse_entry)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(RankLociError::Shape {
                expected: format!("{} rows", self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        }))
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(RankLociError::Shape {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Drops row `r` and column `c` (either optional).
    pub fn minor(&self, r: Option<usize>, c: Option<usize>) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != c).collect();
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    // Each row multiplied by the lcm of its denominators; returns the
    // integer rows and the product of the multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let l = self
                    .row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                total *= &l;
                self.row(i).iter().map(|e| (e * &l).to_integer()).collect()
            })
            .collect();
        (rows, total)
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss(&mut m, self.cols).0
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(RankLociError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let (mut m, scale) = self.integer_rows();
        let (rank, swaps) = bareiss(&mut m, n);
        if rank < n {
            return Ok(BigRational::zero());
        }
        let mut det = m[n - 1][n - 1].clone();
        if swaps % 2 == 1 {
            det = -det;
        }
        Ok(BigRational::new(det, scale))
    }

    /// Basis of the right kernel, from the reduced row echelon form. One
    /// vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for e in m[r].iter_mut() {
                *e *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[row][free].clone();
                }
                v
            })
            .collect()
    }
}

// Returns (rank, row swaps). After the call, row k of the echelon part holds
// (k+1)-minors, so the last pivot of a full-rank square matrix is its
// determinant.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> (usize, usize) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    (r, swaps)
}

fn parse_entry(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(num) => num
            .as_i64()
            .map(int)
            .ok_or_else(|| RankLociError::Parse(format!("non-integer number {num}; use \"p/q\""))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(RankLociError::Parse(format!("unsupported entry {other}"))),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || RankLociError::Parse(format!("bad rational {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Pfaffian of an alternating matrix of even size.
pub fn pfaffian(m: &ExactMatrix) -> Result<BigRational> {
    check_pfaffian_input(m)?;
    if m.rows <= 6 {
        Ok(pfaffian_expansion(m))
    } else {
        Ok(pfaffian_elimination(m))
    }
}

fn check_pfaffian_input(m: &ExactMatrix) -> Result<()> {
    if !m.is_alternating() {
        return Err(RankLociError::NotAlternating);
    }
    if m.rows % 2 == 1 {
        return Err(RankLociError::OddSize(m.rows));
    }
    Ok(())
}

/// Expansion along the first row:
/// `Pf(A) = Σ_j (-1)^{j+1} a_{0j} Pf(A with rows/cols 0, j removed)`.
pub fn pfaffian_expansion(m: &ExactMatrix) -> BigRational {
    let idx: Vec<usize> = (0..m.rows).collect();
    expand(m, &idx)
}

fn expand(m: &ExactMatrix, idx: &[usize]) -> BigRational {
    if idx.is_empty() {
        return BigRational::one();
    }
    let first = idx[0];
    let mut acc = BigRational::zero();
    for (k, &j) in idx.iter().enumerate().skip(1) {
        let a = m.get(first, j);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = a * expand(m, &rest);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Skew-symmetric elimination: clear the first two rows and columns with a
/// unimodular congruence and recurse on the trailing block.
pub fn pfaffian_elimination(m: &ExactMatrix) -> BigRational {
    let mut a = m.to_rows();
    let mut result = BigRational::one();
    while !a.is_empty() {
        let size = a.len();
        let Some(j) = (1..size).find(|&j| !a[0][j].is_zero()) else {
            return BigRational::zero();
        };
        if j != 1 {
            a.swap(1, j);
            for row in a.iter_mut() {
                row.swap(1, j);
            }
            result = -result;
        }
        let piv = a[0][1].clone();
        result *= &piv;
        let next: Vec<Vec<BigRational>> = (2..size)
            .map(|i| {
                (2..size)
                    .map(|l| &a[i][l] + (&a[i][0] * &a[1][l] - &a[i][1] * &a[0][l]) / &piv)
                    .collect()
            })
            .collect();
        a = next;
    }
    result
}

/// Index of the first coordinate with maximal absolute value.
pub fn max_abs_pivot(v: &[BigRational]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if best.is_none_or(|b| x.abs() > v[b].abs()) {
            best = Some(i);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zero(3, 4).rank(), 0);
        let m = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let m = ExactMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn determinants() {
        let m = ExactMatrix::from_i64_rows(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.determinant().unwrap(), q(0, 1));
        let m = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(-1, 1));
        let m = ExactMatrix::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(5, 1), q(2, 3)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(1, 3));
        assert!(ExactMatrix::zero(2, 3).determinant().is_err());
    }

    #[test]
    fn kernels() {
        let phi = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        assert_eq!(
            phi.transpose().kernel_basis(),
            vec![vec![q(0, 1), q(0, 1), q(1, 1)]]
        );
        assert!(ExactMatrix::identity(4).kernel_basis().is_empty());
        let m = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pfaffian_small() {
        let m = ExactMatrix::alternating_from_upper(2, &[q(7, 3)]);
        assert_eq!(pfaffian(&m).unwrap(), q(7, 3));
        let u: Vec<BigRational> = [2, 3, 5, 7, 11, 13].iter().map(|&v| q(v, 1)).collect();
        let m = ExactMatrix::alternating_from_upper(4, &u);
        // m01 m23 - m02 m13 + m03 m12
        let expected = q(2 * 13 - 3 * 11 + 5 * 7, 1);
        assert_eq!(pfaffian_expansion(&m), expected);
        assert_eq!(pfaffian_elimination(&m), expected);
        assert_eq!(pfaffian(&ExactMatrix::zero(3, 3)), Err(RankLociError::OddSize(3)));
        let bad = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(pfaffian(&bad), Err(RankLociError::NotAlternating));
        // block diagonal J ⊕ J has Pfaffian 1
        let j =
            ExactMatrix::alternating_from_upper(4, &[q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(pfaffian_elimination(&j), q(1, 1));
    }

    #[test]
    fn json_input() {
        let m = ExactMatrix::from_json(r#"[[0, "1/2"], ["-1/2", 0]]"#).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), q(1, 2));
        assert!(ExactMatrix::from_json("[[1, 2], [3]]").is_err());
        assert!(ExactMatrix::from_json(r#"[["1/0"]]"#).is_err());
        assert!(ExactMatrix::from_json("[[1.5]]").is_err());
        assert!(ExactMatrix::from_json("{}").is_err());
    }

    #[test]
    fn pivots() {
        assert_eq!(max_abs_pivot(&[q(1, 1), q(-3, 1), q(3, 1)]), Some(1));
        assert_eq!(max_abs_pivot(&[q(0, 1), q(0, 1)]), None);
    }
}
