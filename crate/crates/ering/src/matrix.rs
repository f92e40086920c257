//! Exact rational matrices and positive semidefiniteness.
//!
//! `RatMatrix` is a plain square matrix over [`Rational`]. `SymMatrix` is a
//! constructor-validated symmetric one; symmetry is the invariant that makes
//! the coefficient-sign test for positive semidefiniteness sound.

use crate::rational::Rational;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
}

/// Square matrix over the rationals, row-major storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::RowLength { row: i, len: row.len(), expected: n });
            }
            entries.extend(row);
        }
        Ok(RatMatrix { n, entries })
    }

    /// Integer rows, for readable constructions in examples and tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::integer(v)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimMismatch { left: self.n, right: other.n });
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(RatMatrix { n: self.n, entries })
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix { n: self.n, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &Rational) -> RatMatrix {
        RatMatrix { n: self.n, entries: self.entries.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimMismatch { left: self.n, right: other.n });
        }
        let mut out = RatMatrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let v = out.get(i, j) + &(aik * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Max over rows of the absolute entry sum. On a symmetric matrix every
    /// eigenvalue lies within this bound (Gershgorin), which makes it a
    /// terminating search ceiling for order-unit indices.
    pub fn max_abs_row_sum(&self) -> Rational {
        let mut best = Rational::zero();
        for i in 0..self.n {
            let s: Rational = (0..self.n).map(|j| self.get(i, j).abs()).sum();
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Sums of k-by-k principal minors for k = 1..=n, by Faddeev-LeVerrier.
    /// With `det(tI - A) = t^n + c[n-1]t^(n-1) + ... + c[0]`, the k-th
    /// principal minor sum is `(-1)^k c[n-k]`; the recurrence below
    /// produces the signed c's with exact rational division.
    pub fn principal_minor_sums(&self) -> Vec<Rational> {
        let n = self.n;
        let mut sums = Vec::with_capacity(n);
        let mut m = RatMatrix::zero(n);
        // c value for the previous step; starts at c_n = 1.
        let mut c_prev = Rational::one();
        let mut sign = Rational::integer(-1);
        for k in 1..=n {
            for i in 0..n {
                let v = m.get(i, i) + &c_prev;
                m.set(i, i, v);
            }
            m = self.mul(&m).expect("same dimension");
            let c = -(m.trace() / Rational::integer(k as i64));
            sums.push(&sign * &c);
            c_prev = c;
            sign = -sign;
        }
        sums
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Symmetric rational matrix; symmetry is checked once at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix(RatMatrix);

impl SymMatrix {
    pub fn new(m: RatMatrix) -> Result<Self, MatrixError> {
        for i in 0..m.dim() {
            for j in (i + 1)..m.dim() {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        SymMatrix::new(RatMatrix::from_rows(rows)?)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        SymMatrix::new(RatMatrix::from_int_rows(rows)?)
    }

    pub fn zero(n: usize) -> Self {
        SymMatrix(RatMatrix::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(RatMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix, MatrixError> {
        Ok(SymMatrix(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix, MatrixError> {
        Ok(SymMatrix(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> SymMatrix {
        SymMatrix(self.0.neg())
    }

    pub fn scale(&self, k: &Rational) -> SymMatrix {
        SymMatrix(self.0.scale(k))
    }

    pub fn trace(&self) -> Rational {
        self.0.trace()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic polynomial data for a symmetric matrix: the principal
/// minor sums e_1..e_n, i.e. det(tI - A) = t^n - e_1 t^(n-1) + e_2 t^(n-2)
/// - ... + (-1)^n e_n.
pub fn char_poly_coeffs(a: &SymMatrix) -> Vec<Rational> {
    a.matrix().principal_minor_sums()
}

/// Positive semidefiniteness by coefficient signs, exactly.
///
/// A symmetric rational matrix has a real spectrum, so det(tI - A) splits
/// over the reals and e_k is the k-th elementary symmetric function of the
/// eigenvalues. If every eigenvalue is >= 0 then every e_k >= 0. Conversely
/// if all e_k >= 0 and some eigenvalue were -t < 0, then 0 = det(-tI - A)
/// up to sign equals t^n + e_1 t^(n-1) + ... + e_n > 0, a contradiction.
/// So on symmetric input, e_k >= 0 for all k is exactly PSD. On a general
/// matrix this inference is unsound, which is why the input type is
/// `SymMatrix` and not `RatMatrix`.
pub fn is_psd(a: &SymMatrix) -> bool {
    char_poly_coeffs(a).iter().all(|c| !c.is_negative())
}
