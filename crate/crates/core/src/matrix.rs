use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{AlgebraError, Result};
use crate::scalar::{Field, Scalar};

/// Dense square matrix over one exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    size: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(AlgebraError::SizeMismatch { left: 0, right: 1 });
        }
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(AlgebraError::SizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
            for entry in row {
                if entry.field() != field {
                    return Err(AlgebraError::FieldMismatch {
                        left: field,
                        right: entry.field(),
                    });
                }
                entries.push(entry);
            }
        }
        Ok(Self {
            field,
            size,
            entries,
        })
    }

    /// Rational-valued matrix from integer rows; convenient in tests and examples.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(field: Field, size: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(size > 0, "matrices have size at least one");
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                let entry = f(r, c);
                assert_eq!(entry.field(), field, "entry ({r},{c}) in wrong field");
                entries.push(entry);
            }
        }
        Self {
            field,
            size,
            entries,
        }
    }

    /// Row-major entries, trusted to lie in `field`.
    pub(crate) fn from_entries(field: Field, size: usize, entries: Vec<Scalar>) -> Self {
        debug_assert_eq!(entries.len(), size * size);
        debug_assert!(entries.iter().all(|x| x.field() == field));
        Self {
            field,
            size,
            entries,
        }
    }

    pub fn zeros(field: Field, size: usize) -> Self {
        Self::from_fn(field, size, |_, _| field.zero())
    }

    pub fn identity(field: Field, size: usize) -> Self {
        Self::from_fn(field, size, |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Every entry equal to `value`; `value·J` in the usual notation.
    pub fn constant(size: usize, value: &Scalar) -> Self {
        Self::from_fn(value.field(), size, |_, _| value.clone())
    }

    pub fn diagonal(diag: &[Scalar]) -> Result<Self> {
        let field = diag
            .first()
            .ok_or(AlgebraError::SizeMismatch { left: 0, right: 1 })?
            .field();
        if let Some(bad) = diag.iter().find(|d| d.field() != field) {
            return Err(AlgebraError::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Self::from_fn(field, diag.len(), |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                field.zero()
            }
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) -> Result<()> {
        if value.field() != self.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: value.field(),
            });
        }
        self.entries[row * self.size + col] = value;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.size)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn ensure_compatible(&self, other: &Matrix) -> Result<()> {
        if self.size != other.size {
            return Err(AlgebraError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.ensure_compatible(other)?;
        Ok(Matrix {
            field: self.field,
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            field: self.field,
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, alpha: &Scalar) -> Result<Matrix> {
        if alpha.field() != self.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: alpha.field(),
            });
        }
        Ok(self.map(|x| alpha * x))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.size, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.field, self.size, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.size).fold(self.field.zero(), |acc, k| &acc + self.get(k, k))
    }

    pub fn row_sum(&self, row: usize) -> Scalar {
        (0..self.size).fold(self.field.zero(), |acc, k| &acc + self.get(row, k))
    }

    pub fn col_sum(&self, col: usize) -> Scalar {
        (0..self.size).fold(self.field.zero(), |acc, k| &acc + self.get(k, col))
    }

    /// Entry-wise image under the field embedding into `target`.
    pub fn promote(&self, target: Field) -> Result<Matrix> {
        if target == self.field {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|x| x.promote(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: target,
            size: self.size,
            entries,
        })
    }

    /// Gauss-Jordan inverse, taking the first nonzero entry in each column as pivot.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.size;
        let mut work: Vec<Vec<Scalar>> = self.rows().map(<[Scalar]>::to_vec).collect();
        let mut inv: Vec<Vec<Scalar>> = Matrix::identity(self.field, n)
            .rows()
            .map(<[Scalar]>::to_vec)
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(AlgebraError::SingularMatrix)?;
            work.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pivot_inv = work[col][col].inverse()?;
            for k in 0..n {
                work[col][k] = &work[col][k] * &pivot_inv;
                inv[col][k] = &inv[col][k] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for k in 0..n {
                    let w = &factor * &work[col][k];
                    work[r][k] = &work[r][k] - &w;
                    let v = &factor * &inv[col][k];
                    inv[r][k] = &inv[r][k] - &v;
                }
            }
        }
        Matrix::from_rows(self.field, inv)
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        &(self * other)? - &(other * self)?
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Result<Matrix>;

    fn add(self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Result<Matrix>;

    fn sub(self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Result<Matrix>;

    fn mul(self, rhs: &Matrix) -> Result<Matrix> {
        self.ensure_compatible(rhs)?;
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            field: self.field,
            size: n,
            entries,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
