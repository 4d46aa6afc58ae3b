use std::ops::{Index, IndexMut};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("expected a {expected}x{expected} matrix: {detail}")]
pub struct ShapeError {
    pub expected: usize,
    pub detail: String,
}

/// Dense square matrix indexed by `(row, col)`, both 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from rows; `expected` pins the size when given.
    pub fn from_rows(rows: Vec<Vec<T>>, expected: Option<usize>) -> Result<Self, ShapeError> {
        let n = expected.unwrap_or(rows.len());
        if rows.len() != n {
            return Err(ShapeError {
                expected: n,
                detail: format!("got {} rows", rows.len()),
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ShapeError {
                    expected: n,
                    detail: format!("row {} has {} entries", i + 1, row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Entrywise combination of two same-size matrices.
    pub fn zip_with<U, V>(&self, other: &Matrix<U>, mut f: impl FnMut(&T, &U) -> V) -> Result<Matrix<V>, ShapeError> {
        if self.n != other.n {
            return Err(ShapeError {
                expected: self.n,
                detail: format!("other operand is {0}x{0}", other.n),
            });
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Entries in row-major order with their positions.
    pub fn indexed(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, v)| ((k / n, k % n), v))
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &T> {
        (0..self.n).map(move |i| &self.data[i * self.n + i])
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        &mut self.data[i * self.n + j]
    }
}
