//! Dense row-major matrices whose entries are interpreted by a [`Ring`].

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::precondition(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Rejects ragged input.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::precondition(format!(
                "row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, diag: &[E]) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn diagonal_entries(&self) -> Vec<E> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn matmul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::precondition(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let t = ring.mul(x, &b[(k, j)]);
                out[(i, j)] = ring.add(&out[(i, j)], &t);
            }
        }
    }
    Ok(out)
}

/// `m[0] · m[1] · ... · m[k-1]`
pub fn product<R: Ring>(ring: &R, factors: &[&Matrix<R::Elem>]) -> Result<Matrix<R::Elem>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::precondition("empty matrix product"))?;
    rest.iter().try_fold((*first).clone(), |acc, m| matmul(ring, &acc, m))
}

pub fn is_identity<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    m.rows == m.cols
        && (0..m.rows).all(|i| {
            (0..m.cols).all(|j| {
                if i == j {
                    ring.is_one(&m[(i, j)])
                } else {
                    ring.is_zero(&m[(i, j)])
                }
            })
        })
}

pub fn is_diagonal<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    (0..m.rows).all(|i| (0..m.cols).all(|j| i == j || ring.is_zero(&m[(i, j)])))
}

/// Division-free determinant: Laplace expansion along rows, memoized on
/// the set of columns still available. Exact over any commutative ring.
pub fn determinant<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
    if m.rows != m.cols {
        return Err(Error::precondition(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(ring.one());
    }
    if n > 24 {
        return Err(Error::Unsupported(format!("determinant of a {n}x{n} matrix")));
    }
    fn rec<R: Ring>(
        ring: &R,
        m: &Matrix<R::Elem>,
        row: usize,
        free: u32,
        memo: &mut HashMap<u32, R::Elem>,
    ) -> R::Elem {
        if row == m.rows {
            return ring.one();
        }
        if let Some(v) = memo.get(&free) {
            return v.clone();
        }
        let mut acc = ring.zero();
        let mut sign_pos = true;
        for j in 0..m.cols {
            if free & (1 << j) == 0 {
                continue;
            }
            let x = &m[(row, j)];
            if !ring.is_zero(x) {
                let minor = rec(ring, m, row + 1, free & !(1 << j), memo);
                let t = ring.mul(x, &minor);
                acc = if sign_pos { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(free, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    Ok(rec(ring, m, 0, (1u32 << n) - 1, &mut memo))
}
