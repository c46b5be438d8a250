use std::fmt;
use std::ops::{Index, IndexMut};

use super::{LinalgError, Q};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Q::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Matrix {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Matrix { rows, cols, data }
    }

    /// Build from integer rows; all rows must have equal length.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Q::from_int(x)));
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_cols(cols: &[Vec<Q>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`, rows indexed `(i, k) ↦ i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Q::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    ///
    /// Pivots are taken at the earliest column with a nonzero entry, rows
    /// scanned top to bottom, so the result is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, Q)> = (c..m.cols)
                .filter(|&j| !m[(r, j)].is_zero())
                .map(|j| (j, m[(r, j)].clone()))
                .collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, x) in &pivot_row {
                    let t = &f * x;
                    m[(i, *j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut e = super::sparse::Echelon::new();
        for i in 0..self.rows {
            e.insert(super::sparse::SparseVec::from_dense(self.row(i)));
        }
        e.rank()
    }

    /// Columns form a basis of the kernel; one basis vector per free column,
    /// with a 1 in that column.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = Q::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                let x = &r[(i, f)];
                if !x.is_zero() {
                    out[(pc, k)] = -x;
                }
            }
        }
        out
    }

    /// Solve `self · x = b`. `Ok(None)` signals that no solution exists.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: (self.rows, self.cols),
                right: (b.rows, b.cols),
            });
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Matrix::identity(self.rows)).ok().flatten()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Q::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(3).nullspace().cols(), 0);
        assert_eq!(Matrix::zeros(2, 2).nullspace().cols(), 2);
        let a = m(&[&[1, 1]]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 1);
        assert_eq!(n[(0, 0)], -n[(1, 0)].clone());
        assert!(!n[(0, 0)].is_zero());
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = m(&[&[3], &[-1]]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let a = m(&[&[1, 0], &[0, 0]]);
        assert_eq!(a.solve(&m(&[&[0], &[1]])).unwrap(), None);
        let x = m(&[&[2]]).solve(&m(&[&[1]])).unwrap().unwrap();
        assert_eq!(x[(0, 0)], Q::new(1, 2));
        assert!(matches!(
            Matrix::identity(2).solve(&Matrix::zeros(3, 1)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }
}
