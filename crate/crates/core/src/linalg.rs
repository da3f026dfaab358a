//! Dense exact linear algebra over an arbitrary [`Field`] scalar.
//!
//! Row reduction uses the first nonzero entry of the leftmost unreduced
//! column as pivot, so the echelon form (and every kernel/cokernel basis
//! derived from it) is deterministic.

use std::ops::{Index, IndexMut};

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(r, pivot_row);
            let inv = self[(pivot_row, col)].inv();
            for j in col..self.cols {
                self[(pivot_row, j)] = self[(pivot_row, j)].clone() * inv.clone();
            }
            for r2 in 0..self.rows {
                if r2 != pivot_row && !self[(r2, col)].is_zero() {
                    let f = self[(r2, col)].clone();
                    for j in col..self.cols {
                        let delta = f.clone() * self[(pivot_row, j)].clone();
                        self[(r2, j)] = self[(r2, j)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel. Each basis vector has a 1 in a distinct
    /// free column, so the result is echelon-deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![T::zero(); self.cols];
            vec[free] = T::one();
            for (c, entry) in pivot_set.iter().enumerate() {
                if let Some(r) = entry {
                    vec[c] = T::zero() - m[(*r, free)].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve `self * x = b`; `None` if inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = T::one();
        let mut negate = false;
        for col in 0..m.cols {
            let found = (col..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(r) = found else { return T::zero() };
            if r != col {
                m.swap_rows(r, col);
                negate = !negate;
            }
            det = det * m[(col, col)].clone();
            let inv = m[(col, col)].inv();
            for r2 in col + 1..m.rows {
                if m[(r2, col)].is_zero() {
                    continue;
                }
                let f = m[(r2, col)].clone() * inv.clone();
                for j in col..m.cols {
                    let delta = f.clone() * m[(col, j)].clone();
                    m[(r2, j)] = m[(r2, j)].clone() - delta;
                }
            }
        }
        if negate {
            T::zero() - det
        } else {
            det
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn q(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn rref_and_rank() {
        let mut m = Matrix::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_square() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]]);
        let x = m.solve(&[q(5), q(10)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(5), q(10)]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(m.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]]);
        assert_eq!(m.det(), q(5));
        let singular = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(singular.det(), q(0));
    }

    #[test]
    fn fp_kernel_round_trip() {
        use crate::scalar::Fp;
        let p = 97;
        let m = Matrix::from_rows(vec![
            vec![Fp::new(1, p), Fp::new(2, p), Fp::new(3, p)],
            vec![Fp::new(4, p), Fp::new(5, p), Fp::new(6, p)],
        ]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
