//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `M v = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = r.get(row, self.cols).clone();
        }
        Some(v)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Rank of a family of vectors given as rows.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[rat(1), rat(0)]).is_none());
    }
}
