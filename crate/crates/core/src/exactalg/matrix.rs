//! Dense row-major matrices and exact Gaussian elimination.

use super::field::Field;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    /// Pivot column of each of the first `pivots.len()` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::Shape(format!("row of length {} in a {}-column matrix", r.len(), cols)));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Appends rows of another matrix with the same column count.
    pub fn stack(&mut self, other: &Matrix<E>) -> Result<(), AlgebraError> {
        if other.cols != self.cols {
            return Err(AlgebraError::Shape(format!("stacking {} columns onto {}", other.cols, self.cols)));
        }
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Mutable pivot row and target row at once (`pivot != target`).
    fn row_pair(&mut self, pivot: usize, target: usize) -> (&[E], &mut [E]) {
        let c = self.cols;
        if pivot < target {
            let (head, tail) = self.data.split_at_mut(target * c);
            (&head[pivot * c..(pivot + 1) * c], &mut tail[..c])
        } else {
            let (head, tail) = self.data.split_at_mut(pivot * c);
            (&tail[..c], &mut head[target * c..(target + 1) * c])
        }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zero<K: Field<Elem = E>>(k: &K, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, k.zero())
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        let mut m = Self::zero(k, n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn mul_vec<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Result<Vec<E>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| dot(k, self.row(i), v)).collect())
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Matrix<E>) -> Result<Matrix<E>, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zero(k, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if k.is_zero(a) {
                    continue;
                }
                let neg = k.neg(a);
                let (src, dst) = (other.row(t), out.row_mut(i));
                k.sub_scaled(dst, src, &neg);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. Pivots are chosen as the first nonzero entry
    /// at or below the current row; each pivot row is scaled to a leading 1.
    pub fn echelon<K: Field<Elem = E>>(&self, k: &K) -> Echelon<E> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = k.inv(m.get(r, c)).expect("nonzero pivot");
            k.scale_slice(&mut m.row_mut(r)[c..], &inv);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if k.is_zero(&factor) {
                    continue;
                }
                let (prow, trow) = m.row_pair(r, i);
                k.sub_scaled(&mut trow[c..], &prow[c..], &factor);
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rref<K: Field<Elem = E>>(&self, k: &K) -> Matrix<E> {
        self.echelon(k).matrix
    }

    /// Rank via forward elimination only.
    pub fn rank<K: Field<Elem = E>>(&self, k: &K) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = k.inv(m.get(r, c)).expect("nonzero pivot");
            k.scale_slice(&mut m.row_mut(r)[c..], &inv);
            for i in r + 1..m.rows {
                let factor = m.get(i, c).clone();
                if k.is_zero(&factor) {
                    continue;
                }
                let (prow, trow) = m.row_pair(r, i);
                k.sub_scaled(&mut trow[c..], &prow[c..], &factor);
            }
            r += 1;
        }
        r
    }

    /// Basis of `{v : self * v = 0}` in reduced echelon shape: one vector per
    /// non-pivot column `j` of the RREF, with a 1 at `j` and zeros at every
    /// other non-pivot column. Ordered by that column.
    pub fn right_kernel<K: Field<Elem = E>>(&self, k: &K) -> Vec<Vec<E>> {
        self.echelon(k).kernel(k)
    }

    pub fn determinant<K: Field<Elem = E>>(&self, k: &K) -> Result<E, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = k.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !k.is_zero(m.get(i, c))) else {
                return Ok(k.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = k.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = k.mul(&det, &pivot);
            let inv = k.inv(&pivot).expect("nonzero pivot");
            k.scale_slice(&mut m.row_mut(c)[c..], &inv);
            for i in c + 1..n {
                let factor = m.get(i, c).clone();
                if k.is_zero(&factor) {
                    continue;
                }
                let (prow, trow) = m.row_pair(c, i);
                k.sub_scaled(&mut trow[c..], &prow[c..], &factor);
            }
        }
        Ok(det)
    }
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn kernel<K: Field<Elem = E>>(&self, k: &K) -> Vec<Vec<E>> {
        let n = self.matrix.cols;
        self.free_columns()
            .into_iter()
            .map(|j| {
                let mut v = vec![k.zero(); n];
                v[j] = k.one();
                for (i, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = k.neg(self.matrix.get(i, j));
                }
                v
            })
            .collect()
    }
}

pub fn dot<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter().zip(b).fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{PrimeField, Rationals};

    fn fp() -> PrimeField {
        PrimeField::new(2017).unwrap()
    }

    #[test]
    fn identity_has_empty_kernel() {
        let k = fp();
        let m = Matrix::identity(&k, 2);
        assert!(m.right_kernel(&k).is_empty());
        assert_eq!(m.rank(&k), 2);
        assert_eq!(m.rref(&k), m);
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = fp();
        let m = Matrix::zero(&k, 2, 3);
        let ker = m.right_kernel(&k);
        assert_eq!(ker, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(&k), 0);
        assert_eq!(m.rref(&k), m);
    }

    #[test]
    fn rank_one_kernel() {
        let k = fp();
        let m = Matrix::from_rows(vec![vec![1, 1, 1], vec![2, 2, 2]], 3).unwrap();
        let ker = m.right_kernel(&k);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(&k, v).unwrap().iter().all(|x| *x == 0));
        }
        // independent rank count: the second row is twice the first
        assert_eq!(m.rank(&k), 1);
    }

    #[test]
    fn determinant_small() {
        let q = Rationals;
        let m = Matrix::from_rows(
            vec![
                vec![q.from_i64(2), q.from_i64(1), q.from_i64(0)],
                vec![q.from_i64(1), q.from_i64(3), q.from_i64(1)],
                vec![q.from_i64(0), q.from_i64(1), q.from_i64(4)],
            ],
            3,
        )
        .unwrap();
        // 2*(12-1) - 1*(4-0) = 18
        assert_eq!(m.determinant(&q).unwrap(), q.from_i64(18));
        let s = Matrix::from_rows(vec![vec![0u64, 1], vec![1, 0]], 2).unwrap();
        assert_eq!(s.determinant(&fp()).unwrap(), 2016);
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::from_rows(vec![vec![1u64, 2], vec![3]], 2).is_err());
        let k = fp();
        let m = Matrix::identity(&k, 2);
        assert!(m.mul_vec(&k, &[1, 2, 3]).is_err());
        assert!(Matrix::zero(&k, 2, 3).determinant(&k).is_err());
    }
}
