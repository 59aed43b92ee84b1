//! Exact linear algebra over any [`Field`]: small dense matrices and an
//! incremental sparse row echelon form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        Mat {
            rows,
            cols,
            data: vec![zero.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        let mut m = Self::zeros(n, n, one);
        for i in 0..n {
            m[(i, i)] = one.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds an `rows x cols` matrix from `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let zero = self.data.first().or(rhs.data.first());
        let Some(zero) = zero.map(|z| z.zero_like()) else {
            return Ok(Mat {
                rows: self.rows,
                cols: rhs.cols,
                data: Vec::new(),
            });
        };
        let mut out = Self::zeros(self.rows, rhs.cols, &zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shapes agree")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, `self` indexing the most significant block.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = (rhs.rows, rhs.cols);
        Mat::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)].mul(&rhs[(i % r2, j % c2)])
        })
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
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
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let t = m[(r, j)].mul(&f);
                    m[(i, j)] = m[(i, j)].sub(&t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let one = self.data[0].one_like();
        let id = Self::identity(n, &one);
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                id[(i, j - n)].clone()
            }
        });
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| red[(i, j + n)].clone()))
    }

    pub fn pow(&self, e: u64) -> Self {
        let one = self.data[0].one_like();
        let mut acc = Self::identity(self.rows, &one);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
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

impl<F> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>]) -> usize {
    let mut ech = SparseEchelon::new();
    for v in vectors {
        let row: BTreeMap<usize, F> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        ech.insert(row);
    }
    ech.rank()
}

/// Sparse row echelon form built one row at a time.
///
/// Each stored row is normalised so that its largest column carries a one,
/// and no two stored rows share that leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<F> {
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        SparseEchelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored rows; the remainder is empty iff the
    /// row lies in their span.
    pub fn reduce(&self, mut row: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut bound = usize::MAX;
        loop {
            let Some((&lead, _)) = row.range(..bound).next_back() else {
                return row;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = row[&lead].clone();
                    for (&j, x) in p {
                        let t = x.mul(&c);
                        let entry = row.entry(j).or_insert_with(|| t.zero_like());
                        *entry = entry.sub(&t);
                        if entry.is_zero() {
                            row.remove(&j);
                        }
                    }
                }
                None => bound = lead,
            }
        }
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, F>) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, c)) = row.iter().next_back() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading entry");
        for x in row.values_mut() {
            *x = x.mul(&inv);
        }
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: BTreeMap<usize, F>) -> bool {
        self.reduce(row).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_inverse_over_q() {
        let m = Mat::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_none());
        let a = Mat::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn kron_dimensions_and_identity() {
        let one = Cyc::one(4);
        let i2 = Mat::identity(2, &one);
        let i3 = Mat::identity(3, &one);
        let k = i2.kron(&i3);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert!(k.is_identity());
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let rows = vec![
            vec![q(1), q(0), q(1), q(0)],
            vec![q(0), q(1), q(1), q(0)],
            vec![q(1), q(1), q(2), q(0)],
            vec![q(0), q(0), q(0), q(5)],
        ];
        assert_eq!(rank_of_vectors(&rows), 3);
        assert_eq!(Mat::from_rows(rows).rank(), 3);
    }

    #[test]
    fn sparse_membership() {
        let mut e: SparseEchelon<BigRational> = SparseEchelon::new();
        e.insert([(0, q(1)), (2, q(1))].into_iter().collect());
        e.insert([(1, q(1)), (2, q(-1))].into_iter().collect());
        assert!(e.contains([(0, q(1)), (1, q(1))].into_iter().collect()));
        assert!(!e.contains([(0, q(1))].into_iter().collect()));
    }
}
