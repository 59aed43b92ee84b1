//! Integer lattices: degree vectors, integer matrices with Smith normal form,
//! quantum matrices given by exponents of `zeta_m`, their radical, lattice
//! automorphisms and the block normal form.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Mat;

/// An integer degree in `Z^k`; coordinate 0 is the `t_0` degree when the
/// ambient torus has a distinguished first variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn new(v: Vec<i64>) -> Self {
        Degree(v)
    }

    pub fn zero(n: usize) -> Self {
        Degree(vec![0; n])
    }

    /// The unit vector `e_i` in `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Degree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Self {
        Degree(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn dot(&self, other: &Degree) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Index of the first nonzero coordinate.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&x| x != 0)
    }

    /// Prepends a coordinate: `(c, self)`.
    pub fn with_head(&self, c: i64) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(c);
        v.extend_from_slice(&self.0);
        Degree(v)
    }

    /// Drops coordinate 0.
    pub fn tail(&self) -> Self {
        Degree(self.0[1..].to_vec())
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Degree {
    fn from(v: Vec<i64>) -> Self {
        Degree(v)
    }
}

impl<const N: usize> From<[i64; N]> for Degree {
    fn from(v: [i64; N]) -> Self {
        Degree(v.to_vec())
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.len(), rhs.len(), "degree lengths differ");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        assert_eq!(self.len(), rhs.len(), "degree lengths differ");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        &self + &rhs
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, rhs: Degree) -> Degree {
        &self - &rhs
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        -&self
    }
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if let Some(bad) = rows.iter().find(|x| x.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Degree]) -> Self {
        let r = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = c.0[i];
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

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .take(self.rows)
            .collect()
    }

    pub fn column(&self, j: usize) -> Degree {
        Degree((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = checked(out[(i, j)], a, rhs[(k, j)]);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &Degree) -> Degree {
        assert_eq!(self.cols, v.len(), "vector length differs");
        Degree(
            (0..self.rows)
                .map(|i| (0..self.cols).fold(0, |acc, j| checked(acc, self[(i, j)], v.0[j])))
                .collect(),
        )
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self[(i, j)] as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// Exact inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        let q: Mat<BigRational> = Mat::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from_integer(self[(i, j)].into())
        });
        let inv = q.inverse().ok_or(Error::NotUnimodular(d))?;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &inv[(i, j)];
                debug_assert!(x.is_integer());
                out[(i, j)] = x.to_integer().to_i64().expect("inverse entry fits i64");
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] = checked(self[(dst, j)], c, v);
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] = checked(self[(i, dst)], c, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_rows())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `acc + a * b`, panicking on overflow.
fn checked(acc: i64, a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .expect("integer overflow in lattice arithmetic")
}

/// Smith normal form `U * M * V = D` with unimodular `U`, `V` and diagonal
/// `D` whose nonnegative diagonal entries divide one another.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..r {
                let q = Integer::div_floor(&d[(i, t)], &p);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                dirty |= d[(i, t)] != 0;
            }
            for j in t + 1..c {
                let q = Integer::div_floor(&d[(t, j)], &p);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                dirty |= d[(t, j)] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_smith(u, d, v)
}

fn finish_smith(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> Smith {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// A quantum matrix `q_ij = zeta_m^{K_ij}` stored through its exponents,
/// reduced into `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuantumMatrix {
    m: u32,
    k: IntMatrix,
}

impl QuantumMatrix {
    pub fn new(m: u32, k: IntMatrix) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidQuantumMatrix("order must be positive".into()));
        }
        if k.rows != k.cols {
            return Err(Error::InvalidQuantumMatrix(format!(
                "matrix is {}x{}, expected square",
                k.rows, k.cols
            )));
        }
        let mi = m as i64;
        let mut red = k.clone();
        for x in red.data.iter_mut() {
            *x = x.rem_euclid(mi);
        }
        let n = red.rows;
        for i in 0..n {
            if red[(i, i)] != 0 {
                return Err(Error::InvalidQuantumMatrix(format!("diagonal entry q_{i}{i} is not 1")));
            }
            for j in 0..i {
                if (red[(i, j)] + red[(j, i)]) % mi != 0 {
                    return Err(Error::InvalidQuantumMatrix(format!(
                        "q_{i}{j} is not the inverse of q_{j}{i}"
                    )));
                }
            }
        }
        Ok(QuantumMatrix { m, k: red })
    }

    pub fn from_rows(m: u32, rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(m, IntMatrix::from_rows(rows)?)
    }

    /// The matrix with every entry equal to one.
    pub fn trivial(dim: usize) -> Self {
        QuantumMatrix {
            m: 1,
            k: IntMatrix::zeros(dim, dim),
        }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.k.rows
    }

    /// Exponent of `q_ij`, in `[0, m)`.
    pub fn exp(&self, i: usize, j: usize) -> i64 {
        self.k[(i, j)]
    }

    pub fn exponents(&self) -> &IntMatrix {
        &self.k
    }

    /// Order of `q_ij` as a root of unity.
    pub fn entry_order(&self, i: usize, j: usize) -> u32 {
        crate::cyclo::root_order(self.m, self.k[(i, j)])
    }

    /// `K a mod m` with entries in `[0, m)`.
    pub fn pair_residues(&self, a: &Degree) -> Vec<i64> {
        let mi = self.m as i64;
        self.k.apply(a).0.into_iter().map(|x| x.rem_euclid(mi)).collect()
    }

    /// Integer skew-symmetric representative of the exponent matrix.
    pub fn skew_representative(&self) -> IntMatrix {
        let n = self.dim();
        let mut s = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..i {
                s[(i, j)] = self.k[(i, j)];
                s[(j, i)] = -self.k[(i, j)];
            }
        }
        s
    }

    /// Whether `t_0` commutes with every variable.
    pub fn first_variable_central(&self) -> bool {
        (0..self.dim()).all(|j| self.k[(0, j)] == 0)
    }

    /// The matrix with the first row and column removed.
    pub fn restricted(&self) -> QuantumMatrix {
        let n = self.dim();
        let mut k = IntMatrix::zeros(n - 1, n - 1);
        for i in 1..n {
            for j in 1..n {
                k[(i - 1, j - 1)] = self.k[(i, j)];
            }
        }
        QuantumMatrix { m: self.m, k }
    }

    /// The matrix with a new central first variable prepended.
    pub fn with_central_head(&self) -> QuantumMatrix {
        let n = self.dim();
        let mut k = IntMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                k[(i + 1, j + 1)] = self.k[(i, j)];
            }
        }
        QuantumMatrix { m: self.m, k }
    }

    pub fn to_json(&self) -> Value {
        json!({ "n_plus_1": self.dim(), "m": self.m, "K": self.k.to_rows() })
    }
}

/// A basis of `rad f = {a : K a = 0 mod m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalLattice {
    q: QuantumMatrix,
    basis: Vec<Degree>,
    index: u64,
}

impl RadicalLattice {
    pub fn basis(&self) -> &[Degree] {
        &self.basis
    }

    /// `[Z^{n+1} : rad f]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn contains(&self, a: &Degree) -> bool {
        is_in_radical(a, self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(Degree::to_json).collect::<Vec<_>>(),
            "index": self.index,
        })
    }
}

/// Solves `K a = 0 (mod m)` through the Smith form of `K`: with `U K V = D`,
/// the substitution `a = V b` decouples the congruence into
/// `d_i b_i = 0 (mod m)`.
pub fn radical_basis(q: &QuantumMatrix) -> RadicalLattice {
    let n = q.dim();
    let s = smith_normal_form(&q.k);
    let diag = s.diagonal();
    let mi = q.m as i64;
    let mut basis = Vec::with_capacity(n);
    let mut index = 1u64;
    for i in 0..n {
        let scale = mi / diag[i].gcd(&mi);
        basis.push(s.v.column(i).scale(scale));
        index *= scale as u64;
    }
    RadicalLattice {
        q: q.clone(),
        basis,
        index,
    }
}

pub fn is_in_radical(a: &Degree, lattice: &RadicalLattice) -> bool {
    assert_eq!(a.len(), lattice.q.dim(), "degree length differs");
    lattice.q.pair_residues(a).iter().all(|&x| x == 0)
}

/// An element of `GL(n, Z)` together with `B = (A^T)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAutomorphism {
    a: IntMatrix,
    b: IntMatrix,
}

impl LatticeAutomorphism {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if a.rows != a.cols {
            return Err(Error::DimensionMismatch {
                expected: a.rows,
                got: a.cols,
            });
        }
        let b = a.transpose().unimodular_inverse()?;
        Ok(LatticeAutomorphism { a, b })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        LatticeAutomorphism {
            a: IntMatrix::identity(n),
            b: IntMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn inverse_transpose(&self) -> &IntMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows
    }

    pub fn det(&self) -> i64 {
        self.a.det()
    }

    pub fn apply(&self, v: &Degree) -> Degree {
        self.a.apply(v)
    }

    pub fn inverse(&self) -> LatticeAutomorphism {
        let inv = self.b.transpose();
        LatticeAutomorphism {
            b: self.a.transpose(),
            a: inv,
        }
    }

    /// `self` followed by `other`: the matrix `other.A * self.A`.
    pub fn then(&self, other: &LatticeAutomorphism) -> LatticeAutomorphism {
        LatticeAutomorphism {
            a: other.a.mul(&self.a),
            b: other.b.mul(&self.b),
        }
    }

    /// `diag(1, A)`.
    pub fn with_fixed_head(&self) -> LatticeAutomorphism {
        let n = self.dim();
        let mut a = IntMatrix::identity(n + 1);
        let mut b = IntMatrix::identity(n + 1);
        for i in 0..n {
            for j in 0..n {
                a[(i + 1, j + 1)] = self.a[(i, j)];
                b[(i + 1, j + 1)] = self.b[(i, j)];
            }
        }
        LatticeAutomorphism { a, b }
    }
}

/// `K' = A^T K A (mod m)`, i.e. `q'_ij = prod_{k,l} q_kl^{a_ki a_lj}`.
pub fn apply_automorphism(a: &LatticeAutomorphism, q: &QuantumMatrix) -> Result<QuantumMatrix> {
    if a.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: a.dim(),
        });
    }
    let d = a.det();
    if d.abs() != 1 {
        return Err(Error::NotUnimodular(d));
    }
    let k = a.a.transpose().mul(&q.k).mul(&a.a);
    QuantumMatrix::new(q.m, k)
}

/// Block data of a matrix in simple form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFormData {
    /// Number of nontrivial blocks.
    pub z: usize,
    /// Orders `k_1, ..., k_z`, each divisible by the next.
    pub orders: Vec<u32>,
    /// Exponent of `q_i = q'_{2i+1, 2i}` (0-based) for each block.
    pub exponents: Vec<i64>,
}

impl SimpleFormData {
    /// `N = prod k_i`.
    pub fn size(&self) -> usize {
        self.orders.iter().map(|&k| k as usize).product()
    }
}

/// Checks the block shape and returns the block data.
pub fn simple_form_data(q: &QuantumMatrix) -> Result<SimpleFormData> {
    let n = q.dim();
    let mut z = 0;
    while 2 * z + 1 < n && q.k[(2 * z + 1, 2 * z)] != 0 {
        z += 1;
    }
    for i in 0..n {
        for j in 0..n {
            let in_block = i / 2 == j / 2 && i / 2 < z && i != j;
            if !in_block && q.k[(i, j)] != 0 {
                return Err(Error::NotSimpleForm(format!(
                    "entry q_{i}{j} lies outside the diagonal blocks"
                )));
            }
        }
    }
    let exponents: Vec<i64> = (0..z).map(|i| q.k[(2 * i + 1, 2 * i)]).collect();
    let orders: Vec<u32> = exponents.iter().map(|&e| crate::cyclo::root_order(q.m, e)).collect();
    for w in orders.windows(2) {
        if w[0] % w[1] != 0 {
            return Err(Error::NotSimpleForm(format!(
                "block orders {} and {} violate the divisibility chain",
                w[0], w[1]
            )));
        }
    }
    Ok(SimpleFormData { z, orders, exponents })
}

pub fn is_simple_form(q: &QuantumMatrix) -> bool {
    simple_form_data(q).is_ok()
}

/// Block normal form under `GL(n, Z)`: returns `(q', A)` with
/// `apply_automorphism(A, q) = q'` and `q'` in simple form.
///
/// Uses congruence elimination on the skew representative of the exponent
/// matrix, always pivoting on the entry of smallest absolute value (ties to
/// the lowest index). The resulting block exponents `d_1 | d_2 | ...` give
/// orders `k_i = m / gcd(d_i, m)` with `k_{i+1} | k_i`.
pub fn simple_form(q: &QuantumMatrix) -> (QuantumMatrix, LatticeAutomorphism) {
    let n = q.dim();
    if is_simple_form(q) {
        return (q.clone(), LatticeAutomorphism::identity(n));
    }
    let mut s = q.skew_representative();
    let mut e = IntMatrix::identity(n);
    // simultaneous row/column operations keep `s = E^T K E`
    let swap = |s: &mut IntMatrix, e: &mut IntMatrix, a: usize, b: usize| {
        if a != b {
            s.swap_rows(a, b);
            s.swap_cols(a, b);
            e.swap_cols(a, b);
        }
    };
    let addc = |s: &mut IntMatrix, e: &mut IntMatrix, dst: usize, src: usize, c: i64| {
        if c != 0 {
            s.add_col(dst, src, c);
            s.add_row(dst, src, c);
            e.add_col(dst, src, c);
        }
    };
    let mut p = 0;
    while p + 1 < n {
        let mut best: Option<(usize, usize)> = None;
        for i in p..n {
            for j in i + 1..n {
                let x = s[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        swap(&mut s, &mut e, p, i);
        let j = if j == p { i } else { j };
        swap(&mut s, &mut e, p + 1, j);
        if s[(p, p + 1)] < 0 {
            swap(&mut s, &mut e, p, p + 1);
        }
        let d = s[(p, p + 1)];
        let mut dirty = false;
        for k in p + 2..n {
            // entry (p, k) changes by c * d under col_k += c * col_{p+1}
            let c = -Integer::div_floor(&s[(p, k)], &d);
            addc(&mut s, &mut e, k, p + 1, c);
            // entry (p+1, k) changes by -c * d under col_k += c * col_p
            let c = Integer::div_floor(&s[(p + 1, k)], &d);
            addc(&mut s, &mut e, k, p, c);
            dirty |= s[(p, k)] != 0 || s[(p + 1, k)] != 0;
        }
        if dirty {
            continue;
        }
        let bad = (p + 2..n)
            .flat_map(|i| (p + 2..n).map(move |j| (i, j)))
            .find(|&(i, j)| s[(i, j)] % d != 0);
        match bad {
            Some((_, j)) => addc(&mut s, &mut e, p, j, 1),
            None => p += 2,
        }
    }
    let a = LatticeAutomorphism::new(e).expect("elimination keeps the transform unimodular");
    let qp = apply_automorphism(&a, q).expect("dimensions agree");
    debug_assert!(is_simple_form(&qp), "normal form failed the shape check");
    (qp, a)
}

/// The basis `xi_l` of `rad f'` for a matrix in simple form: `k_i e_{2i}` and
/// `k_i e_{2i+1}` for block `i` (0-based), and `e_l` beyond the blocks.
pub fn xi_basis(q: &QuantumMatrix) -> Result<Vec<Degree>> {
    let data = simple_form_data(q)?;
    let n = q.dim();
    Ok((0..n)
        .map(|l| {
            let k = if l / 2 < data.z { data.orders[l / 2] as i64 } else { 1 };
            Degree::unit(n, l).scale(k)
        })
        .collect())
}

/// Greatest common divisor of a list, 0 for the empty list.
pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Rational solve: whether `v` is an integer combination of `basis`
/// (a full-rank square basis).
pub fn in_lattice_span(basis: &[Degree], v: &Degree) -> bool {
    let b = IntMatrix::from_columns(basis);
    let q: Mat<BigRational> = Mat::from_fn(b.rows, b.cols, |i, j| BigRational::from_integer(b[(i, j)].into()));
    let Some(inv) = q.inverse() else {
        return false;
    };
    let rhs: Vec<BigRational> = v.0.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    inv.apply(&rhs).iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta4() -> QuantumMatrix {
        QuantumMatrix::from_rows(4, vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    /// `f(a, e_i) = 1` for all `i`, evaluated as a product of exponents.
    fn radical_oracle(q: &QuantumMatrix, a: &Degree) -> bool {
        let n = q.dim();
        (0..n).all(|i| {
            let s: i64 = (0..n).map(|j| q.exp(i, j) * a.0[j]).sum();
            s.rem_euclid(q.order() as i64) == 0
        })
    }

    fn box_points(n: usize, r: i64) -> Vec<Degree> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (-r..=r).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    #[test]
    fn validation() {
        assert!(QuantumMatrix::from_rows(4, vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(QuantumMatrix::from_rows(4, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(QuantumMatrix::from_rows(2, vec![vec![0, 1, 0]]).is_err());
    }

    #[test]
    fn smith_form_reconstructs() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.diagonal(), vec![2, 6, 12]);
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
    }

    #[test]
    fn radical_examples() {
        let l = radical_basis(&zeta4());
        assert_eq!(l.index(), 16);
        for b in l.basis() {
            assert!(radical_oracle(&zeta4(), b));
        }
        assert!(in_lattice_span(l.basis(), &Degree::from([4, 0])));
        assert!(in_lattice_span(l.basis(), &Degree::from([0, 4])));
        let expect = [Degree::from([4, 0]), Degree::from([0, 4])];
        for b in l.basis() {
            assert!(in_lattice_span(&expect, b));
        }
        for a in box_points(2, 4) {
            assert_eq!(l.contains(&a), radical_oracle(&zeta4(), &a));
        }
        assert!(l.contains(&Degree::zero(2)));
        assert!(!l.contains(&Degree::from([1, 0])));
        assert!(l.contains(&Degree::from([4, 0])));

        let triv = radical_basis(&QuantumMatrix::trivial(3));
        assert_eq!(triv.index(), 1);

        let mixed = QuantumMatrix::from_rows(2, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        let l = radical_basis(&mixed);
        assert_eq!(l.index(), 4);
        let expect = [
            Degree::from([2, 0, 0]),
            Degree::from([0, 2, 0]),
            Degree::from([0, 0, 1]),
        ];
        for b in l.basis() {
            assert!(in_lattice_span(&expect, b));
        }
        for e in &expect {
            assert!(in_lattice_span(l.basis(), e));
        }
        for a in box_points(3, 2) {
            assert_eq!(l.contains(&a), radical_oracle(&mixed, &a));
        }
    }

    #[test]
    fn automorphism_examples() {
        let q = zeta4();
        let id = LatticeAutomorphism::identity(2);
        assert_eq!(apply_automorphism(&id, &q).unwrap(), q);
        let swap = LatticeAutomorphism::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let qs = apply_automorphism(&swap, &q).unwrap();
        assert_eq!(qs.exp(1, 0), 3);
        let shear = LatticeAutomorphism::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let qh = apply_automorphism(&shear, &q).unwrap();
        // product formula entry by entry
        for i in 0..2 {
            for j in 0..2 {
                let mut e = 0;
                for k in 0..2 {
                    for l in 0..2 {
                        e += q.exp(k, l) * shear.matrix()[(k, i)] * shear.matrix()[(l, j)];
                    }
                }
                assert_eq!(qh.exp(i, j), e.rem_euclid(4));
            }
        }
        assert_eq!(
            LatticeAutomorphism::from_rows(vec![vec![2, 0], vec![0, 1]]),
            Err(Error::NotUnimodular(2))
        );
        assert_eq!(
            shear.matrix().mul(&shear.inverse_transpose().transpose()),
            IntMatrix::identity(2)
        );
    }

    #[test]
    fn simple_form_examples() {
        let q = QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (qp, a) = simple_form(&q);
        assert_eq!(qp, q);
        assert_eq!(a, LatticeAutomorphism::identity(2));
        assert_eq!(simple_form_data(&qp).unwrap().orders, vec![2]);

        let q = QuantumMatrix::from_rows(4, vec![vec![0, -1, -1], vec![1, 0, 0], vec![1, 0, 0]]).unwrap();
        assert!(!is_simple_form(&q));
        let (qp, a) = simple_form(&q);
        assert_eq!(apply_automorphism(&a, &q).unwrap(), qp);
        let data = simple_form_data(&qp).unwrap();
        assert_eq!(data.z, 1);
        assert_eq!(data.orders, vec![4]);
        assert_eq!(a.det().abs(), 1);
        assert!((0..3).all(|j| qp.exp(2, j) == 0));
    }

    #[test]
    fn xi_examples() {
        let q = QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(xi_basis(&q).unwrap(), vec![Degree::from([2, 0]), Degree::from([0, 2])]);
        let q3 = q.with_central_head().restricted().with_central_head();
        assert!(xi_basis(&q3).is_err());
        let q3 = QuantumMatrix::from_rows(2, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(
            xi_basis(&q3).unwrap(),
            vec![
                Degree::from([2, 0, 0]),
                Degree::from([0, 2, 0]),
                Degree::from([0, 0, 1])
            ]
        );
        assert_eq!(
            xi_basis(&QuantumMatrix::trivial(2)).unwrap(),
            vec![Degree::from([1, 0]), Degree::from([0, 1])]
        );
    }
}
