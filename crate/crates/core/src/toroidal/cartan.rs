//! The Cartan subalgebra `h + C I + sum C C_i + sum C d_i`, its invariant
//! form, weights and reflections in real roots.
//!
//! Coordinates are taken over the ordered basis
//! `h_1 .. h_{d-1}, I, C_0 .. C_n, d_0 .. d_n`, where
//! `h_k = E_kk - E_{k+1,k+1}`.

use serde_json::{json, Value};

use super::ToroidalAlgebra;
use crate::error::{Error, Result};
use crate::lattice::Degree;
use crate::linalg::Mat;
use crate::Cyc;

pub fn cartan_dimension(d: usize, rank: usize) -> usize {
    d + 2 * rank
}

/// A Cartan element by its coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanVector {
    pub coords: Vec<Cyc>,
}

/// A linear functional on the Cartan subalgebra, stored by its values on the
/// basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFunctional {
    pub values: Vec<Cyc>,
}

struct Layout {
    d: usize,
    rank: usize,
}

impl Layout {
    fn of(alg: &ToroidalAlgebra) -> Self {
        Layout {
            d: alg.d(),
            rank: alg.rank(),
        }
    }
    fn dim(&self) -> usize {
        cartan_dimension(self.d, self.rank)
    }
    fn identity(&self) -> usize {
        self.d - 1
    }
    fn c(&self, i: usize) -> usize {
        self.d + i
    }
    fn partial(&self, i: usize) -> usize {
        self.d + self.rank + i
    }
}

fn zeros(alg: &ToroidalAlgebra, n: usize) -> Vec<Cyc> {
    vec![alg.torus().zero(); n]
}

impl CartanVector {
    pub fn zero(alg: &ToroidalAlgebra) -> Self {
        CartanVector {
            coords: zeros(alg, Layout::of(alg).dim()),
        }
    }

    fn unit(alg: &ToroidalAlgebra, k: usize) -> Self {
        let mut v = Self::zero(alg);
        v.coords[k] = alg.torus().one();
        v
    }

    pub fn h(alg: &ToroidalAlgebra, k: usize) -> Self {
        Self::unit(alg, k)
    }

    pub fn identity(alg: &ToroidalAlgebra) -> Self {
        Self::unit(alg, Layout::of(alg).identity())
    }

    pub fn c(alg: &ToroidalAlgebra, i: usize) -> Self {
        Self::unit(alg, Layout::of(alg).c(i))
    }

    pub fn partial(alg: &ToroidalAlgebra, i: usize) -> Self {
        Self::unit(alg, Layout::of(alg).partial(i))
    }

    pub fn add(&self, other: &Self) -> Self {
        CartanVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Cyc) -> Self {
        CartanVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }
}

impl WeightFunctional {
    pub fn zero(alg: &ToroidalAlgebra) -> Self {
        WeightFunctional {
            values: zeros(alg, Layout::of(alg).dim()),
        }
    }

    pub fn from_values(values: Vec<Cyc>) -> Self {
        WeightFunctional { values }
    }

    /// `delta_i`: one on `d_i`, zero elsewhere.
    pub fn delta(alg: &ToroidalAlgebra, i: usize) -> Self {
        let mut w = Self::zero(alg);
        w.values[Layout::of(alg).partial(i)] = alg.torus().one();
        w
    }

    /// `delta_m = sum m_i delta_i`.
    pub fn delta_m(alg: &ToroidalAlgebra, m: &Degree) -> Self {
        let l = Layout::of(alg);
        let mut w = Self::zero(alg);
        for (i, &mi) in m.0.iter().enumerate() {
            w.values[l.partial(i)] = alg.torus().int(mi);
        }
        w
    }

    /// `w_i`: one on `C_i`, zero elsewhere.
    pub fn w(alg: &ToroidalAlgebra, i: usize) -> Self {
        let mut w = Self::zero(alg);
        w.values[Layout::of(alg).c(i)] = alg.torus().one();
        w
    }

    /// `I*`: one on `I`, zero elsewhere.
    pub fn i_star(alg: &ToroidalAlgebra) -> Self {
        let mut w = Self::zero(alg);
        w.values[Layout::of(alg).identity()] = alg.torus().one();
        w
    }

    /// The root `eps_i - eps_j` of `sl_d`, extended by zero.
    pub fn finite_root(alg: &ToroidalAlgebra, i: usize, j: usize) -> Self {
        let mut w = Self::zero(alg);
        let eps = |a: usize, k: usize| -> i64 { (a == k) as i64 - (a == k + 1) as i64 };
        for k in 0..alg.d() - 1 {
            w.values[k] = alg.torus().int(eps(i, k) - eps(j, k));
        }
        w
    }

    pub fn eval(&self, x: &CartanVector) -> Cyc {
        let mut acc = Cyc::zero(self.values[0].order());
        for (a, b) in self.values.iter().zip(&x.coords) {
            acc = &acc + &(a * b);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightFunctional {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeightFunctional {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Cyc) -> Self {
        WeightFunctional {
            values: self.values.iter().map(|a| a * k).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.values.iter().map(Cyc::to_json).collect::<Vec<_>>())
    }
}

/// Gram matrix of the invariant form: the Cartan matrix on `h`, `(I, I) = 1`,
/// `(C_i, d_j) = delta_ij`, everything else zero.
pub fn cartan_gram(alg: &ToroidalAlgebra) -> Mat<Cyc> {
    let l = Layout::of(alg);
    let ctx = alg.torus();
    let mut g = Mat::zeros(l.dim(), l.dim(), &ctx.zero());
    for a in 0..l.d - 1 {
        g[(a, a)] = ctx.int(2);
        if a + 1 < l.d - 1 {
            g[(a, a + 1)] = ctx.int(-1);
            g[(a + 1, a)] = ctx.int(-1);
        }
    }
    g[(l.identity(), l.identity())] = ctx.one();
    for i in 0..l.rank {
        g[(l.c(i), l.partial(i))] = ctx.one();
        g[(l.partial(i), l.c(i))] = ctx.one();
    }
    g
}

fn check_len(alg: &ToroidalAlgebra, n: usize) -> Result<()> {
    let dim = Layout::of(alg).dim();
    if n != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: n });
    }
    Ok(())
}

pub fn cartan_form(alg: &ToroidalAlgebra, x: &CartanVector, y: &CartanVector) -> Result<Cyc> {
    check_len(alg, x.coords.len())?;
    check_len(alg, y.coords.len())?;
    let g = cartan_gram(alg);
    let gy = g.apply(&y.coords);
    Ok(WeightFunctional { values: gy }.eval(x))
}

/// The induced form on functionals, through the inverse Gram matrix.
pub fn dual_form(alg: &ToroidalAlgebra, a: &WeightFunctional, b: &WeightFunctional) -> Result<Cyc> {
    check_len(alg, a.values.len())?;
    check_len(alg, b.values.len())?;
    let inv = cartan_gram(alg).inverse().expect("the form is nondegenerate");
    let v = inv.apply(&b.values);
    Ok(WeightFunctional {
        values: a.values.clone(),
    }
    .eval(&CartanVector { coords: v }))
}

/// A real root `gamma = (eps_i - eps_j) + delta_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub i: usize,
    pub j: usize,
    pub m: Degree,
}

impl RealRoot {
    pub fn new(alg: &ToroidalAlgebra, i: usize, j: usize, m: Degree) -> Result<Self> {
        if i == j {
            return Err(Error::NotRealRoot(format!(
                "eps_{i} - eps_{j} is zero, the root is imaginary"
            )));
        }
        if i >= alg.d() || j >= alg.d() {
            return Err(Error::NotRealRoot(format!(
                "indices ({i}, {j}) exceed the matrix size {}",
                alg.d()
            )));
        }
        alg.torus().check_degree(&m)?;
        Ok(RealRoot { i, j, m })
    }

    pub fn functional(&self, alg: &ToroidalAlgebra) -> WeightFunctional {
        WeightFunctional::finite_root(alg, self.i, self.j).add(&WeightFunctional::delta_m(alg, &self.m))
    }

    /// `gamma^vee = alpha^vee + sum m_i C_i`.
    pub fn coroot(&self, alg: &ToroidalAlgebra) -> CartanVector {
        let mut v = CartanVector::zero(alg);
        let (lo, hi, sign) = if self.i < self.j {
            (self.i, self.j, 1)
        } else {
            (self.j, self.i, -1)
        };
        for k in lo..hi {
            v.coords[k] = alg.torus().int(sign);
        }
        let l = Layout::of(alg);
        for (k, &mk) in self.m.0.iter().enumerate() {
            v.coords[l.c(k)] = alg.torus().int(mk);
        }
        v
    }
}

/// `r_gamma(lambda) = lambda - lambda(gamma^vee) gamma`.
pub fn weyl_reflect(alg: &ToroidalAlgebra, lambda: &WeightFunctional, gamma: &RealRoot) -> Result<WeightFunctional> {
    check_len(alg, lambda.values.len())?;
    let k = lambda.eval(&gamma.coroot(alg));
    Ok(lambda.sub(&gamma.functional(alg).scale(&k)))
}
