//! Seeded random sampling (ChaCha8) of degrees, scalars and homogeneous
//! elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Degree, IntMatrix, LatticeAutomorphism};
use crate::linalg::Mat;
use crate::oracle::cube;
use crate::qtorus::TorusContext;
use crate::toroidal::{ToroidalAlgebra, ToroidalElement};
use crate::Cyc;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("nonempty choice")
    }

    pub fn degree(&mut self, n: usize, r: i64) -> Degree {
        Degree((0..n).map(|_| self.int(-r, r)).collect())
    }

    /// `a + b zeta` with small integers, never zero.
    pub fn scalar(&mut self, ctx: &TorusContext) -> Cyc {
        loop {
            let a = ctx.int(self.int(-2, 2));
            let b = ctx.zeta(1).scale_int(self.int(-1, 1));
            let c = &a + &b;
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn vector(&mut self, ctx: &TorusContext, len: usize) -> Vec<Cyc> {
        (0..len).map(|_| ctx.int(self.int(-2, 2))).collect()
    }

    /// A unimodular matrix built from a few elementary moves and a swap.
    pub fn unimodular(&mut self, n: usize) -> LatticeAutomorphism {
        let mut a = IntMatrix::identity(n);
        if n < 2 {
            return LatticeAutomorphism::new(a).expect("identity");
        }
        for _ in 0..3 {
            let i = self.index(n);
            let mut j = self.index(n - 1);
            if j >= i {
                j += 1;
            }
            let c = *self.pick(&[-1i64, 1, 2]);
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = c;
            a = a.mul(&e);
        }
        if self.int(0, 1) == 1 {
            let mut p = IntMatrix::zeros(n, n);
            for k in 0..n {
                p[(k, (k + 1) % n)] = 1;
            }
            a = a.mul(&p);
        }
        LatticeAutomorphism::new(a).expect("elementary products are unimodular")
    }
}

/// Degree lists for drawing homogeneous elements of one algebra.
pub struct ElementSampler<'a> {
    alg: &'a ToroidalAlgebra,
    all: Vec<Degree>,
    radical: Vec<Degree>,
    off_radical: Vec<Degree>,
}

impl<'a> ElementSampler<'a> {
    pub fn new(alg: &'a ToroidalAlgebra, r: i64) -> Self {
        let ctx = alg.torus();
        let all = cube(ctx.dim(), r);
        let (radical, off_radical): (Vec<Degree>, Vec<Degree>) = all.iter().cloned().partition(|a| ctx.in_radical(a));
        ElementSampler {
            alg,
            all,
            radical,
            off_radical,
        }
    }

    /// A random matrix with one to three nonzero entries.
    pub fn matrix(&self, s: &mut Sampler) -> Mat<Cyc> {
        let ctx = self.alg.torus();
        let d = self.alg.d();
        let mut x = self.alg.zero_matrix();
        for _ in 0..s.int(1, 3) {
            let (i, j) = (s.index(d), s.index(d));
            x[(i, j)] = s.scalar(ctx);
        }
        x
    }

    /// A homogeneous element of one of the four kinds: matrix, `HC_1`,
    /// inner derivation, degree derivation.
    pub fn element(&self, s: &mut Sampler) -> ToroidalElement {
        let ctx = self.alg.torus();
        let n = ctx.dim();
        loop {
            let e = match s.int(0, 3) {
                0 => self.alg.x(self.matrix(s), s.pick(&self.all).clone()),
                1 => {
                    let m = s.pick(&self.radical).clone();
                    let i = s.index(n);
                    match self.alg.hc1_basis(i, m) {
                        Ok(b) => b.scale(&s.scalar(ctx)),
                        Err(_) => continue,
                    }
                }
                2 => {
                    if self.off_radical.is_empty() {
                        continue;
                    }
                    let a = s.pick(&self.off_radical).clone();
                    self.alg.ad(a).expect("degree length matches").scale(&s.scalar(ctx))
                }
                _ => {
                    let r = s.pick(&self.radical).clone();
                    let u = s.vector(ctx, n);
                    self.alg.der(u, r).expect("radical degree")
                }
            };
            if !e.is_zero() {
                return e;
            }
        }
    }
}
