//! Isomorphisms between full toroidal algebras induced by `GL(n+1, Z)`.
//!
//! For `A` unimodular and `q' = A^T q A`, the map `t'^a -> c(a) t^{Aa}` is an
//! algebra isomorphism `C_{q'} -> C_q` once the phase `c(a)` absorbs the
//! difference between `sigma'(a, b)` and `sigma(Aa, Ab)`. It extends to the
//! full toroidal algebras by
//!
//! * `x(a) -> c(a) x(Aa)`,
//! * `<t'^a, t'^b> -> c(a) c(b) <t^{Aa}, t^{Ab}>`,
//! * `ad t'^s -> c(s) ad t^{As}`,
//! * `D'(u, r) -> c(r) D(Bu, Ar)` with `B = (A^T)^{-1}`.

use std::sync::Arc;

use super::{Derivation, MatrixTorusElement, ToroidalAlgebra, ToroidalElement};
use crate::error::{Error, Result};
use crate::hc1::{basis_as_symbol, reduce_symbol, HC1Element};
use crate::lattice::{apply_automorphism, Degree, IntMatrix, LatticeAutomorphism, QuantumMatrix};
use crate::qtorus::TorusContext;
use crate::Cyc;

/// `S = L' - A^T L A`, with `L` the lower triangle of the exponent matrix
/// so that `sigma(a, b) = zeta^{a^T L b}`.
///
/// `S` is symmetric modulo `m`, and `sigma'(a,b) / sigma(Aa,Ab) = zeta^{a^T S b}`.
pub fn cocycle_correction(a: &LatticeAutomorphism, q: &QuantumMatrix) -> Result<IntMatrix> {
    let qp = apply_automorphism(a, q)?;
    let lower = |k: &QuantumMatrix| {
        let n = k.dim();
        let mut l = IntMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                l[(j, i)] = k.exp(j, i);
            }
        }
        l
    };
    let l = lower(q);
    let lp = lower(&qp);
    let at = a.matrix().transpose();
    let conj = at.mul(&l).mul(a.matrix());
    let n = q.dim();
    let mut s = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = lp[(i, j)] - conj[(i, j)];
        }
    }
    Ok(s)
}

/// The isomorphism from the algebra over `q' = A^T q A` onto the algebra
/// over `q`.
#[derive(Debug)]
pub struct ToroidalAutomorphism {
    a: LatticeAutomorphism,
    source: Arc<ToroidalAlgebra>,
    target: Arc<ToroidalAlgebra>,
    s: IntMatrix,
}

impl ToroidalAutomorphism {
    pub fn new(target: &Arc<ToroidalAlgebra>, a: LatticeAutomorphism) -> Result<Self> {
        let q = target.torus().matrix();
        let qp = apply_automorphism(&a, q)?;
        let s = cocycle_correction(&a, q)?;
        let source = ToroidalAlgebra::new(TorusContext::new(qp), target.d());
        Ok(ToroidalAutomorphism {
            a,
            source,
            target: target.clone(),
            s,
        })
    }

    pub fn source(&self) -> &Arc<ToroidalAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ToroidalAlgebra> {
        &self.target
    }

    pub fn lattice_map(&self) -> &LatticeAutomorphism {
        &self.a
    }

    /// Exponent of `c(a)`: `-sum_{i<j} S_ij a_i a_j - sum_i S_ii a_i (a_i - 1) / 2`.
    pub fn phase_exp(&self, a: &Degree) -> i64 {
        let n = a.len();
        let mut e = 0i64;
        for i in 0..n {
            let ai = a.0[i];
            e -= self.s[(i, i)] * (ai * (ai - 1) / 2);
            for j in i + 1..n {
                e -= self.s[(i, j)] * ai * a.0[j];
            }
        }
        e.rem_euclid(self.target.torus().order() as i64)
    }

    pub fn phase(&self, a: &Degree) -> Cyc {
        self.target.torus().zeta(self.phase_exp(a))
    }

    /// Image of an element of the source algebra.
    pub fn apply(&self, x: &ToroidalElement) -> Result<ToroidalElement> {
        self.source.check(x)?;
        let ctx = &**self.target.torus();
        let src = &**self.source.torus();
        let mut out = ToroidalElement::zero();
        let mut g = MatrixTorusElement::zero();
        for (a, m) in x.g.terms() {
            g.add_term(self.a.apply(a), m.scale(&self.phase(a)));
        }
        out.g = g;
        let mut h = HC1Element::zero();
        for ((m, i), c) in x.h.coords() {
            let (s, ea, eb) = basis_as_symbol(src, *i, m);
            let k = &(&s * &self.phase(&ea)) * &(&self.phase(&eb) * c);
            let img = reduce_symbol(ctx, &self.a.apply(&ea), &self.a.apply(&eb));
            h = h.add(&img.scale(&k));
        }
        out.h = h;
        let mut d = Derivation::zero();
        for (s, c) in x.d.inner_part() {
            d.add_inner(ctx, self.a.apply(s), c * &self.phase(s));
        }
        let b = self.a.inverse_transpose();
        for (r, u) in x.d.degree_part() {
            let ph = self.phase(r);
            let bu: Vec<Cyc> = (0..u.len())
                .map(|i| {
                    let mut acc = ctx.zero();
                    for (j, uj) in u.iter().enumerate() {
                        if b[(i, j)] != 0 {
                            acc = &acc + &uj.scale_int(b[(i, j)]);
                        }
                    }
                    &acc * &ph
                })
                .collect();
            let ar = self.a.apply(r);
            if !ctx.in_radical(&ar) {
                return Err(Error::NotInRadical(ar.to_string()));
            }
            d.add_degree(ar, bu);
        }
        out.d = d;
        Ok(out)
    }
}
