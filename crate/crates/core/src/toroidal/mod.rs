//! The full toroidal Lie algebra `gl_d(C_q) + HC_1(C_q) + Der(C_q)`.

mod automorphism;
mod cartan;
mod element;

pub use automorphism::{cocycle_correction, ToroidalAutomorphism};
pub use cartan::{cartan_dimension, cartan_form, dual_form, weyl_reflect, CartanVector, RealRoot, WeightFunctional};
pub use element::{Derivation, MatrixTorusElement, ToroidalElement};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hc1::{der_action_on_hc1, pairing, reduce_symbol, HC1Element};
use crate::lattice::Degree;
use crate::linalg::Mat;
use crate::qtorus::TorusContext;
use crate::Cyc;

/// Deliberate corruption of a structure constant, used as a negative control
/// for the verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Doubles `sigma(a, b)` in the matrix part of `[x(a), y(b)]`.
    MatrixBracketConstant,
}

/// One full toroidal algebra: `d x d` matrices over a quantum torus.
#[derive(Debug)]
pub struct ToroidalAlgebra {
    torus: Arc<TorusContext>,
    d: usize,
    fault: Option<Fault>,
}

/// Sign class in the triangular decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Triangular {
    Minus,
    Zero,
    Plus,
}

impl ToroidalAlgebra {
    pub fn new(torus: Arc<TorusContext>, d: usize) -> Arc<Self> {
        assert!(d >= 1, "matrix size must be positive");
        Arc::new(ToroidalAlgebra { torus, d, fault: None })
    }

    pub fn with_fault(torus: Arc<TorusContext>, d: usize, fault: Fault) -> Arc<Self> {
        Arc::new(ToroidalAlgebra {
            torus,
            d,
            fault: Some(fault),
        })
    }

    pub fn torus(&self) -> &Arc<TorusContext> {
        &self.torus
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of torus variables `n + 1`.
    pub fn rank(&self) -> usize {
        self.torus.dim()
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn zero_matrix(&self) -> Mat<Cyc> {
        Mat::zeros(self.d, self.d, &self.torus.zero())
    }

    /// The matrix unit `E_ij`.
    pub fn unit_matrix(&self, i: usize, j: usize) -> Mat<Cyc> {
        let mut m = self.zero_matrix();
        m[(i, j)] = self.torus.one();
        m
    }

    pub fn identity_matrix(&self) -> Mat<Cyc> {
        Mat::identity(self.d, &self.torus.one())
    }

    /// `x(a) = x (x) t^a`.
    pub fn x(&self, x: Mat<Cyc>, a: Degree) -> ToroidalElement {
        ToroidalElement::from_matrix(MatrixTorusElement::monomial(x, a))
    }

    /// `E_ij (x) t^a`.
    pub fn e(&self, i: usize, j: usize, a: Degree) -> ToroidalElement {
        self.x(self.unit_matrix(i, j), a)
    }

    /// `h_i (x) t^a` with `h_i = E_ii - E_{i+1,i+1}`.
    pub fn h(&self, i: usize, a: Degree) -> ToroidalElement {
        let m = self.unit_matrix(i, i).sub(&self.unit_matrix(i + 1, i + 1));
        self.x(m, a)
    }

    /// `I (x) t^a`.
    pub fn identity_at(&self, a: Degree) -> ToroidalElement {
        self.x(self.identity_matrix(), a)
    }

    /// `B_{i,m}`.
    pub fn hc1_basis(&self, i: usize, m: Degree) -> Result<ToroidalElement> {
        Ok(ToroidalElement::from_hc1(HC1Element::basis(&self.torus, i, m)?))
    }

    /// `C_i = <t_i, t_i^{-1}>`.
    pub fn central(&self, i: usize) -> ToroidalElement {
        ToroidalElement::from_hc1(HC1Element::central(&self.torus, i))
    }

    /// `ad t^s`; zero when `s` lies in the radical.
    pub fn ad(&self, s: Degree) -> Result<ToroidalElement> {
        Ok(ToroidalElement::from_derivation(Derivation::inner(
            &self.torus,
            s,
            self.torus.one(),
        )?))
    }

    /// `D(u, r) = sum_i u_i t^r d_i`.
    pub fn der(&self, u: Vec<Cyc>, r: Degree) -> Result<ToroidalElement> {
        Ok(ToroidalElement::from_derivation(Derivation::degree(&self.torus, u, r)?))
    }

    /// `d_i = D(e_i, 0)`.
    pub fn partial(&self, i: usize) -> ToroidalElement {
        let n = self.rank();
        let u = (0..n)
            .map(|k| if k == i { self.torus.one() } else { self.torus.zero() })
            .collect();
        self.der(u, Degree::zero(n)).expect("zero lies in the radical")
    }

    /// `I(u, r) = D(u, r) - D(u, 0)`.
    pub fn i_der(&self, u: Vec<Cyc>, r: Degree) -> Result<ToroidalElement> {
        let a = self.der(u.clone(), r)?;
        let b = self.der(u, Degree::zero(self.rank()))?;
        Ok(a.sub(&b))
    }

    /// Checks that `x` lives in this algebra.
    pub fn check(&self, x: &ToroidalElement) -> Result<()> {
        let n = self.rank();
        let m = self.torus.order();
        let bad = |what: &str| Err(Error::ContextMismatch(what.to_string()));
        for (a, mat) in x.g.terms() {
            if a.len() != n {
                return bad("matrix part degree length");
            }
            if mat.rows() != self.d || mat.cols() != self.d {
                return bad("matrix size");
            }
            if mat.entries().iter().any(|c| c.order() != m) {
                return bad("scalar field of the matrix part");
            }
        }
        for ((mm, i), c) in x.h.coords() {
            if mm.len() != n || *i >= n || c.order() != m {
                return bad("HC1 part");
            }
        }
        for (s, c) in x.d.inner_part() {
            if s.len() != n || c.order() != m || self.torus.in_radical(s) {
                return bad("inner derivation part");
            }
        }
        for (r, u) in x.d.degree_part() {
            if r.len() != n || u.len() != n || u.iter().any(|c| c.order() != m) {
                return bad("degree derivation part");
            }
            if !self.torus.in_radical(r) {
                return bad("degree derivation outside the radical");
            }
        }
        Ok(())
    }

    /// The Lie bracket.
    pub fn bracket(&self, x: &ToroidalElement, y: &ToroidalElement) -> Result<ToroidalElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &ToroidalElement, y: &ToroidalElement) -> ToroidalElement {
        let ctx = &*self.torus;
        let mut out = ToroidalElement::zero();
        // matrix part with the trace cocycle
        for (a, xa) in x.g.terms() {
            for (b, yb) in y.g.terms() {
                let xy = xa.mul(yb);
                let yx = yb.mul(xa);
                let mut s_ab = ctx.sigma(a, b);
                if self.fault == Some(Fault::MatrixBracketConstant) {
                    s_ab = s_ab.scale_int(2);
                }
                let g = xy.scale(&s_ab).sub(&yx.scale(&ctx.sigma(b, a)));
                out.g.add_term(a + b, g);
                let tr = xy.trace();
                if !tr.is_zero() {
                    out.h = out.h.add(&reduce_symbol(ctx, a, b).scale(&tr));
                }
            }
        }
        // derivations acting on the matrix and HC_1 parts
        out.g = out.g.add(&self.der_on_matrix(&x.d, &y.g));
        out.g = out.g.sub(&self.der_on_matrix(&y.d, &x.g));
        out.h = out.h.add(&self.inner_trace_part(&x.d, &y.g));
        out.h = out.h.sub(&self.inner_trace_part(&y.d, &x.g));
        out.h = out.h.add(&der_action_on_hc1(ctx, &x.d, &y.h));
        out.h = out.h.sub(&der_action_on_hc1(ctx, &y.d, &x.h));
        out.d = self.der_bracket(&x.d, &y.d);
        out
    }

    /// `[D, x(a)]` for `D` a derivation, extended linearly.
    pub fn der_on_matrix(&self, d: &Derivation, g: &MatrixTorusElement) -> MatrixTorusElement {
        let ctx = &*self.torus;
        let mut out = MatrixTorusElement::zero();
        for (a, xa) in g.terms() {
            for (s, c) in d.inner_part() {
                let k = &(&ctx.sigma(s, a) - &ctx.sigma(a, s)) * c;
                if !k.is_zero() {
                    out.add_term(a + s, xa.scale(&k));
                }
            }
            for (r, u) in d.degree_part() {
                let k = &pairing(ctx, u, a) * &ctx.sigma(r, a);
                if !k.is_zero() {
                    out.add_term(a + r, xa.scale(&k));
                }
            }
        }
        out
    }

    /// Central part of `[ad t^s, x(a)]`: `Tr(x) <t^s, t^a>`. It makes `ad t^s`
    /// act as `ad (I (x) t^s)`, which is what Jacobi forces once `ad t^s`
    /// kills `HC_1`.
    pub fn inner_trace_part(&self, d: &Derivation, g: &MatrixTorusElement) -> HC1Element {
        let ctx = &*self.torus;
        let mut out = HC1Element::zero();
        for (a, xa) in g.terms() {
            let tr = xa.trace();
            if tr.is_zero() {
                continue;
            }
            for (s, c) in d.inner_part() {
                out = out.add(&reduce_symbol(ctx, s, a).scale(&(&tr * c)));
            }
        }
        out
    }

    /// Bracket of two derivations.
    pub fn der_bracket(&self, x: &Derivation, y: &Derivation) -> Derivation {
        let ctx = &*self.torus;
        let mut out = Derivation::zero();
        for (s, c) in x.inner_part() {
            for (r, e) in y.inner_part() {
                let k = &(&ctx.sigma(s, r) - &ctx.sigma(r, s)) * &(c * e);
                out.add_inner(ctx, s + r, k);
            }
        }
        // [D(u,r), ad t^s] = (u,s) sigma(r,s) ad t^{r+s}
        for (r, u) in x.degree_part() {
            for (s, c) in y.inner_part() {
                let k = &(&pairing(ctx, u, s) * &ctx.sigma(r, s)) * c;
                out.add_inner(ctx, r + s, k);
            }
        }
        for (r, u) in y.degree_part() {
            for (s, c) in x.inner_part() {
                let k = &(&pairing(ctx, u, s) * &ctx.sigma(r, s)) * c;
                out.add_inner(ctx, r + s, -k);
            }
        }
        // [D(u,r), D(u',r')] = D(w, r+r'),
        // w = sigma(r,r') ((u,r') u' - (u',r) u)
        for (r, u) in x.degree_part() {
            for (r2, u2) in y.degree_part() {
                let s = ctx.sigma(r, r2);
                let a = pairing(ctx, u, r2);
                let b = pairing(ctx, u2, r);
                let w: Vec<Cyc> = u
                    .iter()
                    .zip(u2)
                    .map(|(ui, vi)| &s * &(&(&a * vi) - &(&b * ui)))
                    .collect();
                out.add_degree(r + r2, w);
            }
        }
        out
    }

    /// Homogeneous degree of a nonzero element, `None` if mixed or zero.
    pub fn degree_of(&self, x: &ToroidalElement) -> Option<Degree> {
        degree_of(x)
    }

    /// Class of a homogeneous element in the triangular decomposition.
    pub fn triangular_class(&self, x: &ToroidalElement) -> Result<Triangular> {
        let a = degree_of(x).ok_or(Error::NotHomogeneous)?;
        let a0 = a.0[0];
        if a0 > 0 {
            return Ok(Triangular::Plus);
        }
        if a0 < 0 {
            return Ok(Triangular::Minus);
        }
        let mut classes = Vec::new();
        for m in x.g.terms().values() {
            let mut upper = false;
            let mut lower = false;
            let mut diag = false;
            for i in 0..self.d {
                for j in 0..self.d {
                    if !m[(i, j)].is_zero() {
                        match i.cmp(&j) {
                            std::cmp::Ordering::Less => upper = true,
                            std::cmp::Ordering::Greater => lower = true,
                            std::cmp::Ordering::Equal => diag = true,
                        }
                    }
                }
            }
            if upper {
                classes.push(Triangular::Plus);
            }
            if lower {
                classes.push(Triangular::Minus);
            }
            if diag {
                classes.push(Triangular::Zero);
            }
        }
        if !x.h.is_zero() || !x.d.is_zero() {
            classes.push(Triangular::Zero);
        }
        classes.sort();
        classes.dedup();
        match classes.as_slice() {
            [c] => Ok(*c),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Action of a derivation on the torus: `D(u,r) t^a = (u,a) sigma(r,a) t^{r+a}`
    /// and `ad t^s (t^a) = (sigma(s,a) - sigma(a,s)) t^{s+a}`.
    pub fn der_on_torus(&self, d: &Derivation, v: &crate::qtorus::TorusElement) -> crate::qtorus::TorusElement {
        let g = MatrixTorusElement::from_scalar_torus(v, &self.torus.one());
        let img = self.der_on_matrix(d, &g);
        img.to_scalar_torus()
    }
}

/// Homogeneous degree of a nonzero element, `None` if mixed or zero.
pub fn degree_of(x: &ToroidalElement) -> Option<Degree> {
    let mut found: Option<Degree> = None;
    let degs =
        x.g.terms()
            .keys()
            .cloned()
            .chain(x.h.support())
            .chain(x.d.inner_part().keys().cloned())
            .chain(x.d.degree_part().keys().cloned());
    for a in degs {
        match &found {
            None => found = Some(a),
            Some(b) if *b == a => {}
            Some(_) => return None,
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuantumMatrix;

    fn alg(d: usize) -> Arc<ToroidalAlgebra> {
        let q = QuantumMatrix::from_rows(4, vec![vec![0, -1], vec![1, 0]]).unwrap();
        ToroidalAlgebra::new(TorusContext::new(q), d)
    }

    fn dg(v: &[i64]) -> Degree {
        Degree(v.to_vec())
    }

    #[test]
    fn matrix_bracket_with_trace_term() {
        let t = alg(2);
        let ctx = t.torus().clone();
        let a = dg(&[1, 2]);
        let x = t.e(0, 1, a.clone());
        let y = t.e(1, 0, -&a);
        let got = t.bracket(&x, &y).unwrap();
        let z = Degree::zero(2);
        let mut diag = t.unit_matrix(0, 0).scale(&ctx.sigma(&a, &-&a));
        diag = diag.sub(&t.unit_matrix(1, 1).scale(&ctx.sigma(&-&a, &a)));
        let mut expect = t.x(diag, z);
        expect.h = reduce_symbol(&ctx, &a, &-&a);
        assert_eq!(got, expect);
        assert!(!got.h.is_zero());
    }

    #[test]
    fn inner_derivation_carries_trace_term() {
        let q = QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let t = ToroidalAlgebra::new(TorusContext::new(q), 2);
        let ctx = t.torus().clone();
        let (s, a, b) = (dg(&[0, 1]), dg(&[1, 1]), dg(&[1, -2]));
        let ad = t.ad(s.clone()).unwrap();
        let x = t.x(
            Mat::from_rows(vec![vec![ctx.int(3), ctx.zero()], vec![ctx.int(2), ctx.zero()]]),
            a.clone(),
        );
        let y = t.x(
            Mat::from_rows(vec![vec![ctx.int(-1), ctx.int(2)], vec![ctx.zero(), ctx.int(-2)]]),
            b,
        );
        let id = t.x(t.unit_matrix(0, 0).add(&t.unit_matrix(1, 1)), a.clone());
        assert_eq!(
            t.bracket(&ad, &id).unwrap().h,
            reduce_symbol(&ctx, &s, &a).scale(&ctx.int(2))
        );
        let j = t
            .bracket(&ad, &t.bracket(&x, &y).unwrap())
            .unwrap()
            .add(&t.bracket(&x, &t.bracket(&y, &ad).unwrap()).unwrap())
            .add(&t.bracket(&y, &t.bracket(&ad, &x).unwrap()).unwrap());
        assert!(j.is_zero());
        let hc = t.hc1_basis(1, dg(&[2, 0])).unwrap();
        assert!(t.bracket(&ad, &hc).unwrap().is_zero());
    }

    #[test]
    fn degree_derivation_at_zero_scales() {
        let t = alg(2);
        let ctx = t.torus().clone();
        let u = vec![ctx.int(3), ctx.int(-2)];
        let a = dg(&[1, 5]);
        let d = t.der(u.clone(), Degree::zero(2)).unwrap();
        let x = t.e(0, 1, a.clone());
        let got = t.bracket(&d, &x).unwrap();
        assert_eq!(got, x.scale(&pairing(&ctx, &u, &a)));
        assert!(t.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn i_der_brackets() {
        // [I(u,r), I(v,s)] = I(w, r+s) + (v,r) I(u,r) - (u,s) I(v,s) under trivial sigma on rad
        let t = alg(1);
        let ctx = t.torus().clone();
        let u = vec![ctx.int(1), ctx.int(2)];
        let v = vec![ctx.int(-1), ctx.int(3)];
        let r = dg(&[4, 0]);
        let s = dg(&[0, 4]);
        let iu = t.i_der(u.clone(), r.clone()).unwrap();
        let iv = t.i_der(v.clone(), s.clone()).unwrap();
        let lhs = t.bracket(&iu, &iv).unwrap();
        let sg = ctx.sigma(&r, &s);
        let ur = pairing(&ctx, &u, &s);
        let vr = pairing(&ctx, &v, &r);
        let w: Vec<Cyc> = u
            .iter()
            .zip(&v)
            .map(|(a, b)| &sg * &(&(&ur * b) - &(&vr * a)))
            .collect();
        let rhs = t.i_der(w, &r + &s).unwrap().add(&iu.scale(&vr)).sub(&iv.scale(&ur));
        assert_eq!(lhs, rhs);

        // [I(u,r), ad t^a] = (u,a) (ad t^{r+a} - ad t^a)
        let a = dg(&[1, 2]);
        let lhs = t.bracket(&iu, &t.ad(a.clone()).unwrap()).unwrap();
        let rhs = t
            .ad(&r + &a)
            .unwrap()
            .sub(&t.ad(a.clone()).unwrap())
            .scale(&pairing(&ctx, &u, &a));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees() {
        let t = alg(2);
        let a = dg(&[1, 0]);
        let b = dg(&[0, 1]);
        assert_eq!(degree_of(&t.e(0, 1, a.clone())), Some(a.clone()));
        assert_eq!(degree_of(&t.ad(b.clone()).unwrap()), Some(b.clone()));
        assert_eq!(degree_of(&t.e(0, 1, a).add(&t.e(0, 1, b))), None);
    }

    #[test]
    fn triangular_examples() {
        let t = alg(2);
        let z = Degree::zero(2);
        assert_eq!(t.triangular_class(&t.e(0, 1, z.clone())).unwrap(), Triangular::Plus);
        assert_eq!(t.triangular_class(&t.e(1, 0, z.clone())).unwrap(), Triangular::Minus);
        assert_eq!(
            t.triangular_class(&t.identity_at(dg(&[-1, 3]))).unwrap(),
            Triangular::Minus
        );
        assert_eq!(t.triangular_class(&t.h(0, dg(&[0, 3]))).unwrap(), Triangular::Zero);
        assert_eq!(t.triangular_class(&t.central(0)).unwrap(), Triangular::Zero);
        let mixed = t.e(0, 1, z.clone()).add(&t.e(1, 0, z));
        assert_eq!(t.triangular_class(&mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn context_checks() {
        let t2 = alg(2);
        let t3 = alg(3);
        let x = t3.e(0, 2, Degree::zero(2));
        assert!(matches!(t2.bracket(&x, &x), Err(Error::ContextMismatch(_))));
    }
}
