//! Finite-dimensional realization of a quantum torus in simple form.
//!
//! Each block of order `k` is modelled on `M_k` by the clock matrix
//! `diag(1, q, .., q^{k-1})` and the cyclic shift; blocks are combined by
//! Kronecker products with block 1 most significant. The monomial `X^a` is
//! the ordered product `X_1^{a_1} .. X_n^{a_n}` (exponents reduced modulo the
//! block order), so `t^a -> X^a (x) x^a` needs no extra phase.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{simple_form_data, xi_basis, Degree, QuantumMatrix, SimpleFormData};
use crate::linalg::{rank_of_vectors, Mat};
use crate::qtorus::{TorusContext, TorusElement};
use crate::toroidal::{MatrixTorusElement, ToroidalAlgebra, ToroidalElement};
use crate::Cyc;

/// `Z^n / rad f'` for a matrix in simple form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGroup {
    moduli: Vec<i64>,
    xi: Vec<Degree>,
}

impl GammaGroup {
    pub fn new(q: &QuantumMatrix) -> Result<Self> {
        let data = simple_form_data(q)?;
        let n = q.dim();
        let moduli = (0..n)
            .map(|l| if l / 2 < data.z { data.orders[l / 2] as i64 } else { 1 })
            .collect();
        Ok(GammaGroup {
            moduli,
            xi: xi_basis(q)?,
        })
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn xi(&self) -> &[Degree] {
        &self.xi
    }

    /// `|Gamma| = prod k_i^2`.
    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&k| k as usize).product()
    }

    /// Normal form with entries in `[0, k)`.
    pub fn residue(&self, a: &Degree) -> Degree {
        Degree(a.0.iter().zip(&self.moduli).map(|(&x, &k)| x.rem_euclid(k)).collect())
    }

    /// Representative in `Gamma_0`: entries in `1..=k` inside the blocks and
    /// `0` beyond them.
    pub fn gamma0_rep(&self, a: &Degree) -> Degree {
        Degree(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &k)| if k == 1 { 0 } else { (x - 1).rem_euclid(k) + 1 })
                .collect(),
        )
    }

    /// All of `Gamma_0`.
    pub fn gamma0(&self) -> Vec<Degree> {
        let lo: Vec<i64> = self.moduli.iter().map(|&k| i64::from(k != 1)).collect();
        let hi: Vec<i64> = self.moduli.iter().map(|&k| if k == 1 { 0 } else { k }).collect();
        crate::oracle::box_points(&lo, &hi)
    }

    pub fn is_zero(&self, a: &Degree) -> bool {
        self.residue(a).is_zero()
    }
}

/// Clock and shift matrices for a simple-form torus.
#[derive(Debug)]
pub struct ClockShiftRealization {
    ctx: Arc<TorusContext>,
    data: SimpleFormData,
    gamma: GammaGroup,
    size: usize,
    generators: Vec<Mat<Cyc>>,
    monomials: BTreeMap<Degree, Mat<Cyc>>,
}

impl ClockShiftRealization {
    pub fn new(q: &QuantumMatrix) -> Result<Self> {
        let data = simple_form_data(q)?;
        let gamma = GammaGroup::new(q)?;
        let ctx = TorusContext::new(q.clone());
        let m = q.order();
        let zero = Cyc::zero(m);
        let one = Cyc::one(m);
        let size = data.size();
        let n = q.dim();
        let mut generators = Vec::with_capacity(n);
        for l in 0..n {
            let g = if l / 2 < data.z {
                let i = l / 2;
                let k = data.orders[i] as usize;
                let local = if l % 2 == 0 {
                    Mat::from_fn(k, k, |r, c| {
                        if r == c {
                            Cyc::root_of_unity(m, data.exponents[i] * r as i64)
                        } else {
                            zero.clone()
                        }
                    })
                } else {
                    Mat::from_fn(k, k, |r, c| if c == (r + 1) % k { one.clone() } else { zero.clone() })
                };
                let before: usize = data.orders[..i].iter().map(|&k| k as usize).product();
                let after: usize = data.orders[i + 1..].iter().map(|&k| k as usize).product();
                Mat::identity(before, &one)
                    .kron(&local)
                    .kron(&Mat::identity(after, &one))
            } else {
                Mat::identity(size, &one)
            };
            generators.push(g);
        }
        let mut real = ClockShiftRealization {
            ctx,
            data,
            gamma,
            size,
            generators,
            monomials: BTreeMap::new(),
        };
        let mut memo = BTreeMap::new();
        for a in real.gamma.gamma0() {
            let r = real.gamma.residue(&a);
            let x = real.ordered_product(&r);
            memo.insert(r, x);
        }
        real.monomials = memo;
        real.check_generator_relations()?;
        Ok(real)
    }

    fn ordered_product(&self, residue: &Degree) -> Mat<Cyc> {
        let one = Cyc::one(self.ctx.order());
        let mut x = Mat::identity(self.size, &one);
        for (l, &e) in residue.0.iter().enumerate() {
            if e > 0 {
                x = x.mul(&self.generators[l].pow(e as u64));
            }
        }
        x
    }

    /// `X_{2i-1} X_{2i} = q'_{2i-1,2i} X_{2i} X_{2i-1}` for every block.
    fn check_generator_relations(&self) -> Result<()> {
        for i in 0..self.data.z {
            let (x, y) = (&self.generators[2 * i], &self.generators[2 * i + 1]);
            let q = self.ctx.zeta(self.ctx.matrix().exp(2 * i, 2 * i + 1));
            if x.mul(y) != y.mul(x).scale(&q) {
                return Err(Error::NotSimpleForm(format!("block {i} generators do not q-commute")));
            }
        }
        Ok(())
    }

    pub fn torus(&self) -> &Arc<TorusContext> {
        &self.ctx
    }

    pub fn data(&self) -> &SimpleFormData {
        &self.data
    }

    pub fn gamma(&self) -> &GammaGroup {
        &self.gamma
    }

    /// `N = prod k_i`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[Mat<Cyc>] {
        &self.generators
    }

    pub fn identity(&self) -> Mat<Cyc> {
        Mat::identity(self.size, &self.ctx.one())
    }

    /// `X^a`, depending only on the class of `a` in `Gamma`.
    pub fn monomial(&self, a: &Degree) -> Mat<Cyc> {
        self.monomials[&self.gamma.residue(a)].clone()
    }

    /// Image of `t^a` under the loop embedding, as a matrix-valued Laurent
    /// polynomial.
    pub fn loop_hom(&self, u: &TorusElement) -> Result<LoopElement> {
        let mut out = LoopElement::zero();
        for (a, c) in u.terms() {
            self.ctx.check_degree(a)?;
            out.add_term(a.clone(), self.monomial(a).scale(c));
        }
        Ok(out)
    }

    /// Image in `C_{q'} / J = M_N`: the loop image evaluated at `x = 1`.
    pub fn quotient_to_mat(&self, u: &TorusElement) -> Result<Mat<Cyc>> {
        Ok(self.loop_hom(u)?.eval_at_one(self.size, self.ctx.order()))
    }

    /// Rank of the images of `Gamma_0` in `M_N`, as vectors of length `N^2`.
    pub fn gamma0_image_rank(&self) -> usize {
        let vecs: Vec<Vec<Cyc>> = self
            .gamma
            .gamma0()
            .iter()
            .map(|a| self.monomial(a).entries().to_vec())
            .collect();
        rank_of_vectors(&vecs)
    }

    /// Coefficient `c` with `x = c X^a`, or `None` if `x` is not on that line.
    pub fn coefficient_on(&self, x: &Mat<Cyc>, a: &Degree) -> Option<Cyc> {
        let xa = self.monomial(a);
        let (pos, base) = xa.entries().iter().enumerate().find(|(_, v)| !v.is_zero())?;
        let c = &x.entries()[pos] * &base.inverse().ok()?;
        (xa.scale(&c) == *x).then_some(c)
    }

    pub fn to_json(&self) -> Value {
        let mat = |x: &Mat<Cyc>| -> Value {
            Value::Array(
                x.to_rows()
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cyc::to_json).collect()))
                    .collect(),
            )
        };
        json!({
            "z": self.data.z,
            "orders": self.data.orders,
            "N": self.size,
            "generators": self.generators[..2 * self.data.z].iter().map(mat).collect::<Vec<_>>(),
        })
    }
}

/// A matrix-valued Laurent polynomial `sum_a M_a (x) x^a` in commuting `x`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LoopElement {
    terms: BTreeMap<Degree, Mat<Cyc>>,
}

impl LoopElement {
    pub fn zero() -> Self {
        LoopElement::default()
    }

    pub fn monomial(a: Degree, x: Mat<Cyc>) -> Self {
        let mut e = Self::zero();
        e.add_term(a, x);
        e
    }

    pub fn terms(&self) -> &BTreeMap<Degree, Mat<Cyc>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Degree, x: Mat<Cyc>) {
        if x.is_zero() {
            return;
        }
        let s = match self.terms.remove(&a) {
            Some(old) => old.add(&x),
            None => x,
        };
        if !s.is_zero() {
            self.terms.insert(a, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, x) in &other.terms {
            out.add_term(a.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, x) in &other.terms {
            out.add_term(a.clone(), x.neg());
        }
        out
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x.mul(y));
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `sum_a M_a`.
    pub fn eval_at_one(&self, size: usize, m: u32) -> Mat<Cyc> {
        let mut acc = Mat::zeros(size, size, &Cyc::zero(m));
        for x in self.terms.values() {
            acc = acc.add(x);
        }
        acc
    }
}

/// `xi(b) = (b_1^{xi_1}, .., b_n^{xi_n})`, with `xi_l` the scale of the
/// `l`-th basis vector of the radical.
pub fn xi_eval(gamma: &GammaGroup, b: &[Cyc]) -> Result<Vec<Cyc>> {
    if b.len() != gamma.moduli.len() {
        return Err(Error::DimensionMismatch {
            expected: gamma.moduli.len(),
            got: b.len(),
        });
    }
    b.iter()
        .zip(&gamma.moduli)
        .map(|(x, &k)| {
            if x.is_zero() {
                Err(Error::ZeroCoordinate)
            } else {
                x.pow(k)
            }
        })
        .collect()
}

/// An element of the direct sum of `d` twisted loop algebras over `gl_N`
/// and one over `sl_N`: `d + 1` matrix-valued Laurent polynomials, the last
/// one (the `Y` part) never touching degrees of the radical.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LoopSum {
    pub parts: Vec<LoopElement>,
}

impl LoopSum {
    pub fn zero(d: usize) -> Self {
        LoopSum {
            parts: vec![LoopElement::zero(); d + 1],
        }
    }

    /// `X_i^a (x) x^a` in the `i`-th copy (0-based, `i < d`).
    pub fn x(real: &ClockShiftRealization, d: usize, i: usize, a: Degree, c: &Cyc) -> Self {
        let mut s = Self::zero(d);
        s.parts[i] = LoopElement::monomial(a.clone(), real.monomial(&a).scale(c));
        s
    }

    /// `Y^a (x) x^a`.
    pub fn y(real: &ClockShiftRealization, d: usize, a: Degree, c: &Cyc) -> Self {
        let mut s = Self::zero(d);
        s.parts[d] = LoopElement::monomial(a.clone(), real.monomial(&a).scale(c));
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        LoopSum {
            parts: self.parts.iter().zip(&other.parts).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        LoopSum {
            parts: self.parts.iter().zip(&other.parts).map(|(x, y)| x.bracket(y)).collect(),
        }
    }
}

/// The isomorphism from the direct sum of loop algebras onto the ideal
/// spanned by diagonal matrices over the torus and the inner derivations
/// `ad t^s`, `s` off the radical.
///
/// The target is the full toroidal algebra over `q'` with a central
/// variable `t_0` prepended, so a degree `a` becomes `(0, a)`.
#[derive(Debug)]
pub struct LoopIsomorphism<'a> {
    real: &'a ClockShiftRealization,
    target: Arc<ToroidalAlgebra>,
}

impl<'a> LoopIsomorphism<'a> {
    pub fn new(real: &'a ClockShiftRealization, d: usize) -> Self {
        let q = real.torus().matrix().with_central_head();
        LoopIsomorphism {
            real,
            target: ToroidalAlgebra::new(TorusContext::new(q), d),
        }
    }

    pub fn target(&self) -> &Arc<ToroidalAlgebra> {
        &self.target
    }

    /// `X_i^a x^a -> E_ii t^a` and `Y^a x^a -> ad t^a - I t^a`.
    pub fn apply(&self, x: &LoopSum) -> Result<ToroidalElement> {
        let d = self.target.d();
        if x.parts.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                got: x.parts.len(),
            });
        }
        let mut out = ToroidalElement::zero();
        for (i, part) in x.parts.iter().enumerate() {
            for (a, mat) in part.terms() {
                let c = self.real.coefficient_on(mat, a).ok_or_else(|| {
                    Error::IncompatibleGrading(format!("component at degree {a} is not a multiple of X^a"))
                })?;
                let ha = a.with_head(0);
                if i < d {
                    let e = self.target.unit_matrix(i, i).scale(&c);
                    out = out.add(&ToroidalElement::from_matrix(MatrixTorusElement::monomial(e, ha)));
                } else {
                    if self.real.torus().in_radical(a) {
                        return Err(Error::NotInRadical(format!(
                            "Y part at {a} lies in the radical and is excluded"
                        )));
                    }
                    let ad = self.target.ad(ha.clone())?.scale(&c);
                    let id = self.target.identity_at(ha).scale(&c);
                    out = out.add(&ad.sub(&id));
                }
            }
        }
        Ok(out)
    }

    /// Target bracket with the central `HC_1` part dropped: the ideal is a
    /// copy of the loop sum only modulo that center.
    pub fn target_bracket(&self, x: &ToroidalElement, y: &ToroidalElement) -> Result<ToroidalElement> {
        let mut b = self.target.bracket(x, y)?;
        b.h = Default::default();
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cube;

    fn block(k: i64) -> QuantumMatrix {
        QuantumMatrix::from_rows(k as u32, vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn order_two_generators() {
        let r = ClockShiftRealization::new(&block(2)).unwrap();
        let g = r.generators();
        let one = Cyc::one(2);
        let m1 = -&one;
        let z = Cyc::zero(2);
        assert_eq!(
            g[0],
            Mat::from_rows(vec![vec![one.clone(), z.clone()], vec![z.clone(), m1]])
        );
        assert_eq!(g[1], Mat::from_rows(vec![vec![z.clone(), one.clone()], vec![one, z]]));
        assert_eq!(g[0].mul(&g[1]), g[1].mul(&g[0]).neg());
    }

    #[test]
    fn order_three_clock() {
        let r = ClockShiftRealization::new(&block(3)).unwrap();
        let x1 = &r.generators()[0];
        assert_eq!(x1[(1, 1)], Cyc::root_of_unity(3, 1));
        assert_eq!(x1[(2, 2)], Cyc::root_of_unity(3, 2));
        assert!(x1.pow(3).is_identity());
    }

    #[test]
    fn trivial_realization() {
        let q = QuantumMatrix::trivial(2);
        let r = ClockShiftRealization::new(&q).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.gamma().order(), 1);
        assert_eq!(r.gamma0_image_rank(), 1);
    }

    #[test]
    fn not_simple_is_rejected() {
        let q = QuantumMatrix::from_rows(4, vec![vec![0, 0, -1], vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert!(ClockShiftRealization::new(&q).is_err());
    }

    #[test]
    fn loop_hom_on_units_and_radical() {
        let r = ClockShiftRealization::new(&block(2)).unwrap();
        let ctx = r.torus().clone();
        let one = r.loop_hom(&TorusElement::one(&ctx)).unwrap();
        assert_eq!(one, LoopElement::monomial(Degree::zero(2), r.identity()));
        for xi in r.gamma().xi() {
            let img = r.loop_hom(&TorusElement::unit_monomial(&ctx, xi.clone())).unwrap();
            assert_eq!(img, LoopElement::monomial(xi.clone(), r.identity()));
        }
    }

    #[test]
    fn loop_hom_multiplicative_on_box() {
        for k in [2, 3, 4] {
            let r = ClockShiftRealization::new(&block(k)).unwrap();
            let ctx = r.torus().clone();
            for a in cube(2, 2) {
                for b in cube(2, 2) {
                    let ta = TorusElement::unit_monomial(&ctx, a.clone());
                    let tb = TorusElement::unit_monomial(&ctx, b.clone());
                    let lhs = r.loop_hom(&crate::qtorus::multiply(&ctx, &ta, &tb)).unwrap();
                    let rhs = r.loop_hom(&ta).unwrap().mul(&r.loop_hom(&tb).unwrap());
                    assert_eq!(lhs, rhs, "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn quotient_kernel_and_image() {
        let r = ClockShiftRealization::new(&block(2)).unwrap();
        let ctx = r.torus().clone();
        let a = Degree::from([1, -1]);
        let xi = r.gamma().xi()[0].clone();
        let diff = TorusElement::unit_monomial(&ctx, &a + &xi).sub(&TorusElement::unit_monomial(&ctx, a));
        assert!(r.quotient_to_mat(&diff).unwrap().is_zero());
        assert_eq!(r.gamma().gamma0().len(), 4);
        assert_eq!(r.gamma0_image_rank(), 4);
        assert!(r.quotient_to_mat(&TorusElement::one(&ctx)).unwrap().is_identity());
    }

    #[test]
    fn xi_eval_examples() {
        let r = ClockShiftRealization::new(&block(2)).unwrap();
        let one = Cyc::one(2);
        let pt = vec![-&one, one.clone()];
        assert_eq!(xi_eval(r.gamma(), &pt).unwrap(), vec![one.clone(), one.clone()]);
        assert_eq!(
            xi_eval(r.gamma(), &[one.clone(), one.clone()]).unwrap(),
            vec![one.clone(), one.clone()]
        );
        assert!(matches!(
            xi_eval(r.gamma(), &[Cyc::zero(2), one]),
            Err(Error::ZeroCoordinate)
        ));
    }

    #[test]
    fn loop_iso_x_part() {
        let r = ClockShiftRealization::new(&block(2)).unwrap();
        let iso = LoopIsomorphism::new(&r, 2);
        let one = Cyc::one(2);
        let x = LoopSum::x(&r, 2, 0, Degree::from([1, 0]), &one);
        let img = iso.apply(&x).unwrap();
        assert_eq!(img, iso.target().e(0, 0, Degree::from([0, 1, 0])));
        let y = LoopSum::y(&r, 2, Degree::from([2, 0]), &one);
        assert!(iso.apply(&y).is_err());
    }
}
