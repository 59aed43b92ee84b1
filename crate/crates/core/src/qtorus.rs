//! The quantum torus `C_q`: the cocycle `sigma`, the commutation form `f`,
//! graded multiplication, commutators and the center/commutator splitting.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{radical_basis, Degree, IntMatrix, QuantumMatrix, RadicalLattice};
use crate::Cyc;

/// Shared data of one quantum torus: the matrix, its radical, and a table of
/// powers of `zeta_m`.
#[derive(Debug)]
pub struct TorusContext {
    q: QuantumMatrix,
    rad: RadicalLattice,
    lower: IntMatrix,
    roots: Vec<Cyc>,
}

impl TorusContext {
    pub fn new(q: QuantumMatrix) -> Arc<Self> {
        let n = q.dim();
        let mut lower = IntMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                lower[(j, i)] = q.exp(j, i);
            }
        }
        let m = q.order();
        let roots = (0..m as i64).map(|k| Cyc::root_of_unity(m, k)).collect();
        let rad = radical_basis(&q);
        Arc::new(TorusContext { q, rad, lower, roots })
    }

    pub fn matrix(&self) -> &QuantumMatrix {
        &self.q
    }

    pub fn radical(&self) -> &RadicalLattice {
        &self.rad
    }

    /// Number of variables `n + 1`.
    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn order(&self) -> u32 {
        self.q.order()
    }

    /// `zeta_m^k`.
    pub fn zeta(&self, k: i64) -> Cyc {
        self.roots[k.rem_euclid(self.order() as i64) as usize].clone()
    }

    pub fn zero(&self) -> Cyc {
        Cyc::zero(self.order())
    }

    pub fn one(&self) -> Cyc {
        Cyc::one(self.order())
    }

    pub fn int(&self, n: i64) -> Cyc {
        Cyc::from_int(self.order(), n)
    }

    /// Exponent of `sigma(a, b) = zeta^{sum_{i <= j} K_ji a_j b_i}`, in `[0, m)`.
    pub fn sigma_exp(&self, a: &Degree, b: &Degree) -> i64 {
        let n = self.dim();
        debug_assert!(a.len() == n && b.len() == n);
        let mut s = 0i64;
        for j in 0..n {
            let aj = a.0[j];
            if aj == 0 {
                continue;
            }
            for i in 0..=j {
                s += self.lower[(j, i)] * aj * b.0[i];
            }
        }
        s.rem_euclid(self.order() as i64)
    }

    pub fn sigma(&self, a: &Degree, b: &Degree) -> Cyc {
        self.zeta(self.sigma_exp(a, b))
    }

    /// Exponent of `f(a, b) = sigma(a, b) / sigma(b, a)`.
    pub fn f_exp(&self, a: &Degree, b: &Degree) -> i64 {
        (self.sigma_exp(a, b) - self.sigma_exp(b, a)).rem_euclid(self.order() as i64)
    }

    pub fn f_form(&self, a: &Degree, b: &Degree) -> Cyc {
        self.zeta(self.f_exp(a, b))
    }

    pub fn in_radical(&self, a: &Degree) -> bool {
        self.rad.contains(a)
    }

    pub fn check_degree(&self, a: &Degree) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: a.len(),
            });
        }
        Ok(())
    }
}

/// A finitely supported element `sum c_a t^a` of the quantum torus.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TorusElement {
    terms: BTreeMap<Degree, Cyc>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement::default()
    }

    /// `c t^a`.
    pub fn monomial(a: Degree, c: Cyc) -> Self {
        let mut e = TorusElement::zero();
        e.add_term(a, c);
        e
    }

    /// `t^a` with coefficient one in `Q(zeta_m)`.
    pub fn unit_monomial(ctx: &TorusContext, a: Degree) -> Self {
        Self::monomial(a, ctx.one())
    }

    pub fn one(ctx: &TorusContext) -> Self {
        Self::unit_monomial(ctx, Degree::zero(ctx.dim()))
    }

    pub fn terms(&self) -> &BTreeMap<Degree, Cyc> {
        &self.terms
    }

    pub fn coeff(&self, a: &Degree) -> Option<&Cyc> {
        self.terms.get(a)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Degree, c: Cyc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Cyc) -> TorusElement {
        let mut out = TorusElement::zero();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    /// The single degree of a nonzero monomial.
    pub fn homogeneous_degree(&self) -> Option<&Degree> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| json!({ "deg": a.to_json(), "coeff": c.to_json() }))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "t^{}", a)?;
            } else {
                write!(f, "({})*t^{}", c, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Bilinear extension of `t^a t^b = sigma(a, b) t^{a+b}`.
pub fn multiply(ctx: &TorusContext, u: &TorusElement, v: &TorusElement) -> TorusElement {
    let mut out = TorusElement::zero();
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let c = &(x * y) * &ctx.sigma(a, b);
            out.add_term(a + b, c);
        }
    }
    out
}

/// `uv - vu`.
pub fn lie_bracket(ctx: &TorusContext, u: &TorusElement, v: &TorusElement) -> TorusElement {
    let mut out = TorusElement::zero();
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let e = ctx.sigma_exp(a, b);
            let e2 = ctx.sigma_exp(b, a);
            if e == e2 {
                continue;
            }
            let c = &(x * y) * &(&ctx.zeta(e) - &ctx.zeta(e2));
            out.add_term(a + b, c);
        }
    }
    out
}

/// `(t^a)^{-1} = sigma(a, a) t^{-a}`.
pub fn monomial_inverse(ctx: &TorusContext, a: &Degree) -> TorusElement {
    TorusElement::monomial(-a, ctx.sigma(a, a))
}

/// Splits `u` into the part supported off the radical (the commutator
/// subspace) and the part supported on it (the center).
pub fn center_commutator_split(ctx: &TorusContext, u: &TorusElement) -> (TorusElement, TorusElement) {
    let mut comm = TorusElement::zero();
    let mut center = TorusElement::zero();
    for (a, c) in &u.terms {
        if ctx.in_radical(a) {
            center.add_term(a.clone(), c.clone());
        } else {
            comm.add_term(a.clone(), c.clone());
        }
    }
    (comm, center)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta4() -> Arc<TorusContext> {
        TorusContext::new(QuantumMatrix::from_rows(4, vec![vec![0, -1], vec![1, 0]]).unwrap())
    }

    fn d(v: &[i64]) -> Degree {
        Degree(v.to_vec())
    }

    /// Literal product over `i <= j` of `q_ji^{a_j b_i}`.
    fn sigma_oracle(ctx: &TorusContext, a: &Degree, b: &Degree) -> Cyc {
        let n = ctx.dim();
        let mut acc = ctx.one();
        for j in 0..n {
            for i in 0..=j {
                let q = Cyc::root_of_unity(ctx.order(), ctx.matrix().exp(j, i));
                acc = &acc * &q.pow(a.0[j] * b.0[i]).unwrap();
            }
        }
        acc
    }

    #[test]
    fn sigma_examples() {
        let ctx = zeta4();
        let (e0, e1) = (d(&[1, 0]), d(&[0, 1]));
        assert!(ctx.sigma(&e0, &e1).is_one());
        assert_eq!(ctx.sigma(&e1, &e0), Cyc::root_of_unity(4, 1));
        assert!(ctx.sigma(&d(&[3, -2]), &d(&[0, 0])).is_one());
        for a in [d(&[1, 2]), d(&[-2, 1]), d(&[3, 3])] {
            for b in [d(&[0, -1]), d(&[2, 5]), d(&[-1, -1])] {
                assert_eq!(ctx.sigma(&a, &b), sigma_oracle(&ctx, &a, &b));
            }
        }
    }

    #[test]
    fn f_examples() {
        let ctx = zeta4();
        let (e0, e1) = (d(&[1, 0]), d(&[0, 1]));
        let a = d(&[2, 3]);
        assert!(ctx.f_form(&a, &a).is_one());
        let fab = ctx.f_form(&e1, &e0);
        assert_eq!(fab, &ctx.sigma(&e1, &e0) * &ctx.sigma(&e0, &e1).inverse().unwrap());
        assert_eq!(fab, Cyc::root_of_unity(4, 1));
        assert!((&fab * &ctx.f_form(&e0, &e1)).is_one());
        // t^{e1} t^{e0} = f(e1, e0) t^{e0} t^{e1}
        let t0 = TorusElement::unit_monomial(&ctx, e0);
        let t1 = TorusElement::unit_monomial(&ctx, e1);
        assert_eq!(multiply(&ctx, &t1, &t0), multiply(&ctx, &t0, &t1).scale(&fab));
    }

    #[test]
    fn multiply_examples() {
        let ctx = zeta4();
        let t0 = TorusElement::unit_monomial(&ctx, d(&[1, 0]));
        let t1 = TorusElement::unit_monomial(&ctx, d(&[0, 1]));
        assert_eq!(multiply(&ctx, &t0, &t1), TorusElement::unit_monomial(&ctx, d(&[1, 1])));
        assert_eq!(
            multiply(&ctx, &t1, &t0),
            TorusElement::monomial(d(&[1, 1]), Cyc::root_of_unity(4, 1))
        );
        let u = t0.add(&t1.scale(&ctx.int(3)));
        assert_eq!(multiply(&ctx, &u, &TorusElement::one(&ctx)), u);
    }

    #[test]
    fn bracket_examples() {
        let ctx = zeta4();
        let t0 = TorusElement::unit_monomial(&ctx, d(&[1, 0]));
        let t1 = TorusElement::unit_monomial(&ctx, d(&[0, 1]));
        assert!(lie_bracket(&ctx, &t1, &t1).is_zero());
        let expect = TorusElement::monomial(d(&[1, 1]), &Cyc::root_of_unity(4, 1) - &ctx.one());
        assert_eq!(lie_bracket(&ctx, &t1, &t0), expect);
        let a = d(&[2, 0]);
        let b = d(&[0, 2]);
        assert!(ctx.f_form(&a, &b).is_one());
        let ta = TorusElement::unit_monomial(&ctx, a);
        let tb = TorusElement::unit_monomial(&ctx, b);
        assert!(lie_bracket(&ctx, &ta, &tb).is_zero());
    }

    #[test]
    fn inverse_examples() {
        let ctx = zeta4();
        assert_eq!(monomial_inverse(&ctx, &d(&[0, 0])), TorusElement::one(&ctx));
        assert_eq!(
            monomial_inverse(&ctx, &d(&[1, 0])),
            TorusElement::unit_monomial(&ctx, d(&[-1, 0]))
        );
        let a = d(&[1, 1]);
        let inv = monomial_inverse(&ctx, &a);
        assert_eq!(inv.coeff(&d(&[-1, -1])), Some(&ctx.sigma(&a, &a)));
        let ta = TorusElement::unit_monomial(&ctx, a);
        assert_eq!(multiply(&ctx, &ta, &inv), TorusElement::one(&ctx));
        assert_eq!(multiply(&ctx, &inv, &ta), TorusElement::one(&ctx));
    }

    #[test]
    fn split_examples() {
        let ctx = zeta4();
        let c = TorusElement::unit_monomial(&ctx, d(&[4, 0]));
        assert_eq!(center_commutator_split(&ctx, &c), (TorusElement::zero(), c.clone()));
        let u = TorusElement::unit_monomial(&ctx, d(&[1, 0]));
        assert_eq!(center_commutator_split(&ctx, &u), (u.clone(), TorusElement::zero()));
        assert_eq!(
            center_commutator_split(&ctx, &TorusElement::zero()),
            (TorusElement::zero(), TorusElement::zero())
        );
    }
}
