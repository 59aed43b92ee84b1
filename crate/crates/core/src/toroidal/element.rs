use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hc1::HC1Element;
use crate::lattice::Degree;
use crate::linalg::Mat;
use crate::qtorus::{TorusContext, TorusElement};
use crate::Cyc;

/// `sum_a x_a (x) t^a` with `x_a` a `d x d` matrix.
#[derive(Clone, PartialEq, Default)]
pub struct MatrixTorusElement {
    terms: BTreeMap<Degree, Mat<Cyc>>,
}

impl MatrixTorusElement {
    pub fn zero() -> Self {
        MatrixTorusElement::default()
    }

    pub fn monomial(x: Mat<Cyc>, a: Degree) -> Self {
        let mut e = Self::zero();
        e.add_term(a, x);
        e
    }

    /// `1 x 1` matrices over the torus, i.e. a torus element.
    pub fn from_scalar_torus(v: &TorusElement, one: &Cyc) -> Self {
        let mut e = Self::zero();
        for (a, c) in v.terms() {
            e.add_term(a.clone(), Mat::identity(1, one).scale(c));
        }
        e
    }

    /// Entry `(0, 0)` of every coefficient.
    pub fn to_scalar_torus(&self) -> TorusElement {
        let mut out = TorusElement::zero();
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x[(0, 0)].clone());
        }
        out
    }

    /// Entry `(i, j)` of every coefficient, as a torus element.
    pub fn entry(&self, i: usize, j: usize) -> TorusElement {
        let mut out = TorusElement::zero();
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x[(i, j)].clone());
        }
        out
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
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MatrixTorusElement {
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Cyc) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x.scale(s));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, x)| {
                let rows: Vec<Vec<Value>> = x
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(Cyc::to_json).collect())
                    .collect();
                json!({ "deg": a.to_json(), "matrix": rows })
            })
            .collect();
        Value::Array(terms)
    }
}

impl fmt::Debug for MatrixTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A derivation of the quantum torus: inner part `sum c_s ad t^s` with `s`
/// off the radical, and degree part `sum D(u_r, r)` with `r` in the radical.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    inner: BTreeMap<Degree, Cyc>,
    degree: BTreeMap<Degree, Vec<Cyc>>,
}

impl Derivation {
    pub fn zero() -> Self {
        Derivation::default()
    }

    /// `c ad t^s`. Inner derivations by central monomials vanish.
    pub fn inner(ctx: &TorusContext, s: Degree, c: Cyc) -> Result<Self> {
        ctx.check_degree(&s)?;
        let mut d = Self::zero();
        d.add_inner(ctx, s, c);
        Ok(d)
    }

    /// `D(u, r)` for `r` in the radical.
    pub fn degree(ctx: &TorusContext, u: Vec<Cyc>, r: Degree) -> Result<Self> {
        ctx.check_degree(&r)?;
        if u.len() != ctx.dim() {
            return Err(Error::DimensionMismatch {
                expected: ctx.dim(),
                got: u.len(),
            });
        }
        if !ctx.in_radical(&r) {
            return Err(Error::NotInRadical(r.to_string()));
        }
        let mut d = Self::zero();
        d.add_degree(r, u);
        Ok(d)
    }

    pub fn inner_part(&self) -> &BTreeMap<Degree, Cyc> {
        &self.inner
    }

    pub fn degree_part(&self) -> &BTreeMap<Degree, Vec<Cyc>> {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_empty() && self.degree.is_empty()
    }

    pub fn add_inner(&mut self, ctx: &TorusContext, s: Degree, c: Cyc) {
        if c.is_zero() {
            return;
        }
        if ctx.in_radical(&s) {
            // ad of a central monomial is zero
            return;
        }
        let v = match self.inner.remove(&s) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.inner.insert(s, v);
        }
    }

    pub fn add_degree(&mut self, r: Degree, u: Vec<Cyc>) {
        if u.iter().all(|c| c.is_zero()) {
            return;
        }
        let v: Vec<Cyc> = match self.degree.remove(&r) {
            Some(old) => old.iter().zip(&u).map(|(a, b)| a + b).collect(),
            None => u,
        };
        if !v.iter().all(|c| c.is_zero()) {
            self.degree.insert(r, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.inner {
            // keys already avoid the radical
            let v = match out.inner.remove(s) {
                Some(old) => &old + c,
                None => c.clone(),
            };
            if !v.is_zero() {
                out.inner.insert(s.clone(), v);
            }
        }
        for (r, u) in &other.degree {
            out.add_degree(r.clone(), u.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Derivation {
            inner: self.inner.iter().map(|(s, c)| (s.clone(), -c)).collect(),
            degree: self
                .degree
                .iter()
                .map(|(r, u)| (r.clone(), u.iter().map(|c| -c).collect()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Cyc) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.inner {
            let v = c * k;
            if !v.is_zero() {
                out.inner.insert(s.clone(), v);
            }
        }
        for (r, u) in &self.degree {
            out.add_degree(r.clone(), u.iter().map(|c| c * k).collect());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let inner: Vec<Value> = self
            .inner
            .iter()
            .map(|(s, c)| json!({ "s": s.to_json(), "coeff": c.to_json() }))
            .collect();
        let degree: Vec<Value> = self
            .degree
            .iter()
            .map(|(r, u)| json!({ "r": r.to_json(), "u": u.iter().map(Cyc::to_json).collect::<Vec<_>>() }))
            .collect();
        json!({ "inner": inner, "degree": degree })
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Derivation")
            .field("inner", &self.inner)
            .field("degree", &self.degree)
            .finish()
    }
}

/// An element `g + h + d` of the full toroidal algebra.
#[derive(Clone, PartialEq, Default)]
pub struct ToroidalElement {
    pub g: MatrixTorusElement,
    pub h: HC1Element,
    pub d: Derivation,
}

impl ToroidalElement {
    pub fn zero() -> Self {
        ToroidalElement::default()
    }

    pub fn from_matrix(g: MatrixTorusElement) -> Self {
        ToroidalElement {
            g,
            ..Default::default()
        }
    }

    pub fn from_hc1(h: HC1Element) -> Self {
        ToroidalElement {
            h,
            ..Default::default()
        }
    }

    pub fn from_derivation(d: Derivation) -> Self {
        ToroidalElement {
            d,
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.h.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ToroidalElement {
            g: self.g.add(&other.g),
            h: self.h.add(&other.h),
            d: self.d.add(&other.d),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ToroidalElement {
            g: self.g.neg(),
            h: self.h.neg(),
            d: self.d.neg(),
        }
    }

    pub fn scale(&self, k: &Cyc) -> Self {
        ToroidalElement {
            g: self.g.scale(k),
            h: self.h.scale(k),
            d: self.d.scale(k),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "g": self.g.to_json(), "h": self.h.to_json()["basis"], "d": self.d.to_json() })
    }
}

impl fmt::Debug for ToroidalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToroidalElement")
            .field("g", &self.g)
            .field("h", &self.h)
            .field("d", &self.d)
            .finish()
    }
}

impl fmt::Display for ToroidalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (a, x) in self.g.terms() {
            let rows: Vec<String> = x
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
                .collect();
            parts.push(format!("[{}](x)t^{}", rows.join("; "), a));
        }
        if !self.h.is_zero() {
            parts.push(self.h.to_string());
        }
        for (s, c) in self.d.inner_part() {
            parts.push(format!("({}) ad t^{}", c, s));
        }
        for (r, u) in self.d.degree_part() {
            let us: Vec<String> = u.iter().map(|c| c.to_string()).collect();
            parts.push(format!("D(({}), {})", us.join(", "), r));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
