//! The degree-graded space `HC_1(C_q)` in the basis
//! `B_{i,m} = <t_i, t^m t_i^{-1}>`, `m` in the radical.
//!
//! At `m != 0` the generators satisfy `sum_i m_i B_{i,m} = 0`; the generator
//! with the smallest index `j(m)` such that `m_j != 0` is eliminated, so every
//! element has a unique coordinate vector.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::Degree;
use crate::qtorus::{TorusContext, TorusElement};
use crate::toroidal::Derivation;
use crate::Cyc;

/// Canonical coordinates over the basis `B_{i,m}`, keyed by `(m, i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HC1Element {
    coords: BTreeMap<(Degree, usize), Cyc>,
}

impl HC1Element {
    pub fn zero() -> Self {
        HC1Element::default()
    }

    /// `B_{i,m}` in canonical coordinates.
    pub fn basis(ctx: &TorusContext, i: usize, m: Degree) -> Result<Self> {
        ctx.check_degree(&m)?;
        if i >= ctx.dim() {
            return Err(Error::DimensionMismatch {
                expected: ctx.dim(),
                got: i + 1,
            });
        }
        if !ctx.in_radical(&m) {
            return Err(Error::NotInRadical(m.to_string()));
        }
        let mut x = HC1Element::zero();
        x.add_generator(ctx, i, &m, ctx.one());
        Ok(x)
    }

    /// `C_i = <t_i, t_i^{-1}> = B_{i,0}`.
    pub fn central(ctx: &TorusContext, i: usize) -> Self {
        Self::basis(ctx, i, Degree::zero(ctx.dim())).expect("zero lies in the radical")
    }

    pub fn coords(&self) -> &BTreeMap<(Degree, usize), Cyc> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, i: usize, m: &Degree) -> Option<&Cyc> {
        self.coords.get(&(m.clone(), i))
    }

    /// Degrees carrying a nonzero coordinate.
    pub fn support(&self) -> Vec<Degree> {
        let mut out: Vec<Degree> = self.coords.keys().map(|(m, _)| m.clone()).collect();
        out.dedup();
        out
    }

    fn add_raw(&mut self, key: (Degree, usize), c: Cyc) {
        if c.is_zero() {
            return;
        }
        let s = match self.coords.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.coords.insert(key, s);
        }
    }

    /// Adds `c * B_{i,m}`, rewriting the eliminated generator.
    pub fn add_generator(&mut self, ctx: &TorusContext, i: usize, m: &Degree, c: Cyc) {
        if c.is_zero() {
            return;
        }
        match m.first_nonzero() {
            Some(j) if j == i => {
                // B_{j,m} = -(1/m_j) sum_{k != j} m_k B_{k,m}
                let inv = Cyc::from_frac(ctx.order(), -1, m.0[j]);
                let base = &c * &inv;
                for (k, &mk) in m.0.iter().enumerate() {
                    if k != j && mk != 0 {
                        self.add_raw((m.clone(), k), base.scale_int(mk));
                    }
                }
            }
            _ => self.add_raw((m.clone(), i), c),
        }
    }

    pub fn add(&self, other: &HC1Element) -> HC1Element {
        let mut out = self.clone();
        for (k, c) in &other.coords {
            out.add_raw(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HC1Element) -> HC1Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HC1Element {
        HC1Element {
            coords: self.coords.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Cyc) -> HC1Element {
        let mut out = HC1Element::zero();
        for (k, c) in &self.coords {
            out.add_raw(k.clone(), c * s);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .coords
            .iter()
            .map(|((m, i), c)| json!({ "i": i, "m": m.to_json(), "coeff": c.to_json() }))
            .collect();
        json!({ "basis": basis })
    }
}

impl fmt::Display for HC1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, ((m, i), c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({})*", c)?;
            }
            write!(f, "<t_{}, t^{} t_{}^-1>", i, m, i)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HC1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `<t^a, t^b> = delta_{a+b in rad} sigma(a, b) sum_i a_i B_{i,a+b}`.
pub fn reduce_symbol(ctx: &TorusContext, a: &Degree, b: &Degree) -> HC1Element {
    let m = a + b;
    let mut out = HC1Element::zero();
    if !ctx.in_radical(&m) {
        return out;
    }
    let s = ctx.sigma(a, b);
    for (i, &ai) in a.0.iter().enumerate() {
        if ai != 0 {
            out.add_generator(ctx, i, &m, s.scale_int(ai));
        }
    }
    out
}

/// Bilinear extension of [`reduce_symbol`] to `<x, y>`.
pub fn pair(ctx: &TorusContext, x: &TorusElement, y: &TorusElement) -> HC1Element {
    let mut out = HC1Element::zero();
    for (a, u) in x.terms() {
        for (b, v) in y.terms() {
            let s = reduce_symbol(ctx, a, b);
            if !s.is_zero() {
                out = out.add(&s.scale(&(u * v)));
            }
        }
    }
    out
}

/// Dimension of the degree-`m` component: `n+1` at zero, `n` on the rest
/// of the radical, zero elsewhere.
pub fn graded_dimension(ctx: &TorusContext, m: &Degree) -> usize {
    if !ctx.in_radical(m) {
        0
    } else if m.is_zero() {
        ctx.dim()
    } else {
        ctx.dim() - 1
    }
}

/// `B_{i,m}` as the symbol `sigma(m, -e_i) <t^{e_i}, t^{m - e_i}>`.
pub fn basis_as_symbol(ctx: &TorusContext, i: usize, m: &Degree) -> (Cyc, Degree, Degree) {
    let ei = Degree::unit(ctx.dim(), i);
    let s = ctx.sigma(m, &-&ei);
    let rest = m - &ei;
    (s, ei, rest)
}

/// `[D(u, r), <t^a, t^b>]` expanded on both slots and re-reduced.
fn d_on_symbol(ctx: &TorusContext, u: &[Cyc], r: &Degree, a: &Degree, b: &Degree) -> HC1Element {
    let ua = pairing(ctx, u, a);
    let ub = pairing(ctx, u, b);
    let mut out = HC1Element::zero();
    if !ua.is_zero() {
        let c = &ua * &ctx.sigma(r, a);
        out = out.add(&reduce_symbol(ctx, &(a + r), b).scale(&c));
    }
    if !ub.is_zero() {
        let c = &ub * &ctx.sigma(r, b);
        out = out.add(&reduce_symbol(ctx, a, &(b + r)).scale(&c));
    }
    out
}

/// `(u, a) = sum u_i a_i`.
pub fn pairing(ctx: &TorusContext, u: &[Cyc], a: &Degree) -> Cyc {
    let mut acc = ctx.zero();
    for (ui, &ai) in u.iter().zip(&a.0) {
        if ai != 0 && !ui.is_zero() {
            acc = &acc + &ui.scale_int(ai);
        }
    }
    acc
}

/// Action of a derivation on `HC_1`: inner derivations act as zero and
/// `D(u, r)` acts slot-wise on each basis symbol.
pub fn der_action_on_hc1(ctx: &TorusContext, d: &Derivation, x: &HC1Element) -> HC1Element {
    let mut out = HC1Element::zero();
    for (r, u) in d.degree_part() {
        for ((m, i), c) in x.coords() {
            let (s, a, b) = basis_as_symbol(ctx, *i, m);
            let img = d_on_symbol(ctx, u, r, &a, &b);
            if !img.is_zero() {
                out = out.add(&img.scale(&(&s * c)));
            }
        }
    }
    out
}
