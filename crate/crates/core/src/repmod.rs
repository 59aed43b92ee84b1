//! Explicit modules for the zero part of the full toroidal algebra.
//!
//! The algebra is taken over `q^ = (central t_0) + q'` with `q'` in simple
//! form, and acts on `L(V) = V (x) C[Z^n]` where `V` is a module for the Lie
//! algebra spanned by diagonal matrices over the torus, the inner
//! derivations and the `I(u, r)`. The rules are
//!
//! * `x (x) t^k . v t^l = (x t^k . v) t^{k+l}` for diagonal `x`,
//! * `ad t^s . v t^l = (ad t^s . v) t^{l+s}`,
//! * `D(u, r) . v t^l = (I(u', r') v) t^{l+r} + (u_0 lambda_0 + (u', l + alpha)) v t^{l+r}`,
//! * `<t_0, t^r t_0^{-1}> . v t^l = c_0 v t^{l+r}`,
//!
//! with the remaining `HC_1` generators acting by zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::Degree;
use crate::linalg::Mat;
use crate::realization::{xi_eval, ClockShiftRealization};
use crate::toroidal::{ToroidalAlgebra, ToroidalElement};
use crate::Cyc;

/// Level, the scalar of `t^r d_0`, and `alpha_i = lambda(d_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleParameters {
    pub c0: u64,
    pub lambda_d0: Cyc,
    pub alpha: Vec<Cyc>,
}

impl ModuleParameters {
    pub fn new(c0: u64, lambda_d0: Cyc, alpha: Vec<Cyc>) -> Result<Self> {
        if c0 == 0 {
            return Err(Error::Unsupported("the level c0 must be positive".into()));
        }
        Ok(ModuleParameters { c0, lambda_d0, alpha })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c0": self.c0,
            "lambda_d0": self.lambda_d0.to_json(),
            "alpha": self.alpha.iter().map(Cyc::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Highest weight of a `gl_N` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Natural,
    Trivial,
}

impl FactorKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(FactorKind::Natural),
            "trivial" => Ok(FactorKind::Trivial),
            other => Err(Error::Parse(format!("unknown module kind `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Natural => "natural",
            FactorKind::Trivial => "trivial",
        }
    }
}

/// Tensor product of evaluation modules `W_1(b_1) (x) .. (x) W_r(b_r)` for
/// the twisted loop algebra `sum_a C X^a (x) x^a`.
#[derive(Clone, Debug)]
pub struct EvaluationModule {
    factors: Vec<(FactorKind, Vec<Cyc>)>,
    dims: Vec<usize>,
}

impl EvaluationModule {
    pub fn new(real: &ClockShiftRealization, factors: Vec<(FactorKind, Vec<Cyc>)>) -> Result<Self> {
        let mut xis = Vec::with_capacity(factors.len());
        for (_, b) in &factors {
            xis.push(xi_eval(real.gamma(), b)?);
        }
        for i in 0..xis.len() {
            for j in i + 1..xis.len() {
                if xis[i] == xis[j] {
                    return Err(Error::XiCollision(format!("factors {i} and {j} share xi(b)")));
                }
            }
        }
        let dims = factors
            .iter()
            .map(|(k, _)| match k {
                FactorKind::Natural => real.size(),
                FactorKind::Trivial => 1,
            })
            .collect();
        Ok(EvaluationModule { factors, dims })
    }

    /// The one-dimensional module on which `X^0 (x) x^a` acts by `b^a`.
    pub fn trivial(real: &ClockShiftRealization) -> Self {
        let one = real.torus().one();
        let n = real.torus().dim();
        EvaluationModule {
            factors: vec![(FactorKind::Trivial, vec![one; n])],
            dims: vec![1],
        }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn factors(&self) -> &[(FactorKind, Vec<Cyc>)] {
        &self.factors
    }

    /// Whether every evaluation point satisfies `xi(b) = (1, .., 1)`.
    pub fn points_on_unit_xi(&self, real: &ClockShiftRealization) -> Result<bool> {
        for (_, b) in &self.factors {
            if xi_eval(real.gamma(), b)?.iter().any(|c| !c.is_one()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Operator of `X^a (x) x^a`.
    pub fn act(&self, real: &ClockShiftRealization, a: &Degree) -> Result<Mat<Cyc>> {
        let m = real.torus().order();
        let one = Cyc::one(m);
        let zero = Cyc::zero(m);
        let mut total = Mat::zeros(self.dim(), self.dim(), &zero);
        for (f, (kind, b)) in self.factors.iter().enumerate() {
            let mut ba = one.clone();
            for (x, &e) in b.iter().zip(&a.0) {
                ba = &ba * &x.pow(e)?;
            }
            let local = match kind {
                FactorKind::Natural => real.monomial(a).scale(&ba),
                FactorKind::Trivial => {
                    let v = if real.gamma().is_zero(a) { ba } else { zero.clone() };
                    Mat::from_rows(vec![vec![v]])
                }
            };
            let before: usize = self.dims[..f].iter().product();
            let after: usize = self.dims[f + 1..].iter().product();
            let op = Mat::identity(before, &one)
                .kron(&local)
                .kron(&Mat::identity(after, &one));
            total = total.add(&op);
        }
        Ok(total)
    }
}

/// Public constructor matching the usual name.
pub fn evaluation_module(real: &ClockShiftRealization, kind: FactorKind, b: Vec<Cyc>) -> Result<EvaluationModule> {
    EvaluationModule::new(real, vec![(kind, b)])
}

/// A `gl_n` module: trivial or natural.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlModule {
    pub kind: FactorKind,
    pub n: usize,
}

impl GlModule {
    pub fn dim(&self) -> usize {
        match self.kind {
            FactorKind::Natural => self.n,
            FactorKind::Trivial => 1,
        }
    }

    /// `sum_{i,j} u_i r_j E_ji`.
    pub fn i_action(&self, u: &[Cyc], r: &Degree, m: u32) -> Mat<Cyc> {
        match self.kind {
            FactorKind::Trivial => Mat::zeros(1, 1, &Cyc::zero(m)),
            FactorKind::Natural => Mat::from_fn(self.n, self.n, |j, i| u[i].scale_int(r.0[j])),
        }
    }
}

/// Module data for the Lie algebra acting on `V` in `L(V)`.
pub trait LieModuleDatum: Send + Sync + std::fmt::Debug {
    fn dim(&self) -> usize;

    /// `E_ii (x) t^a`.
    fn diagonal(&self, _i: usize, _a: &Degree) -> Result<Mat<Cyc>> {
        Err(Error::MissingAction("diagonal matrix".into()))
    }

    /// `ad t^s`.
    fn inner(&self, _s: &Degree) -> Result<Mat<Cyc>> {
        Err(Error::MissingAction("inner derivation".into()))
    }

    /// `I(u, r)` with `u`, `r` in the torus directions.
    fn i_der(&self, _u: &[Cyc], _r: &Degree) -> Result<Mat<Cyc>> {
        Err(Error::MissingAction("I(u, r)".into()))
    }
}

/// `V_1 (x) V_2` with `V_1 = W^1 (x) .. (x) W^d (x) W^{d+1}`: the `i`-th
/// factor carries the `i`-th copy of the loop algebra, the last one the
/// `sl_N` part, and `I(u, r)` acts on `V_2` only.
#[derive(Debug)]
pub struct TensorDatum {
    real: Arc<ClockShiftRealization>,
    parts: Vec<EvaluationModule>,
    v2: GlModule,
}

impl TensorDatum {
    pub fn new(real: Arc<ClockShiftRealization>, parts: Vec<EvaluationModule>, v2: GlModule) -> Self {
        TensorDatum { real, parts, v2 }
    }

    fn w_dim(&self) -> usize {
        self.parts.iter().map(EvaluationModule::dim).product()
    }

    fn one(&self) -> Cyc {
        self.real.torus().one()
    }

    /// Operator of part `p` at degree `a`, on `V_1 (x) V_2`.
    fn part_op(&self, p: usize, a: &Degree) -> Result<Mat<Cyc>> {
        let one = self.one();
        let before: usize = self.parts[..p].iter().map(EvaluationModule::dim).product();
        let after: usize = self.parts[p + 1..].iter().map(EvaluationModule::dim).product();
        let local = self.parts[p].act(&self.real, a)?;
        Ok(Mat::identity(before, &one)
            .kron(&local)
            .kron(&Mat::identity(after, &one))
            .kron(&Mat::identity(self.v2.dim(), &one)))
    }
}

impl LieModuleDatum for TensorDatum {
    fn dim(&self) -> usize {
        self.w_dim() * self.v2.dim()
    }

    fn diagonal(&self, i: usize, a: &Degree) -> Result<Mat<Cyc>> {
        if i + 1 >= self.parts.len() {
            return Err(Error::MissingAction(format!("diagonal entry {i}")));
        }
        self.part_op(i, a)
    }

    fn inner(&self, s: &Degree) -> Result<Mat<Cyc>> {
        // ad t^s = (ad t^s - I t^s) + sum_i E_ii t^s
        let mut acc = self.part_op(self.parts.len() - 1, s)?;
        for i in 0..self.parts.len() - 1 {
            acc = acc.add(&self.part_op(i, s)?);
        }
        Ok(acc)
    }

    fn i_der(&self, u: &[Cyc], r: &Degree) -> Result<Mat<Cyc>> {
        let one = self.one();
        let local = self.v2.i_action(u, r, self.real.torus().order());
        Ok(Mat::identity(self.w_dim(), &one).kron(&local))
    }
}

/// A finitely supported vector `sum_l v_l t^l` of `L(V)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModuleVector {
    comps: BTreeMap<Degree, Vec<Cyc>>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn single(l: Degree, v: Vec<Cyc>) -> Self {
        let mut out = Self::zero();
        out.add_at(l, v);
        out
    }

    pub fn components(&self) -> &BTreeMap<Degree, Vec<Cyc>> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_at(&mut self, l: Degree, v: Vec<Cyc>) {
        if v.iter().all(Cyc::is_zero) {
            return;
        }
        let s: Vec<Cyc> = match self.comps.remove(&l) {
            Some(old) => old.iter().zip(&v).map(|(a, b)| a + b).collect(),
            None => v,
        };
        if !s.iter().all(Cyc::is_zero) {
            self.comps.insert(l, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, v) in &other.comps {
            out.add_at(l.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, v) in &other.comps {
            out.add_at(l.clone(), v.iter().map(|c| -c).collect());
        }
        out
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        let mut out = Self::zero();
        for (l, v) in &self.comps {
            out.add_at(l.clone(), v.iter().map(|x| x * c).collect());
        }
        out
    }
}

/// `L(V)` with the zero-part action.
#[derive(Debug)]
pub struct LoopedModule {
    algebra: Arc<ToroidalAlgebra>,
    datum: Box<dyn LieModuleDatum>,
    params: ModuleParameters,
}

/// `L(V_1)` for an arbitrary module datum.
pub fn build_l_action(
    algebra: Arc<ToroidalAlgebra>,
    datum: Box<dyn LieModuleDatum>,
    params: ModuleParameters,
) -> Result<LoopedModule> {
    let n = algebra.rank() - 1;
    if !algebra.torus().matrix().first_variable_central() {
        return Err(Error::IncompatibleGrading("t_0 must be central".into()));
    }
    if params.alpha.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: params.alpha.len(),
        });
    }
    Ok(LoopedModule { algebra, datum, params })
}

/// `L(V_1 (x) V_2)`, with `V_1` given by `d + 1` evaluation modules.
pub fn build_tau0_action(
    real: Arc<ClockShiftRealization>,
    d: usize,
    v1: Vec<EvaluationModule>,
    v2: GlModule,
    params: ModuleParameters,
) -> Result<LoopedModule> {
    if v1.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            got: v1.len(),
        });
    }
    for w in &v1 {
        if !w.points_on_unit_xi(&real)? {
            return Err(Error::IncompatibleGrading(
                "evaluation points must satisfy xi(b) = 1 so that the radical acts trivially".into(),
            ));
        }
    }
    let n = real.torus().dim();
    if v2.n != n {
        return Err(Error::DimensionMismatch { expected: n, got: v2.n });
    }
    let q = real.torus().matrix().with_central_head();
    let algebra = ToroidalAlgebra::new(crate::qtorus::TorusContext::new(q), d);
    build_l_action(algebra, Box::new(TensorDatum::new(real, v1, v2)), params)
}

fn head_zero(x: &Degree, what: &str) -> Result<Degree> {
    if x.0[0] != 0 {
        return Err(Error::Unsupported(format!("{what} at {x} has nonzero t_0-degree")));
    }
    Ok(x.tail())
}

impl LoopedModule {
    pub fn algebra(&self) -> &Arc<ToroidalAlgebra> {
        &self.algebra
    }

    pub fn params(&self) -> &ModuleParameters {
        &self.params
    }

    pub fn fiber_dim(&self) -> usize {
        self.datum.dim()
    }

    fn apply_op(op: &Mat<Cyc>, shift: &Degree, c: &Cyc, v: &ModuleVector, out: &mut ModuleVector) {
        for (l, x) in v.components() {
            let y: Vec<Cyc> = op.apply(x).iter().map(|e| e * c).collect();
            out.add_at(l + shift, y);
        }
    }

    /// Action of a zero-part element.
    pub fn act(&self, x: &ToroidalElement, v: &ModuleVector) -> Result<ModuleVector> {
        self.algebra.check(x)?;
        let ctx = self.algebra.torus();
        let mut out = ModuleVector::zero();
        for (deg, mat) in x.g.terms() {
            let a = head_zero(deg, "matrix term")?;
            for i in 0..mat.rows() {
                for j in 0..mat.cols() {
                    let c = &mat[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    if i != j {
                        return Err(Error::Unsupported(
                            "off-diagonal matrix units lie outside the zero part".into(),
                        ));
                    }
                    Self::apply_op(&self.datum.diagonal(i, &a)?, &a, c, v, &mut out);
                }
            }
        }
        for ((m, i), c) in x.h.coords() {
            let r = head_zero(m, "HC_1 generator")?;
            if *i == 0 {
                let k = c.scale_int(self.params.c0 as i64);
                for (l, y) in v.components() {
                    out.add_at(l + &r, y.iter().map(|e| e * &k).collect());
                }
            }
        }
        for (s, c) in x.d.inner_part() {
            let s = head_zero(s, "inner derivation")?;
            Self::apply_op(&self.datum.inner(&s)?, &s, c, v, &mut out);
        }
        for (r, u) in x.d.degree_part() {
            let rt = head_zero(r, "degree derivation")?;
            let ut = &u[1..];
            let i_op = self.datum.i_der(ut, &rt)?;
            let base = &u[0] * &self.params.lambda_d0;
            for (l, y) in v.components() {
                let mut s = base.clone();
                for ((ui, &li), al) in ut.iter().zip(&l.0).zip(&self.params.alpha) {
                    s = &s + &(ui * &(&ctx.int(li) + al));
                }
                let mut z: Vec<Cyc> = i_op.apply(y);
                for (zi, yi) in z.iter_mut().zip(y) {
                    *zi = &*zi + &(yi * &s);
                }
                out.add_at(l + &rt, z);
            }
        }
        Ok(out)
    }

    /// Whether `[x, y] v = x (y v) - y (x v)`.
    pub fn verify_module_axiom(&self, x: &ToroidalElement, y: &ToroidalElement, v: &ModuleVector) -> Result<bool> {
        let xy = self.algebra.bracket(x, y)?;
        let lhs = self.act(&xy, v)?;
        let rhs = self.act(x, &self.act(y, v)?)?.sub(&self.act(y, &self.act(x, v)?)?);
        Ok(lhs == rhs)
    }

    /// Dimension of each graded piece in a window: `dim V_{1,k} dim V_2`,
    /// which is the full fiber because `V_1` is resolved over `Gamma`.
    pub fn graded_character(&self, window: &[Degree]) -> BTreeMap<Degree, usize> {
        window.iter().map(|k| (k.clone(), self.datum.dim())).collect()
    }
}
