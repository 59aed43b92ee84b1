//! Property checks grouped into reports, and the full suite.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hc1::graded_dimension;
use crate::lattice::{
    apply_automorphism, in_lattice_span, is_simple_form, radical_basis, simple_form, simple_form_data, xi_basis,
    Degree, LatticeAutomorphism, QuantumMatrix,
};
use crate::oracle::{cube, exhaustive_identity_check, hc1_bruteforce_dims, Identity};
use crate::qtorus::{multiply, TorusContext, TorusElement};
use crate::realization::{ClockShiftRealization, LoopIsomorphism, LoopSum};
use crate::repmod::{LoopedModule, ModuleVector};
use crate::sampling::{ElementSampler, Sampler};
use crate::toroidal::{Fault, ToroidalAlgebra, ToroidalAutomorphism, ToroidalElement};

/// Outcome of one group of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub checked: u64,
    pub violations: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    fn record_result(&mut self, res: Result<bool>, what: impl FnOnce() -> String) {
        match res {
            Ok(ok) => self.record(ok, what),
            Err(e) => {
                let w = what();
                self.record(false, || format!("{w}: {e}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "violations": self.violations,
        })
    }
}

/// Every identity of the cocycle, the center split and the `HC_1` relations,
/// exhaustively on the box.
pub fn cocycle_checks(ctx: &TorusContext, r: i64) -> Vec<Check> {
    Identity::ALL
        .iter()
        .map(|&id| {
            let rep = exhaustive_identity_check(ctx, id, r);
            Check {
                name: format!("identity:{}", id.name()),
                checked: rep.tuples_checked,
                violations: rep.violations,
            }
        })
        .collect()
}

/// Brute-force `HC_1` dimensions against the closed form on `[-2r, 2r]`.
pub fn hc1_check(ctx: &TorusContext, r: i64) -> Check {
    let mut c = Check::new("hc1_dimensions");
    for (g, brute) in hc1_bruteforce_dims(ctx.matrix(), r) {
        let closed = graded_dimension(ctx, &g);
        c.record(brute == closed, || {
            format!("degree {g}: quotient {brute}, closed form {closed}")
        });
    }
    c.finish()
}

/// Antisymmetry and the Jacobi identity on random homogeneous triples.
pub fn jacobi_check(alg: &ToroidalAlgebra, r: i64, samples: usize, sampler: &mut Sampler) -> Check {
    let mut c = Check::new(format!("jacobi:d={}", alg.d()));
    let es = ElementSampler::new(alg, r);
    for k in 0..samples {
        let x = es.element(sampler);
        let y = es.element(sampler);
        let z = es.element(sampler);
        let res = (|| -> Result<(bool, bool)> {
            let xy = alg.bracket(&x, &y)?;
            let yx = alg.bracket(&y, &x)?;
            let anti = xy.add(&yx).is_zero();
            let j1 = alg.bracket(&x, &alg.bracket(&y, &z)?)?;
            let j2 = alg.bracket(&y, &alg.bracket(&z, &x)?)?;
            let j3 = alg.bracket(&z, &xy)?;
            Ok((anti, j1.add(&j2).add(&j3).is_zero()))
        })();
        match res {
            Ok((anti, jac)) => {
                c.record(anti, || format!("sample {k}: antisymmetry fails for {x} and {y}"));
                c.record(jac, || format!("sample {k}: Jacobi fails for {x}, {y}, {z}"));
            }
            Err(e) => c.record(false, || format!("sample {k}: {e}")),
        }
    }
    c.finish()
}

/// `q'_ij = prod_{k,l} q_kl^{a_ki a_lj}`, entry by entry.
pub fn product_formula_holds(a: &LatticeAutomorphism, q: &QuantumMatrix) -> Result<bool> {
    let qp = apply_automorphism(a, q)?;
    let n = q.dim();
    let m = q.order() as i64;
    let am = a.matrix();
    for i in 0..n {
        for j in 0..n {
            let mut e = 0i64;
            for k in 0..n {
                for l in 0..n {
                    e += q.exp(k, l) * am[(k, i)] * am[(l, j)];
                }
            }
            if e.rem_euclid(m) != qp.exp(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bracket preservation for `count` random unimodular maps.
pub fn automorphism_check(
    alg: &Arc<ToroidalAlgebra>,
    count: usize,
    r: i64,
    samples: usize,
    sampler: &mut Sampler,
) -> Check {
    let n = alg.torus().dim();
    let maps: Vec<_> = (0..count).map(|_| sampler.unimodular(n)).collect();
    automorphism_check_maps(alg, maps, r, samples, sampler)
}

/// Bracket preservation and the product formula for the given maps.
pub fn automorphism_check_maps(
    alg: &Arc<ToroidalAlgebra>,
    maps: Vec<LatticeAutomorphism>,
    r: i64,
    samples: usize,
    sampler: &mut Sampler,
) -> Check {
    let mut c = Check::new(format!("automorphism:d={}", alg.d()));
    let q = alg.torus().matrix().clone();
    for (t, a) in maps.into_iter().enumerate() {
        c.record_result(product_formula_holds(&a, &q), || format!("map {t}: product formula"));
        let phi = match ToroidalAutomorphism::new(alg, a) {
            Ok(p) => p,
            Err(e) => {
                c.record(false, || format!("map {t}: {e}"));
                continue;
            }
        };
        let src = phi.source().clone();
        let es = ElementSampler::new(&src, r);
        for k in 0..samples {
            let x = es.element(sampler);
            let y = es.element(sampler);
            let res = (|| -> Result<bool> {
                let lhs = phi.apply(&src.bracket(&x, &y)?)?;
                let rhs = alg.bracket(&phi.apply(&x)?, &phi.apply(&y)?)?;
                Ok(lhs == rhs)
            })();
            c.record_result(res, || format!("map {t}, sample {k}: [{x}, {y}] not preserved"));
        }
    }
    c.finish()
}

/// Block shape, divisibility, round trip and the radical basis of the
/// simple form.
pub fn normal_form_check(q: &QuantumMatrix) -> Check {
    let mut c = Check::new("normal_form");
    let (qp, a) = simple_form(q);
    c.record(is_simple_form(&qp), || "output is not in block shape".into());
    let round = apply_automorphism(&a, q).map(|x| x == qp).unwrap_or(false);
    c.record(round, || "apply_automorphism(A, q) differs from q'".into());
    let Ok(data) = simple_form_data(&qp) else {
        return c.finish();
    };
    for w in data.orders.windows(2) {
        c.record(w[0] % w[1] == 0, || {
            format!("orders {} and {} break the chain", w[0], w[1])
        });
    }
    let Ok(xi) = xi_basis(&qp) else {
        c.record(false, || "xi basis unavailable".into());
        return c.finish();
    };
    let rad = radical_basis(&qp);
    for x in &xi {
        c.record(rad.contains(x), || format!("xi {x} outside the radical"));
    }
    for b in rad.basis() {
        c.record(in_lattice_span(&xi, b), || {
            format!("radical vector {b} outside the xi span")
        });
    }
    let expect: u64 = data.orders.iter().map(|&k| (k as u64) * (k as u64)).product();
    c.record(rad.index() == expect, || {
        format!("index {} != prod k^2 = {expect}", rad.index())
    });
    c.finish()
}

/// Relations of the clock and shift matrices, the loop embedding, and the
/// quotient onto `M_N`.
pub fn realization_check(real: &ClockShiftRealization, r: i64) -> Check {
    let mut c = Check::new("realization");
    let ctx = real.torus().clone();
    let n = ctx.dim();
    let g = real.generators();
    for i in 0..real.data().z {
        let q = ctx.zeta(ctx.matrix().exp(2 * i, 2 * i + 1));
        let ok = g[2 * i].mul(&g[2 * i + 1]) == g[2 * i + 1].mul(&g[2 * i]).scale(&q);
        c.record(ok, || format!("block {i}: generators do not q-commute"));
    }
    for xi in real.gamma().xi() {
        let img = real.loop_hom(&TorusElement::unit_monomial(&ctx, xi.clone()));
        c.record(img.map(|x| x.terms()[xi].is_identity()).unwrap_or(false), || {
            format!("X^{xi} is not the identity")
        });
    }
    let pts = cube(n, r);
    let imgs: Vec<_> = pts
        .iter()
        .map(|a| {
            real.loop_hom(&TorusElement::unit_monomial(&ctx, a.clone()))
                .expect("degree length")
        })
        .collect();
    for (a, ia) in pts.iter().zip(&imgs) {
        for (b, ib) in pts.iter().zip(&imgs) {
            let prod = multiply(
                &ctx,
                &TorusElement::unit_monomial(&ctx, a.clone()),
                &TorusElement::unit_monomial(&ctx, b.clone()),
            );
            let ok = real.loop_hom(&prod).map(|x| x == ia.mul(ib)).unwrap_or(false);
            c.record(ok, || format!("loop embedding not multiplicative at {a}, {b}"));
        }
        for xi in real.gamma().xi() {
            for s in [1, -1, 2] {
                let rr = xi.scale(s);
                let diff =
                    TorusElement::unit_monomial(&ctx, a + &rr).sub(&TorusElement::unit_monomial(&ctx, a.clone()));
                let ok = real.quotient_to_mat(&diff).map(|x| x.is_zero()).unwrap_or(false);
                c.record(ok, || format!("t^({a}+{rr}) - t^{a} not in the kernel"));
            }
        }
    }
    let nn = real.size() * real.size();
    let rank = real.gamma0_image_rank();
    c.record(rank == nn, || format!("image rank {rank} != N^2 = {nn}"));
    c.finish()
}

/// Bracket preservation of the loop isomorphism on random homogeneous pairs
/// (modulo the central `HC_1` part).
pub fn loop_iso_check(real: &ClockShiftRealization, d: usize, r: i64, samples: usize, sampler: &mut Sampler) -> Check {
    let mut c = Check::new(format!("loop_iso:d={d},N={}", real.size()));
    let iso = LoopIsomorphism::new(real, d);
    let ctx = real.torus();
    let n = ctx.dim();
    let all = cube(n, r);
    let off: Vec<Degree> = all.iter().filter(|a| !ctx.in_radical(a)).cloned().collect();
    let draw = |s: &mut Sampler| -> LoopSum {
        let coeff = s.scalar(ctx);
        let slot = s.index(d + 1);
        if slot < d || off.is_empty() {
            LoopSum::x(real, d, slot.min(d - 1), s.pick(&all).clone(), &coeff)
        } else {
            LoopSum::y(real, d, s.pick(&off).clone(), &coeff)
        }
    };
    for k in 0..samples {
        let x = draw(sampler);
        let y = draw(sampler);
        let res = (|| -> Result<bool> {
            let lhs = iso.apply(&x.bracket(&y))?;
            let rhs = iso.target_bracket(&iso.apply(&x)?, &iso.apply(&y)?)?;
            Ok(lhs == rhs)
        })();
        c.record_result(res, || format!("sample {k}: bracket not preserved"));
    }
    c.finish()
}

/// Generator kinds of the zero part that act on the modules.
const KINDS: [&str; 6] = ["h", "I", "D", "d0", "c0", "ad"];

fn zero_part_element(m: &LoopedModule, kind: &str, r: i64, s: &mut Sampler) -> Result<ToroidalElement> {
    let alg = m.algebra();
    let ctx = alg.torus();
    let n = ctx.dim() - 1;
    let all = cube(n, r);
    let rad: Vec<Degree> = all
        .iter()
        .filter(|a| ctx.in_radical(&a.with_head(0)))
        .cloned()
        .collect();
    let off: Vec<Degree> = all
        .iter()
        .filter(|a| !ctx.in_radical(&a.with_head(0)))
        .cloned()
        .collect();
    let scalar = s.scalar(ctx);
    Ok(match kind {
        "h" => {
            let i = s.index(alg.d() - 1);
            alg.h(i, s.pick(&all).with_head(0)).scale(&scalar)
        }
        "I" => alg.identity_at(s.pick(&all).with_head(0)).scale(&scalar),
        "D" => {
            let mut u = s.vector(ctx, n + 1);
            u[0] = ctx.zero();
            alg.der(u, s.pick(&rad).with_head(0))?
        }
        "d0" => {
            let mut u = vec![ctx.zero(); n + 1];
            u[0] = scalar;
            alg.der(u, s.pick(&rad).with_head(0))?
        }
        "c0" => alg.hc1_basis(0, s.pick(&rad).with_head(0))?.scale(&scalar),
        "ad" => {
            if off.is_empty() {
                alg.identity_at(Degree::zero(n + 1))
            } else {
                alg.ad(s.pick(&off).with_head(0))?.scale(&scalar)
            }
        }
        other => return Err(Error::Unsupported(format!("generator kind {other}"))),
    })
}

/// The module axiom for every pair of generator kinds, degree
/// equivariance, and the level composition law.
pub fn module_check(m: &LoopedModule, label: &str, r: i64, samples: usize, sampler: &mut Sampler) -> Check {
    let mut c = Check::new(format!("module:{label}"));
    let alg = m.algebra().clone();
    let ctx = alg.torus().clone();
    let n = ctx.dim() - 1;
    let dim = m.fiber_dim();
    let rounds = samples.div_ceil(KINDS.len() * KINDS.len()).max(1);
    for round in 0..rounds {
        for kx in KINDS {
            for ky in KINDS {
                let res = (|| -> Result<(bool, bool)> {
                    let x = zero_part_element(m, kx, r, sampler)?;
                    let y = zero_part_element(m, ky, r, sampler)?;
                    let mut v = ModuleVector::zero();
                    for _ in 0..2 {
                        v.add_at(sampler.degree(n, r), sampler.vector(&ctx, dim));
                    }
                    let ok = m.verify_module_axiom(&x, &y, &v)?;
                    let eq = match crate::toroidal::degree_of(&x) {
                        Some(g) => {
                            let g = g.tail();
                            let out = m.act(&x, &v)?;
                            out.components().keys().all(|l| v.components().contains_key(&(l - &g)))
                        }
                        None => true,
                    };
                    Ok((ok, eq))
                })();
                match res {
                    Ok((ok, eq)) => {
                        c.record(ok, || format!("round {round}: axiom fails for kinds {kx}, {ky}"));
                        c.record(eq, || format!("round {round}: kind {kx} breaks the grading"));
                    }
                    Err(e) => c.record(false, || format!("round {round}, kinds {kx}, {ky}: {e}")),
                }
            }
        }
    }
    let rad: Vec<Degree> = cube(n, r)
        .into_iter()
        .filter(|a| ctx.in_radical(&a.with_head(0)))
        .collect();
    let c0 = ctx.int(m.params().c0 as i64);
    for a in &rad {
        for b in &rad {
            let res = (|| -> Result<bool> {
                let x = alg.hc1_basis(0, a.with_head(0))?;
                let y = alg.hc1_basis(0, b.with_head(0))?;
                let xy = alg.hc1_basis(0, (a + b).with_head(0))?;
                let v = ModuleVector::single(sampler.degree(n, r), sampler.vector(&ctx, dim));
                Ok(m.act(&x, &m.act(&y, &v)?)? == m.act(&xy, &v)?.scale(&c0))
            })();
            c.record_result(res, || format!("level law fails for {a}, {b}"));
        }
    }
    c.finish()
}

/// Parameters of the full suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub radius: i64,
    pub samples: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

/// Runs every check that applies to `q`; module checks run for each given
/// module.
pub fn run_suite(q: &QuantumMatrix, cfg: &SuiteConfig, modules: &[(String, LoopedModule)]) -> Vec<Check> {
    let mut sampler = Sampler::new(cfg.seed);
    let ctx = TorusContext::new(q.clone());
    let mut out = cocycle_checks(&ctx, cfg.radius);
    out.push(hc1_check(&ctx, cfg.radius));
    for d in [2, 3] {
        let alg = match cfg.fault {
            Some(f) => ToroidalAlgebra::with_fault(ctx.clone(), d, f),
            None => ToroidalAlgebra::new(ctx.clone(), d),
        };
        out.push(jacobi_check(&alg, cfg.radius, cfg.samples, &mut sampler));
        if d == 2 {
            let per_map = cfg.samples.div_ceil(3).max(1);
            out.push(automorphism_check(&alg, 3, cfg.radius, per_map, &mut sampler));
        }
    }
    out.push(normal_form_check(q));
    for (label, m) in modules {
        out.push(module_check(m, label, cfg.radius, cfg.samples, &mut sampler));
    }
    out
}

pub fn suite_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
