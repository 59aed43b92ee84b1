//! Brute-force verifiers that avoid the production shortcuts.
//!
//! The cocycle is recomputed by normal-ordering generator words, `HC_1` is
//! recomputed as the quotient of `C_q (x) C_q` by the defining relations in
//! a finite window, and homomorphisms are checked pointwise.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::hc1::{graded_dimension, reduce_symbol, HC1Element};
use crate::lattice::{Degree, QuantumMatrix};
use crate::linalg::SparseEchelon;
use crate::qtorus::{center_commutator_split, lie_bracket, monomial_inverse, multiply, TorusContext, TorusElement};
use crate::Cyc;

/// All integer vectors of length `n` with entries in `lo[k]..=hi[k]`.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Degree> {
    let mut out = vec![Vec::with_capacity(lo.len())];
    for k in 0..lo.len() {
        let mut next = Vec::new();
        for p in &out {
            for x in lo[k]..=hi[k] {
                let mut v = p.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Degree).collect()
}

/// `[-r, r]^n`.
pub fn cube(n: usize, r: i64) -> Vec<Degree> {
    box_points(&vec![-r; n], &vec![r; n])
}

/// Exponent of the scalar in `t^a t^b = c t^{a+b}`, found by sorting the
/// generator word `t_0^{a_0} .. t_n^{a_n} t_0^{b_0} .. t_n^{b_n}` with
/// `t_j^x t_i^y = q_ji^{xy} t_i^y t_j^x`.
pub fn word_sigma_exp(q: &QuantumMatrix, a: &Degree, b: &Degree) -> i64 {
    let mut word: Vec<(usize, i64)> =
        a.0.iter()
            .enumerate()
            .chain(b.0.iter().enumerate())
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x))
            .collect();
    let mut e = 0i64;
    // bubble sort, one adjacent swap at a time
    let len = word.len();
    for pass in 0..len {
        for p in 0..len.saturating_sub(1 + pass) {
            let (j, x) = word[p];
            let (i, y) = word[p + 1];
            if j > i {
                e += q.exp(j, i) * x * y;
                word.swap(p, p + 1);
            }
        }
    }
    e.rem_euclid(q.order() as i64)
}

/// Dimensions of `HC_1` in every degree `g` in `[-2r, 2r]^{n+1}`, from the
/// defining quotient.
///
/// For each `g` the symbols `<t^a, t^{g-a}>` with `a` in a window around
/// `[0, g]` span a finite space. The skew relation is used to identify
/// `<t^a, t^{g-a}>` with `-<t^{g-a}, t^a>` (and to kill the symmetric
/// symbol), then the cyclic relations
/// `sigma(a,b) <t^{a+b}, t^c> + sigma(b,c) <t^{b+c}, t^a> + sigma(c,a) <t^{c+a}, t^b>`
/// with `b` in `{0, +-e_i}` are imposed, and the commutator map cuts out the
/// kernel.
pub fn hc1_bruteforce_dims(q: &QuantumMatrix, r: i64) -> BTreeMap<Degree, usize> {
    let n = q.dim();
    let m = q.order();
    let roots: Vec<Cyc> = (0..m as i64).map(|k| Cyc::root_of_unity(m, k)).collect();
    let mut steps = vec![Degree::zero(n)];
    for i in 0..n {
        steps.push(Degree::unit(n, i));
        steps.push(-Degree::unit(n, i));
    }
    let mut out = BTreeMap::new();
    for g in cube(n, 2 * r) {
        let lo: Vec<i64> = g.0.iter().map(|&x| x.min(0) - 1).collect();
        let hi: Vec<i64> = g.0.iter().map(|&x| x.max(0) + 1).collect();
        let window = box_points(&lo, &hi);
        // column of <t^a, t^{g-a}> as (index, sign); None for the symmetric symbol
        let mut slot: BTreeMap<&Degree, Option<(usize, bool)>> = BTreeMap::new();
        let mut cols = 0usize;
        for a in &window {
            let b = &g - a;
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    slot.insert(a, Some((cols, true)));
                    cols += 1;
                }
                std::cmp::Ordering::Equal => {
                    slot.insert(a, None);
                }
                std::cmp::Ordering::Greater => {}
            }
        }
        for a in &window {
            let b = &g - a;
            if a > &b {
                let (k, _) = slot[&b].expect("partner column");
                slot.insert(a, Some((k, false)));
            }
        }
        let mut ech: SparseEchelon<Cyc> = SparseEchelon::new();
        for a in &window {
            for b in &steps {
                let c = &(&g - a) - b;
                let terms = [(a + b, a, b), (b + &c, b, &c), (&c + a, &c, a)];
                let mut row: BTreeMap<usize, Cyc> = BTreeMap::new();
                let mut inside = true;
                for (first, x, y) in &terms {
                    match slot.get(first) {
                        None => inside = false,
                        Some(None) => {}
                        Some(Some((k, plus))) => {
                            let v = &roots[word_sigma_exp(q, x, y) as usize];
                            let e = row.entry(*k).or_insert_with(|| Cyc::zero(m));
                            *e = if *plus { &*e + v } else { &*e - v };
                        }
                    }
                }
                if !inside {
                    continue;
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
        let commutator_nonzero = window.iter().any(|a| {
            let b = &g - a;
            word_sigma_exp(q, a, &b) != word_sigma_exp(q, &b, a)
        });
        let dim = cols - ech.rank() - usize::from(commutator_nonzero);
        out.insert(g, dim);
    }
    out
}

/// Degrees where the brute-force and closed-form dimensions disagree.
pub fn hc1_dimension_mismatches(ctx: &TorusContext, r: i64) -> Vec<(Degree, usize, usize)> {
    hc1_bruteforce_dims(ctx.matrix(), r)
        .into_iter()
        .filter_map(|(g, brute)| {
            let closed = graded_dimension(ctx, &g);
            (brute != closed).then_some((g, brute, closed))
        })
        .collect()
}

/// The identities checked exhaustively on a degree box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `f(a, b) = f(b, a)^{-1}`
    FormInverse,
    /// `f(ka, a) = f(a, ka) = 1`
    FormMultiple,
    /// `f(a + b, c) = f(a, c) f(b, c)`
    FormLeftAdditive,
    /// `f(a, b + c) = f(a, b) f(a, c)`
    FormRightAdditive,
    /// `sigma(a, b + c) = sigma(a, b) sigma(a, c)`
    SigmaRightAdditive,
    /// `t^a t^b = sigma(a, b) t^{a+b} = f(a, b) t^b t^a`
    MonomialProduct,
    /// Monomials split into center and commutator by radical membership,
    /// and central monomials bracket to zero.
    CenterSplit,
    /// The four `HC_1` relations for the symbol reduction.
    Hc1Relations,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::FormInverse,
        Identity::FormMultiple,
        Identity::FormLeftAdditive,
        Identity::FormRightAdditive,
        Identity::SigmaRightAdditive,
        Identity::MonomialProduct,
        Identity::CenterSplit,
        Identity::Hc1Relations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::FormInverse => "form_inverse",
            Identity::FormMultiple => "form_multiple",
            Identity::FormLeftAdditive => "form_left_additive",
            Identity::FormRightAdditive => "form_right_additive",
            Identity::SigmaRightAdditive => "sigma_right_additive",
            Identity::MonomialProduct => "monomial_product",
            Identity::CenterSplit => "center_split",
            Identity::Hc1Relations => "hc1_relations",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    #[serde(rename = "box")]
    pub radius: i64,
    pub tuples_checked: u64,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity.name(),
            "box": self.radius,
            "tuples_checked": self.tuples_checked,
            "violations": self.violations,
        })
    }
}

/// Word-sorted cocycle exponents on `box(2r) x box(2r)`.
struct SigmaTable {
    m: i64,
    w: usize,
    side: usize,
    r2: i64,
    table: Vec<i64>,
}

impl SigmaTable {
    fn new(q: &QuantumMatrix, r: i64) -> Self {
        let pts = cube(q.dim(), 2 * r);
        let mut table = Vec::with_capacity(pts.len() * pts.len());
        for a in &pts {
            for b in &pts {
                table.push(word_sigma_exp(q, a, b));
            }
        }
        SigmaTable {
            m: q.order() as i64,
            w: (4 * r + 1) as usize,
            side: pts.len(),
            r2: 2 * r,
            table,
        }
    }

    fn idx(&self, v: &Degree) -> usize {
        v.0.iter().fold(0usize, |acc, &x| acc * self.w + (x + self.r2) as usize)
    }

    fn sigma(&self, a: &Degree, b: &Degree) -> i64 {
        self.table[self.idx(a) * self.side + self.idx(b)]
    }

    fn f(&self, a: &Degree, b: &Degree) -> i64 {
        (self.sigma(a, b) - self.sigma(b, a)).rem_euclid(self.m)
    }
}

/// Checks one identity on every tuple of the box `[-r, r]^{n+1}` (and
/// `k` in `[-r, r]` where relevant).
pub fn exhaustive_identity_check(ctx: &TorusContext, identity: Identity, r: i64) -> IdentityReport {
    let q = ctx.matrix();
    let n = q.dim();
    let pts = cube(n, r);
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let m = q.order() as i64;
    let md = |x: i64| x.rem_euclid(m);
    match identity {
        Identity::FormInverse | Identity::FormMultiple => {
            let t = SigmaTable::new(q, r);
            for a in &pts {
                for b in &pts {
                    checked += 1;
                    if identity == Identity::FormInverse {
                        if md(t.f(a, b) + t.f(b, a)) != 0 {
                            violations.push(format!("f({a},{b}) f({b},{a}) != 1"));
                        }
                        if ctx.f_form(a, b) != ctx.zeta(t.f(a, b)) {
                            violations.push(format!("f({a},{b}) differs from word oracle"));
                        }
                    }
                }
                if identity == Identity::FormMultiple {
                    for k in -r..=r {
                        checked += 1;
                        let ka = a.scale(k);
                        let e1 = md(word_sigma_exp(q, &ka, a) - word_sigma_exp(q, a, &ka));
                        if e1 != 0 || ctx.f_exp(&ka, a) != 0 || ctx.f_exp(a, &ka) != 0 {
                            violations.push(format!("f({k}{a},{a}) != 1"));
                        }
                    }
                }
            }
        }
        Identity::FormLeftAdditive | Identity::FormRightAdditive | Identity::SigmaRightAdditive => {
            let t = SigmaTable::new(q, r);
            for a in &pts {
                for b in &pts {
                    let ab = a + b;
                    for c in &pts {
                        checked += 1;
                        let bc = b + c;
                        let ok = match identity {
                            Identity::FormLeftAdditive => md(t.f(&ab, c) - t.f(a, c) - t.f(b, c)) == 0,
                            Identity::FormRightAdditive => md(t.f(a, &bc) - t.f(a, b) - t.f(a, c)) == 0,
                            _ => md(t.sigma(a, &bc) - t.sigma(a, b) - t.sigma(a, c)) == 0,
                        };
                        if !ok {
                            violations.push(format!("{} fails at a={a} b={b} c={c}", identity.name()));
                        }
                    }
                }
            }
        }
        Identity::MonomialProduct => {
            for a in &pts {
                for b in &pts {
                    checked += 1;
                    let ta = TorusElement::unit_monomial(ctx, a.clone());
                    let tb = TorusElement::unit_monomial(ctx, b.clone());
                    let ab = multiply(ctx, &ta, &tb);
                    let ba = multiply(ctx, &tb, &ta);
                    let expect = TorusElement::monomial(a + b, ctx.zeta(word_sigma_exp(q, a, b)));
                    if ab != expect {
                        violations.push(format!("t^{a} t^{b} != sigma t^(a+b)"));
                    }
                    let f = md(word_sigma_exp(q, a, b) - word_sigma_exp(q, b, a));
                    if ab != ba.scale(&ctx.zeta(f)) {
                        violations.push(format!("t^{a} t^{b} != f t^{b} t^{a}"));
                    }
                }
            }
        }
        Identity::CenterSplit => {
            let probes = cube(n, 1);
            for a in &pts {
                checked += 1;
                let central_by_brackets = pts.iter().all(|b| word_sigma_exp(q, a, b) == word_sigma_exp(q, b, a));
                if central_by_brackets != ctx.in_radical(a) {
                    violations.push(format!("t^{a}: radical membership disagrees with commutation"));
                }
                let ta = TorusElement::unit_monomial(ctx, a.clone());
                let (comm, center) = center_commutator_split(ctx, &ta);
                let expect_center = ctx.in_radical(a);
                let split_ok = if expect_center {
                    comm.is_zero() && center == ta
                } else {
                    center.is_zero() && comm == ta
                };
                if !split_ok {
                    violations.push(format!("t^{a} split incorrectly"));
                }
                if expect_center {
                    for b in probes.iter().chain(pts.iter()) {
                        let tb = TorusElement::unit_monomial(ctx, b.clone());
                        if !lie_bracket(ctx, &ta, &tb).is_zero() {
                            violations.push(format!("[t^{a}, t^{b}] != 0 for central t^{a}"));
                        }
                    }
                }
            }
        }
        Identity::Hc1Relations => {
            let zero = Degree::zero(n);
            for a in &pts {
                // <1, t^a> = 0
                checked += 1;
                if !reduce_symbol(ctx, &zero, a).is_zero() {
                    violations.push(format!("<1, t^{a}> != 0"));
                }
                // (t^b)^{-1} = sigma(b, b) t^{-b}
                let ta = TorusElement::unit_monomial(ctx, a.clone());
                let inv = monomial_inverse(ctx, a);
                let one = TorusElement::one(ctx);
                if multiply(ctx, &ta, &inv) != one || multiply(ctx, &inv, &ta) != one {
                    violations.push(format!("inverse of t^{a} wrong"));
                }
                for b in &pts {
                    checked += 1;
                    // <t^a, t^b> = sigma(a, b) sum a_i <t_i, t^{a+b} t_i^{-1}>
                    let lhs = reduce_symbol(ctx, a, b);
                    let g = a + b;
                    let mut rhs = HC1Element::zero();
                    if ctx.in_radical(&g) {
                        let s = ctx.zeta(word_sigma_exp(q, a, b));
                        for (i, &ai) in a.0.iter().enumerate() {
                            if ai != 0 {
                                rhs = rhs.add(&symbol_basis(ctx, i, &g).scale(&s.scale_int(ai)));
                            }
                        }
                    }
                    if lhs != rhs {
                        violations.push(format!("<t^{a}, t^{b}> expansion fails"));
                    }
                    // <t^b, t^a (t^b)^{-1}> = sum b_i <t_i, t^a t_i^{-1}> for a in rad
                    if ctx.in_radical(a) {
                        let tb = TorusElement::unit_monomial(ctx, b.clone());
                        let right = multiply(ctx, &ta, &monomial_inverse(ctx, b));
                        let lhs = crate::hc1::pair(ctx, &tb, &right);
                        let mut rhs = HC1Element::zero();
                        for (i, &bi) in b.0.iter().enumerate() {
                            if bi != 0 {
                                rhs = rhs.add(&symbol_basis(ctx, i, a).scale(&ctx.int(bi)));
                            }
                        }
                        if lhs != rhs {
                            violations.push(format!("<t^{b}, t^{a}(t^{b})^-1> fails"));
                        }
                    }
                }
            }
        }
    }
    violations.sort();
    violations.dedup();
    IdentityReport {
        identity,
        radius: r,
        tuples_checked: checked,
        violations,
    }
}

/// `<t_i, t^m t_i^{-1}>` written through the symbol reduction, so that the
/// identity checks compare symbols with symbols.
fn symbol_basis(ctx: &TorusContext, i: usize, m: &Degree) -> HC1Element {
    let ei = Degree::unit(ctx.dim(), i);
    let right = multiply(
        ctx,
        &TorusElement::unit_monomial(ctx, m.clone()),
        &monomial_inverse(ctx, &ei),
    );
    crate::hc1::pair(ctx, &TorusElement::unit_monomial(ctx, ei), &right)
}

/// Outcome of a pointwise homomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub map: String,
    pub pairs_checked: u64,
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map,
            "pairs_checked": self.pairs_checked,
            "violations": self.violations,
        })
    }
}

/// Checks `phi(x * y) = phi(x) * phi(y)` on all pairs from `domain`, where
/// `*` is whatever product each side supplies (associative or Lie).
pub fn hom_check<D, C, E>(
    name: &str,
    domain: &[D],
    dom_op: impl Fn(&D, &D) -> Result<D, E>,
    map: impl Fn(&D) -> Result<C, E>,
    cod_op: impl Fn(&C, &C) -> Result<C, E>,
) -> HomReport
where
    D: std::fmt::Debug,
    C: PartialEq + std::fmt::Debug,
    E: std::fmt::Display,
{
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, x) in domain.iter().enumerate() {
        for (j, y) in domain.iter().enumerate() {
            checked += 1;
            let res = (|| -> Result<bool, E> {
                let lhs = map(&dom_op(x, y)?)?;
                let rhs = cod_op(&map(x)?, &map(y)?)?;
                Ok(lhs == rhs)
            })();
            match res {
                Ok(true) => {}
                Ok(false) => violations.push(format!("pair ({i}, {j}) not preserved")),
                Err(e) => violations.push(format!("pair ({i}, {j}): {e}")),
            }
        }
    }
    HomReport {
        map: name.to_string(),
        pairs_checked: checked,
        violations,
    }
}
