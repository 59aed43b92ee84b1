//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use toroidal_core::lattice::{LatticeAutomorphism, QuantumMatrix};
use toroidal_core::oracle::{exhaustive_identity_check, Identity};
use toroidal_core::qtorus::TorusContext;
use toroidal_core::realization::ClockShiftRealization;
use toroidal_core::repmod::{build_tau0_action, EvaluationModule, FactorKind, GlModule, ModuleParameters};
use toroidal_core::sampling::Sampler;
use toroidal_core::toroidal::ToroidalAlgebra;
use toroidal_core::verify::{
    automorphism_check, automorphism_check_maps, hc1_check, jacobi_check, loop_iso_check, module_check,
    normal_form_check, realization_check, Check,
};
use toroidal_core::Cyc;

const R: i64 = 2;

fn instances() -> Vec<(&'static str, QuantumMatrix)> {
    vec![
        ("all-ones", QuantumMatrix::trivial(3)),
        (
            "zeta2",
            QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap(),
        ),
        (
            "zeta4",
            QuantumMatrix::from_rows(4, vec![vec![0, -1], vec![1, 0]]).unwrap(),
        ),
        (
            "mixed",
            QuantumMatrix::from_rows(4, vec![vec![0, -1, -2], vec![1, 0, -2], vec![2, 2, 0]]).unwrap(),
        ),
    ]
}

struct Outcome {
    checked: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, label: &str, c: Check) {
        self.checked += c.checked;
        for v in c.violations.into_iter().take(3) {
            self.failures.push(format!("{label}/{}: {v}", c.name));
        }
    }

    fn require(&mut self, ok: bool, what: &str) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn identity_check(label: &str, ctx: &TorusContext, id: Identity, out: &mut Outcome) {
    let rep = exhaustive_identity_check(ctx, id, R);
    out.absorb(
        label,
        Check {
            name: id.name().to_string(),
            checked: rep.tuples_checked,
            violations: rep.violations,
        },
    );
}

fn cocycle_suite() -> Outcome {
    let mut out = Outcome::new();
    for (label, q) in instances() {
        let ctx = TorusContext::new(q);
        for id in [
            Identity::FormInverse,
            Identity::FormMultiple,
            Identity::FormLeftAdditive,
            Identity::FormRightAdditive,
            Identity::SigmaRightAdditive,
            Identity::MonomialProduct,
        ] {
            identity_check(label, &ctx, id, &mut out);
        }
    }
    out
}

fn center_split() -> Outcome {
    let mut out = Outcome::new();
    for (label, q) in instances() {
        identity_check(label, &TorusContext::new(q), Identity::CenterSplit, &mut out);
    }
    out
}

fn hc1_dimensions() -> Outcome {
    let mut out = Outcome::new();
    for (label, q) in instances() {
        out.absorb(label, hc1_check(&TorusContext::new(q), R));
    }
    out
}

fn hc1_relations() -> Outcome {
    let mut out = Outcome::new();
    for (label, q) in instances() {
        identity_check(label, &TorusContext::new(q), Identity::Hc1Relations, &mut out);
    }
    out
}

fn jacobi_suite() -> Outcome {
    let mut out = Outcome::new();
    let mut s = Sampler::new(11);
    for (label, q) in instances() {
        for d in [2, 3] {
            let alg = ToroidalAlgebra::new(TorusContext::new(q.clone()), d);
            let c = jacobi_check(&alg, R, 500, &mut s);
            out.require(c.checked >= 1000, "fewer than 500 triples");
            out.absorb(label, c);
        }
    }
    out
}

fn automorphism_suite() -> Outcome {
    let mut out = Outcome::new();
    let mut s = Sampler::new(12);
    for (label, q) in instances() {
        let n = q.dim();
        let alg = ToroidalAlgebra::new(TorusContext::new(q), 2);
        let mut shear = vec![vec![0i64; n]; n];
        let mut swap = vec![vec![0i64; n]; n];
        for i in 0..n {
            shear[i][i] = 1;
            if i + 1 < n {
                shear[i][i + 1] = 1;
            }
            swap[i][n - 1 - i] = 1;
        }
        let maps = vec![
            LatticeAutomorphism::from_rows(shear).unwrap(),
            LatticeAutomorphism::from_rows(swap).unwrap(),
        ];
        out.absorb(label, automorphism_check_maps(&alg, maps, R, 100, &mut s));
        out.absorb(label, automorphism_check(&alg, 2, R, 100, &mut s));
    }
    out
}

fn normal_form() -> Outcome {
    let mut out = Outcome::new();
    let mut qs = instances();
    qs.push((
        "two-zeta4",
        QuantumMatrix::from_rows(4, vec![vec![0, 0, 0], vec![0, 0, -1], vec![0, 1, 0]]).unwrap(),
    ));
    qs.push((
        "zeta4-on-two",
        QuantumMatrix::from_rows(4, vec![vec![0, -1, -1], vec![1, 0, 0], vec![1, 0, 0]]).unwrap(),
    ));
    qs.push((
        "zeta12",
        QuantumMatrix::from_rows(
            12,
            vec![
                vec![0, 5, 3, 2],
                vec![-5, 0, 4, 6],
                vec![-3, -4, 0, 1],
                vec![-2, -6, -1, 0],
            ],
        )
        .unwrap(),
    ));
    for (label, q) in qs {
        out.absorb(label, normal_form_check(&q));
    }
    out
}

fn block(k: u32) -> QuantumMatrix {
    QuantumMatrix::from_rows(k, vec![vec![0, -1], vec![1, 0]]).unwrap()
}

fn realization_suite() -> Outcome {
    let mut out = Outcome::new();
    for k in [2, 3, 4] {
        let real = ClockShiftRealization::new(&block(k)).unwrap();
        out.require(real.size() == k as usize, "N differs from k");
        out.absorb(&format!("k={k}"), realization_check(&real, R));
    }
    let three = QuantumMatrix::from_rows(2, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
    let real = ClockShiftRealization::new(&three).unwrap();
    out.absorb("k=2,n=3", realization_check(&real, R));
    out
}

fn loop_iso_suite() -> Outcome {
    let mut out = Outcome::new();
    let mut s = Sampler::new(13);
    for k in [2, 3] {
        let real = ClockShiftRealization::new(&block(k)).unwrap();
        let c = loop_iso_check(&real, 2, R, 200, &mut s);
        out.require(c.checked >= 200, "fewer than 200 pairs");
        out.absorb(&format!("k={k}"), c);
    }
    out
}

fn module_suite() -> Outcome {
    let mut out = Outcome::new();
    let mut s = Sampler::new(14);
    let real = Arc::new(ClockShiftRealization::new(&block(2)).unwrap());
    let m = real.torus().order();
    let d = 2;
    for c0 in [1u64, 2] {
        for natural_v1 in [true, false] {
            let mut parts = Vec::new();
            for slot in 0..=d {
                if natural_v1 && slot == 0 {
                    let pt = vec![Cyc::from_int(m, -1), Cyc::from_int(m, 1)];
                    parts.push(EvaluationModule::new(&real, vec![(FactorKind::Natural, pt)]).unwrap());
                } else {
                    parts.push(EvaluationModule::trivial(&real));
                }
            }
            let v2 = GlModule {
                kind: if natural_v1 {
                    FactorKind::Trivial
                } else {
                    FactorKind::Natural
                },
                n: 2,
            };
            let params = ModuleParameters::new(
                c0,
                Cyc::from_frac(m, 1, 3),
                vec![Cyc::from_int(m, 1), Cyc::from_frac(m, -1, 2)],
            )
            .unwrap();
            let module = build_tau0_action(real.clone(), d, parts, v2, params).unwrap();
            let label = format!("{}-c0={c0}", if natural_v1 { "natural-V1" } else { "natural-V2" });
            let c = module_check(&module, &label, R, 200, &mut s);
            out.require(c.checked >= 400, "fewer than 200 vector samples");
            out.absorb(&label, c);
        }
    }
    out
}

fn negative_control() -> Outcome {
    let mut out = Outcome::new();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta2.json");
    std::fs::write(&path, r#"{"n_plus_1": 2, "m": 2, "K": [[0, 1], [1, 0]]}"#).unwrap();
    let run = |fault: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_toroidal"));
        cmd.args(["verify", "--input"]).arg(&path).args(["--samples", "100"]);
        if fault {
            cmd.args(["--inject-fault", "matrix-bracket-constant"]);
        }
        cmd.output().unwrap().status
    };
    let clean = run(false);
    let broken = run(true);
    out.require(clean.success(), "clean suite exits nonzero");
    out.require(!broken.success(), "corrupted constant exits zero");
    out
}

type Criterion = (&'static str, f64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("cocycle identities", 10.0, cocycle_suite),
        ("center and commutator split", 10.0, center_split),
        ("HC_1 dimensions against the quotient oracle", 60.0, hc1_dimensions),
        ("HC_1 symbol identities", 10.0, hc1_relations),
        ("Jacobi and antisymmetry", 60.0, jacobi_suite),
        ("automorphisms", 60.0, automorphism_suite),
        ("normal form", 10.0, normal_form),
        ("clock and shift realization", 30.0, realization_suite),
        ("loop isomorphism", 60.0, loop_iso_suite),
        ("module axioms and level law", 120.0, module_suite),
        ("negative control", 60.0, negative_control),
    ];
    let mut all = true;
    let stdout = std::io::stdout();
    for (i, (name, target, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let ok = o.failures.is_empty() && o.checked > 0;
        all &= ok;
        let timing = if secs <= *target { "" } else { ", over the time target" };
        let mut lock = stdout.lock();
        writeln!(
            lock,
            "criterion {:>2}: {} {name} ({} checks, {secs:.1} s{timing})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            o.checked
        )
        .unwrap();
        for f in o.failures.iter().take(5) {
            writeln!(lock, "    {f}").unwrap();
        }
    }
    if !all {
        std::process::exit(1);
    }
}
