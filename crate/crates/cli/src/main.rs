use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toroidal_core::hc1::graded_dimension;
use toroidal_core::io::{parse_module_spec, parse_quantum_matrix};
use toroidal_core::lattice::{radical_basis, simple_form, simple_form_data, xi_basis, Degree, QuantumMatrix};
use toroidal_core::oracle::{cube, hom_check, HomReport};
use toroidal_core::qtorus::{center_commutator_split, multiply, TorusContext, TorusElement};
use toroidal_core::realization::ClockShiftRealization;
use toroidal_core::sampling::Sampler;
use toroidal_core::toroidal::Fault;
use toroidal_core::verify::{loop_iso_check, realization_check, run_suite, suite_passed, Check, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "toroidal",
    version,
    about = "Exact checks for quantum tori and full toroidal Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    MatrixBracketConstant,
}

#[derive(clap::Args)]
struct Common {
    /// Quantum matrix JSON `{n_plus_1, m, K}`.
    #[arg(long)]
    input: PathBuf,
    /// Radius of the degree box.
    #[arg(long = "box", default_value_t = 2)]
    radius: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Radical, center split and `HC_1` dimensions.
    Analyze(Common),
    /// Simple form, transforming matrix and xi basis.
    Normalize(Common),
    /// Clock and shift matrices and checks of the loop embedding.
    Realize(Common),
    /// The full property suite; exits nonzero on any violation.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Seed for the ChaCha8 generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Module specification JSON.
        #[arg(long)]
        module_spec: Option<PathBuf>,
        /// Run module checks (needs --module-spec).
        #[arg(long)]
        modules: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<QuantumMatrix, Failure> {
    parse_quantum_matrix(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn degrees(ds: &[Degree]) -> Value {
    Value::Array(ds.iter().map(Degree::to_json).collect())
}

/// The part of `q` that the clock and shift construction applies to.
fn realized_part(q: &QuantumMatrix) -> QuantumMatrix {
    if q.first_variable_central() {
        q.restricted()
    } else {
        q.clone()
    }
}

fn analyze(q: &QuantumMatrix, r: i64) -> Value {
    let ctx = TorusContext::new(q.clone());
    let rad = radical_basis(q);
    let pts = cube(q.dim(), r);
    let mut center = Vec::new();
    let mut commutator = Vec::new();
    for a in &pts {
        let (comm, cent) = center_commutator_split(&ctx, &TorusElement::unit_monomial(&ctx, a.clone()));
        if comm.is_zero() && !cent.is_zero() {
            center.push(a.clone());
        } else {
            commutator.push(a.clone());
        }
    }
    let hc1: Vec<Value> = pts
        .iter()
        .map(|a| (a, graded_dimension(&ctx, a)))
        .filter(|(_, d)| *d > 0)
        .map(|(a, d)| json!({ "degree": a.to_json(), "dim": d }))
        .collect();
    json!({
        "schema": 1,
        "command": "analyze",
        "box": r,
        "n_plus_1": q.dim(),
        "m": q.order(),
        "matrix": q.to_json(),
        "radical": rad.to_json(),
        "index": rad.index(),
        "center_count": center.len(),
        "commutator_count": commutator.len(),
        "center_degrees": degrees(&center),
        "hc1_nonzero_dims": hc1,
    })
}

fn normalize(q: &QuantumMatrix) -> Result<Value, Failure> {
    let part = realized_part(q);
    let (qp, a) = simple_form(&part);
    let err = |e: toroidal_core::Error| Failure::Input(e.to_string());
    let data = simple_form_data(&qp).map_err(err)?;
    let xi = xi_basis(&qp).map_err(err)?;
    Ok(json!({
        "schema": 1,
        "command": "normalize",
        "central_head_dropped": part.dim() != q.dim(),
        "q_prime": qp.to_json(),
        "A": a.matrix().to_json(),
        "xi": degrees(&xi),
        "z": data.z,
        "orders": data.orders,
        "N": data.size(),
    }))
}

fn loop_hom_report(real: &ClockShiftRealization, r: i64) -> HomReport {
    let ctx = real.torus().clone();
    let dom: Vec<TorusElement> = cube(ctx.dim(), r)
        .into_iter()
        .map(|a| TorusElement::unit_monomial(&ctx, a))
        .collect();
    hom_check(
        "loop_hom",
        &dom,
        |x, y| Ok::<_, toroidal_core::Error>(multiply(&ctx, x, y)),
        |x| real.loop_hom(x),
        |x, y| Ok(x.mul(y)),
    )
}

fn quotient_report(real: &ClockShiftRealization, r: i64) -> HomReport {
    let ctx = real.torus().clone();
    let dom: Vec<TorusElement> = cube(ctx.dim(), r)
        .into_iter()
        .map(|a| TorusElement::unit_monomial(&ctx, a))
        .collect();
    hom_check(
        "quotient_to_mat",
        &dom,
        |x, y| Ok::<_, toroidal_core::Error>(multiply(&ctx, x, y)),
        |x| real.quotient_to_mat(x),
        |x, y| Ok(x.mul(y)),
    )
}

fn realize(q: &QuantumMatrix, r: i64) -> Result<(Value, bool), Failure> {
    let (qp, a) = simple_form(&realized_part(q));
    let real = ClockShiftRealization::new(&qp).map_err(|e| Failure::Input(e.to_string()))?;
    let homs = [loop_hom_report(&real, r), quotient_report(&real, r)];
    let check = realization_check(&real, r);
    let ok = check.passed() && homs.iter().all(HomReport::passed);
    let v = json!({
        "schema": 1,
        "command": "realize",
        "box": r,
        "q_prime": qp.to_json(),
        "A": a.matrix().to_json(),
        "realization": real.to_json(),
        "hom_checks": homs.iter().map(HomReport::to_json).collect::<Vec<_>>(),
        "checks": [check.to_json()],
        "passed": ok,
    });
    Ok((v, ok))
}

struct VerifyArgs {
    samples: usize,
    seed: u64,
    module_spec: Option<PathBuf>,
    modules: bool,
    fault: Option<Fault>,
}

fn verify(q: &QuantumMatrix, r: i64, args: &VerifyArgs) -> Result<(Value, Vec<Check>), Failure> {
    if args.modules && args.module_spec.is_none() {
        return Err(Failure::Usage("--modules needs --module-spec".into()));
    }
    let (qp, _) = simple_form(&realized_part(q));
    let real = Arc::new(ClockShiftRealization::new(&qp).map_err(|e| Failure::Input(e.to_string()))?);
    let mut modules = Vec::new();
    if let Some(path) = &args.module_spec {
        let spec = parse_module_spec(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let m = spec
            .build(&real)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        modules.push((format!("{}x{}", spec.v1_kind.name(), spec.v2_kind.name()), m));
    }
    let cfg = SuiteConfig {
        radius: r,
        samples: args.samples,
        seed: args.seed,
        fault: args.fault,
    };
    let mut checks = run_suite(q, &cfg, &modules);
    checks.push(realization_check(&real, r));
    if real.data().z > 0 {
        let mut sampler = Sampler::new(args.seed ^ 0x5eed);
        checks.push(loop_iso_check(&real, 2, r, args.samples.min(200), &mut sampler));
    }
    let total: usize = checks.iter().map(|c| c.violations.len()).sum();
    let v = json!({
        "schema": 1,
        "command": "verify",
        "seed": args.seed,
        "box": r,
        "samples": args.samples,
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "passed": suite_passed(&checks),
        "total_violations": total,
    });
    Ok((v, checks))
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        let status = if c.passed() { "ok" } else { "FAIL" };
        println!(
            "{status:4} {} ({} checked, {} violations)",
            c.name,
            c.checked,
            c.violations.len()
        );
        for v in c.violations.iter().take(5) {
            println!("     {v}");
        }
    }
}

fn emit(format: Format, v: &Value, text: impl FnOnce()) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => text(),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze(c) => {
            let q = load_matrix(&c.input)?;
            let v = analyze(&q, c.radius);
            emit(c.format, &v, || {
                println!("m = {}, n+1 = {}", q.order(), q.dim());
                println!("rad f basis: {}", v["radical"]);
                println!("index: {}", v["index"]);
                println!(
                    "box {}: {} central monomials, {} in the commutator space",
                    c.radius, v["center_count"], v["commutator_count"]
                );
                for e in v["hc1_nonzero_dims"].as_array().into_iter().flatten() {
                    println!("HC_1 degree {}: dim {}", e["degree"], e["dim"]);
                }
            });
            Ok(true)
        }
        Command::Normalize(c) => {
            let q = load_matrix(&c.input)?;
            let v = normalize(&q)?;
            emit(c.format, &v, || {
                println!("q' = {}", v["q_prime"]);
                println!("A = {}", v["A"]);
                println!("xi = {}", v["xi"]);
                println!("z = {}, orders = {}, N = {}", v["z"], v["orders"], v["N"]);
            });
            Ok(true)
        }
        Command::Realize(c) => {
            let q = load_matrix(&c.input)?;
            let (v, ok) = realize(&q, c.radius)?;
            emit(c.format, &v, || {
                println!("N = {}, orders = {}", v["realization"]["N"], v["realization"]["orders"]);
                for h in v["hom_checks"].as_array().into_iter().flatten() {
                    println!(
                        "{}: {} pairs, violations {}",
                        h["map"], h["pairs_checked"], h["violations"]
                    );
                }
                println!("{}", if ok { "PASS" } else { "FAIL" });
            });
            Ok(ok)
        }
        Command::Verify {
            common,
            samples,
            seed,
            module_spec,
            modules,
            inject_fault,
        } => {
            let q = load_matrix(&common.input)?;
            let args = VerifyArgs {
                samples,
                seed,
                module_spec,
                modules,
                fault: inject_fault.map(|FaultArg::MatrixBracketConstant| Fault::MatrixBracketConstant),
            };
            let (v, checks) = verify(&q, common.radius, &args)?;
            let ok = suite_passed(&checks);
            emit(common.format, &v, || {
                print_checks(&checks);
                println!("seed {seed}: {}", if ok { "PASS" } else { "FAIL" });
            });
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
