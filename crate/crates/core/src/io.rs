//! JSON input: quantum matrices and module specifications.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::QuantumMatrix;
use crate::realization::ClockShiftRealization;
use crate::repmod::{build_tau0_action, EvaluationModule, FactorKind, GlModule, LoopedModule, ModuleParameters};
use crate::Cyc;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    n_plus_1: usize,
    m: u32,
    #[serde(rename = "K")]
    k: Vec<Vec<i64>>,
}

/// Parses `{n_plus_1, m, K}`.
pub fn parse_quantum_matrix(text: &str) -> Result<QuantumMatrix> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if f.k.len() != f.n_plus_1 {
        return Err(Error::DimensionMismatch {
            expected: f.n_plus_1,
            got: f.k.len(),
        });
    }
    QuantumMatrix::from_rows(f.m, f.k)
}

fn parse_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// A scalar of `Q(zeta_m)`: an integer, a string `"p/q"` or `"z^k"`, or the
/// exact form `{m, coeffs: [[num, den], ..]}` with `m` dividing the order.
pub fn parse_scalar(v: &Value, m: u32) -> Result<Cyc> {
    match v {
        Value::Number(_) => Ok(Cyc::from_rational(m, BigRational::from_integer(parse_big(v)?))),
        Value::String(s) => {
            let s = s.trim();
            if let Some(k) = s.strip_prefix("z^") {
                let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
                Ok(Cyc::root_of_unity(m, k))
            } else {
                Ok(Cyc::from_rational(m, parse_rational(s)?))
            }
        }
        Value::Object(o) => {
            let order =
                o.get("m")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("scalar object needs an integer `m`".into()))? as u32;
            let coeffs = o
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("scalar object needs `coeffs`".into()))?;
            let mut cs = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                let pair = c.as_array().filter(|p| p.len() == 2);
                let Some(p) = pair else {
                    return Err(Error::Parse(format!("coefficient {c} is not [num, den]")));
                };
                let den = parse_big(&p[1])?;
                if den == BigInt::from(0) {
                    return Err(Error::DivisionByZero);
                }
                cs.push(BigRational::new(parse_big(&p[0])?, den));
            }
            Cyc::from_coeffs(order, cs).rescale_order(m)
        }
        other => Err(Error::Parse(format!("not a scalar: {other}"))),
    }
}

/// Parsed module specification; scalars stay as JSON until the field is known.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub v1_kind: FactorKind,
    pub point: Vec<Value>,
    pub component: usize,
    pub v2_kind: FactorKind,
    pub c0: u64,
    pub lambda_d0: Value,
    pub alpha: Vec<Value>,
    pub d: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct V1Raw {
    kind: String,
    #[serde(default)]
    params: Option<V1Params>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct V1Params {
    #[serde(default)]
    point: Vec<Value>,
    #[serde(default)]
    component: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct V2Raw {
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRaw {
    #[serde(rename = "V1")]
    v1: V1Raw,
    #[serde(rename = "V2")]
    v2: V2Raw,
    c0: u64,
    lambda_d0: Value,
    alpha: Vec<Value>,
    #[serde(default = "default_d")]
    d: usize,
}

fn default_d() -> usize {
    2
}

/// Parses `{V1: {kind, params: {point, component?}}, V2: {kind}, c0,
/// lambda_d0, alpha, d?}`.
pub fn parse_module_spec(text: &str) -> Result<ModuleSpec> {
    let raw: SpecRaw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let v1_kind = FactorKind::parse(&raw.v1.kind)?;
    let (point, component) = raw.v1.params.map(|p| (p.point, p.component)).unwrap_or_default();
    if v1_kind == FactorKind::Natural && point.is_empty() {
        return Err(Error::Parse("a natural V1 needs params.point".into()));
    }
    if raw.d == 0 {
        return Err(Error::Parse("d must be positive".into()));
    }
    if component > raw.d {
        return Err(Error::Parse(format!("component {component} exceeds d = {}", raw.d)));
    }
    Ok(ModuleSpec {
        v1_kind,
        point,
        component,
        v2_kind: FactorKind::parse(&raw.v2.kind)?,
        c0: raw.c0,
        lambda_d0: raw.lambda_d0,
        alpha: raw.alpha,
        d: raw.d,
    })
}

impl ModuleSpec {
    /// Builds `L(V_1 (x) V_2)` over the realization.
    pub fn build(&self, real: &Arc<ClockShiftRealization>) -> Result<LoopedModule> {
        let m = real.torus().order();
        let n = real.torus().dim();
        let mut parts = Vec::with_capacity(self.d + 1);
        for slot in 0..=self.d {
            if self.v1_kind == FactorKind::Natural && slot == self.component {
                let b = self
                    .point
                    .iter()
                    .map(|v| parse_scalar(v, m))
                    .collect::<Result<Vec<_>>>()?;
                parts.push(EvaluationModule::new(real, vec![(FactorKind::Natural, b)])?);
            } else {
                parts.push(EvaluationModule::trivial(real));
            }
        }
        let alpha = self
            .alpha
            .iter()
            .map(|v| parse_scalar(v, m))
            .collect::<Result<Vec<_>>>()?;
        let params = ModuleParameters::new(self.c0, parse_scalar(&self.lambda_d0, m)?, alpha)?;
        build_tau0_action(real.clone(), self.d, parts, GlModule { kind: self.v2_kind, n }, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrix_input() {
        let q = parse_quantum_matrix(r#"{"n_plus_1": 2, "m": 4, "K": [[0, -1], [1, 0]]}"#).unwrap();
        assert_eq!(q.exp(0, 1), 3);
        assert!(parse_quantum_matrix(r#"{"n_plus_1": 2, "m": 4, "K": [[0, 1], [1, 0]]}"#).is_err());
        assert!(parse_quantum_matrix(r#"{"n_plus_1": 3, "m": 4, "K": [[0, 1], [3, 0]]}"#).is_err());
        assert!(parse_quantum_matrix("{").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar(&json!(3), 4).unwrap(), Cyc::from_int(4, 3));
        assert_eq!(parse_scalar(&json!("-1/2"), 4).unwrap(), Cyc::from_frac(4, -1, 2));
        assert_eq!(parse_scalar(&json!("z^2"), 4).unwrap(), Cyc::from_int(4, -1));
        let z = Cyc::root_of_unity(4, 1);
        assert_eq!(parse_scalar(&z.to_json(), 4).unwrap(), z);
        assert_eq!(
            parse_scalar(&Cyc::from_int(2, 5).to_json(), 4).unwrap(),
            Cyc::from_int(4, 5)
        );
        assert!(parse_scalar(&json!("1/0"), 4).is_err());
        assert!(parse_scalar(&json!([1]), 4).is_err());
    }

    #[test]
    fn module_spec() {
        let s = parse_module_spec(
            r#"{"V1": {"kind": "natural", "params": {"point": [-1, 1]}},
                "V2": {"kind": "trivial"}, "c0": 2, "lambda_d0": "1/3", "alpha": [1, 0]}"#,
        )
        .unwrap();
        assert_eq!(s.d, 2);
        let q = QuantumMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let real = Arc::new(ClockShiftRealization::new(&q).unwrap());
        let m = s.build(&real).unwrap();
        assert_eq!(m.fiber_dim(), 2);
        assert!(parse_module_spec(
            r#"{"V1": {"kind": "natural"}, "V2": {"kind": "trivial"}, "c0": 1, "lambda_d0": 0, "alpha": []}"#
        )
        .is_err());
    }
}
