//! JSON views of library values. Everything goes through `serde_json::Value`,
//! whose maps are ordered, so keys come out sorted.

use num_rational::BigRational;
use qaffine_core::drinfeld::DrinfeldPolys;
use qaffine_core::flagcomb::{Decomposition, IntMatrix};
use qaffine_core::polyrep::{Failure, Report};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize)]
struct FailureJson<'a> {
    v: &'a [u32],
    indices: &'a [usize],
    modes: &'a [i64],
    sample: usize,
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    relation: String,
    n: usize,
    d: usize,
    window: i64,
    samples: usize,
    seed: u64,
    checks: usize,
    passed: bool,
    failures: Vec<FailureJson<'a>>,
}

fn failure_json(f: &Failure) -> FailureJson<'_> {
    FailureJson { v: &f.v, indices: &f.indices, modes: &f.modes, sample: f.sample, lhs: &f.lhs, rhs: &f.rhs }
}

pub fn report_value(r: &Report) -> Value {
    let view = ReportJson {
        relation: r.relation.to_string(),
        n: r.n,
        d: r.d,
        window: r.window,
        samples: r.samples,
        seed: r.seed,
        checks: r.checks,
        passed: r.passed(),
        failures: r.failures.iter().map(failure_json).collect(),
    };
    serde_json::to_value(view).expect("report serializes")
}

pub fn reports_value(rs: &[Report]) -> Value {
    json!({
        "passed": rs.iter().all(Report::passed),
        "reports": rs.iter().map(report_value).collect::<Vec<_>>(),
    })
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::String(m.to_string())
}

pub fn decomposition_value(c: &IntMatrix, d: &Decomposition) -> Value {
    json!({
        "matrix": matrix_value(c),
        "factors": d.factors.iter().map(matrix_value).collect::<Vec<_>>(),
        "steps": d.steps.iter().map(|s| json!({
            "current": matrix_value(&s.current),
            "a": matrix_value(&s.a),
            "b": matrix_value(&s.b),
            "length": s.current.length(),
        })).collect::<Vec<_>>(),
    })
}

pub fn rational_value(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

/// Coefficient vectors, lowest degree first.
pub fn drinfeld_value(p: &DrinfeldPolys) -> Value {
    Value::Array(p.coefficient_vectors().iter().map(|cs| Value::Array(cs.iter().map(rational_value).collect())).collect())
}

/// Sorted-key JSON text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}
