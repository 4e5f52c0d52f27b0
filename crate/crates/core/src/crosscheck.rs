//! Agreement report across representations of `R(s)`.

use std::collections::BTreeMap;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::auxiliary::{default_spec, RMethod};
use crate::error::{Error, Result};
use crate::hermite::HermiteEngine;
use crate::quad::EvalResult;
use crate::scalar::{lit, rel_diff, Real};

/// Values of `R(s)` by several methods and their worst disagreement.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckReport<T: Real> {
    pub s: Complex<T>,
    pub values: BTreeMap<RMethod, EvalResult<T>>,
    /// Methods whose evaluation failed, with the error message.
    pub failures: BTreeMap<RMethod, String>,
    /// Largest relative difference over all pairs in `values`; infinite
    /// when fewer than two methods produced a value.
    pub max_pairwise_rel_err: T,
    pub tol: T,
    pub pass: bool,
}

#[derive(Serialize)]
struct ComplexDto {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ValueDto {
    re: f64,
    im: f64,
    err: f64,
}

#[derive(Serialize)]
struct ReportDto {
    s: ComplexDto,
    values: BTreeMap<&'static str, ValueDto>,
    max_pairwise_rel_err: Option<f64>,
    pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    failures: BTreeMap<&'static str, String>,
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl<T: Real> CrossCheckReport<T> {
    /// `{"s": {re, im}, "values": {Method: {re, im, err}}, "max_pairwise_rel_err", "pass"}`,
    /// plus `"failures"` when a method failed. A missing maximum is `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let max = f64_of(self.max_pairwise_rel_err);
        let dto = ReportDto {
            s: ComplexDto { re: f64_of(self.s.re), im: f64_of(self.s.im) },
            values: self
                .values
                .iter()
                .map(|(m, v)| {
                    let dto = ValueDto { re: f64_of(v.value.re), im: f64_of(v.value.im), err: f64_of(v.err_estimate) };
                    (m.name(), dto)
                })
                .collect(),
            max_pairwise_rel_err: max.is_finite().then_some(max),
            pass: self.pass,
            failures: self.failures.iter().map(|(m, e)| (m.name(), e.clone())).collect(),
        };
        serde_json::to_value(dto).expect("report serializes")
    }
}

/// Evaluates `R(s)` by each of `methods` and compares them pairwise.
///
/// Each method runs at `tol / 100` so that the comparison, not the
/// individual quadratures, decides the verdict.
pub fn crosscheck<T: Real>(s: Complex<T>, methods: &[RMethod], tol: T) -> Result<CrossCheckReport<T>> {
    crosscheck_with(s, methods, tol, &HermiteEngine::default(), None)
}

/// [`crosscheck`] with an explicit Hermite engine and an optional cap on
/// the quadrature node budget.
pub fn crosscheck_with<T: Real>(
    s: Complex<T>,
    methods: &[RMethod],
    tol: T,
    engine: &HermiteEngine<T>,
    max_nodes: Option<usize>,
) -> Result<CrossCheckReport<T>> {
    let mut methods = methods.to_vec();
    methods.sort();
    methods.dedup();
    if methods.len() < 2 {
        return Err(Error::Precondition(format!("crosscheck needs at least two methods, got {}", methods.len())));
    }
    if !(tol > T::zero()) {
        return Err(Error::Precondition(format!("tol must be positive, got {tol}")));
    }
    let method_tol = (tol * lit(1e-2)).max(lit(1e-13));
    let outcomes: Vec<(RMethod, Result<EvalResult<T>>)> = methods
        .par_iter()
        .map(|&m| {
            let run = || {
                let mut spec = default_spec(m, s, method_tol)?;
                if let Some(cap) = max_nodes {
                    spec = spec.with_max_nodes(spec.max_nodes.min(cap));
                }
                m.eval_with(s, &spec, engine)
            };
            (m, run())
        })
        .collect();

    let mut values = BTreeMap::new();
    let mut failures = BTreeMap::new();
    for (m, outcome) in outcomes {
        match outcome {
            Ok(v) => {
                values.insert(m, v);
            }
            Err(e) => {
                failures.insert(m, e.to_string());
            }
        }
    }
    let found: Vec<Complex<T>> = values.values().map(|v| v.value).collect();
    let mut max = if found.len() < 2 { T::infinity() } else { T::zero() };
    for (i, a) in found.iter().enumerate() {
        for b in &found[i + 1..] {
            max = max.max(rel_diff(*a, *b));
        }
    }
    let pass = failures.is_empty() && max <= tol;
    Ok(CrossCheckReport { s, values, failures, max_pairwise_rel_err: max, tol, pass })
}
