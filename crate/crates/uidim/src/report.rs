//! JSON and text renderings of analysis results.
//!
//! JSON objects use `serde_json`'s sorted maps, so equal results always
//! serialize to identical bytes.

use std::fmt::Write as _;

use serde_json::{json, Value};
use uidim_core::dimension::DimensionReport;
use uidim_core::rademacher::{Method, RadReport};
use uidim_core::rules::{Rule, RuleTrace, Verification};
use uidim_core::{BoundDerivation, BoundednessReport, GroundSet, SetFamily, Subset, TrialBatch};

use crate::format::names;

pub fn set_text(g: &GroundSet, s: &Subset) -> String {
    format!("{{{}}}", g.element_names(s).collect::<Vec<_>>().join(", "))
}

pub fn boundedness_json(b: &BoundednessReport) -> Value {
    json!({
        "min_d": b.min_d,
        "violating_j": b.violating_j,
        "profile": b.per_j.iter().map(|c| json!({"j": c.j, "count": c.count, "ceiling": c.ceiling})).collect::<Vec<_>>(),
    })
}

pub fn analysis_json(f: &SetFamily, b: &BoundednessReport, r: &DimensionReport) -> Value {
    let g = f.ground();
    json!({
        "ground_size": f.ground_size(),
        "family_size": f.len(),
        "is_chain": f.is_chain(),
        "boundedness": boundedness_json(b),
        "ui_dim": r.ui_dim,
        "ui_witness": names(g, &r.ui_witness),
        "vc_dim": r.vc_dim,
        "vc_witness": names(g, &r.vc_witness),
    })
}

pub fn analysis_text(f: &SetFamily, b: &BoundednessReport, r: &DimensionReport) -> String {
    let g = f.ground();
    let mut s = String::new();
    let _ = writeln!(s, "ground set: {} elements, family: {} sets", f.ground_size(), f.len());
    for c in &b.per_j {
        let _ = writeln!(s, "  j={:<4} count={:<6} ceiling={}", c.j, c.count, c.ceiling);
    }
    let _ = write!(s, "min_d: {}", b.min_d);
    if let Some(j) = b.violating_j {
        let _ = write!(s, " (d={} fails at j={j})", b.min_d - 1);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "chain: {}", f.is_chain());
    let _ = writeln!(s, "ui_dim: {}  witness {}", r.ui_dim, set_text(g, &r.ui_witness));
    let _ = writeln!(s, "vc_dim: {}  witness {}", r.vc_dim, set_text(g, &r.vc_witness));
    s
}

fn rule_name(r: &Rule) -> &'static str {
    match r {
        Rule::ContainmentOrder => "containment_order",
        Rule::DeterministicLeaf => "deterministic_leaf",
        Rule::DeclaredDimension => "declared_dimension",
        Rule::ExactDimension => "exact_dimension",
        Rule::Union => "union",
        Rule::Intersection { .. } => "intersection",
        Rule::SingleSetIntersection => "single_set_intersection",
        Rule::DeterministicIntersection => "deterministic_intersection",
    }
}

pub fn trace_json(t: &RuleTrace) -> Value {
    let mut v = json!({
        "rule": rule_name(&t.rule),
        "bound": t.bound,
        "children": t.children.iter().map(trace_json).collect::<Vec<_>>(),
    });
    if let Rule::Intersection { k } = t.rule {
        v["k"] = json!(k);
    }
    v
}

fn trace_text(t: &RuleTrace, depth: usize, out: &mut String) {
    let _ = write!(out, "{:indent$}{} -> {}", "", rule_name(&t.rule), t.bound, indent = 2 * depth);
    if let Rule::Intersection { k } = t.rule {
        let _ = write!(out, " (k={k})");
    }
    out.push('\n');
    for c in &t.children {
        trace_text(c, depth + 1, out);
    }
}

pub fn derivation_json(d: &BoundDerivation, v: Option<&Verification>) -> Value {
    json!({
        "bound": d.bound,
        "dimension": d.final_dimension(),
        "trace": trace_json(&d.trace),
        "verification": v.map(|v| json!({"exact": v.exact, "bound": v.bound, "sound": v.sound})),
    })
}

pub fn derivation_text(d: &BoundDerivation, v: Option<&Verification>) -> String {
    let mut s = String::new();
    trace_text(&d.trace, 0, &mut s);
    let _ = writeln!(s, "dimension bound: {}", d.final_dimension());
    if let Some(v) = v {
        let _ = writeln!(
            s,
            "exact dimension: {}  {}",
            v.exact,
            if v.sound { "sound" } else { "UNSOUND" }
        );
    }
    s
}

/// Run parameters echoed into a simulation summary.
#[derive(Debug, Clone)]
pub struct SimParams {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, Value)>,
}

fn ratio_stats(batch: &TrialBatch) -> (f64, f64) {
    if batch.records.is_empty() {
        return (0.0, 0.0);
    }
    let ratios = batch.records.iter().map(|r| r.ratio());
    let sum: f64 = ratios.clone().sum();
    (sum / batch.records.len() as f64, ratios.fold(f64::MIN, f64::max))
}

pub fn batch_json(params: &SimParams, batch: &TrialBatch) -> Value {
    let (mean_ratio, max_ratio) = ratio_stats(batch);
    let mut v = json!({
        "kind": params.kind,
        "trials": batch.trials,
        "failures": batch.failures,
        "empirical_rate": batch.empirical_failure_rate,
        "theoretical_bound": batch.theoretical_bound.map(|b| b.clamped),
        "theoretical_bound_raw": batch.theoretical_bound.map(|b| b.raw),
        "rigorous_bound": batch.rigorous_bound.map(|b| b.clamped),
        "within_bound": batch.within_bound(),
        "p": batch.p,
        "seed": batch.master_seed,
        "mean_ratio": mean_ratio,
        "max_ratio": max_ratio,
    });
    for (k, val) in &params.fields {
        v[*k] = val.clone();
    }
    v
}

pub fn batch_text(params: &SimParams, batch: &TrialBatch) -> String {
    let (mean_ratio, max_ratio) = ratio_stats(batch);
    let mut s = String::new();
    let _ = write!(s, "{}: p={} seed={}", params.kind, batch.p, batch.master_seed);
    for (k, v) in &params.fields {
        let _ = write!(s, " {k}={v}");
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "trials: {}  failures: {}  empirical rate: {}",
        batch.trials, batch.failures, batch.empirical_failure_rate
    );
    match batch.theoretical_bound {
        Some(b) => {
            let _ = writeln!(s, "theoretical bound: {} (raw {})", b.clamped, b.raw);
            if let Some(r) = batch.rigorous_bound {
                let _ = writeln!(s, "rigorous bound: {}", r.clamped);
            }
            let _ = writeln!(s, "within bound: {}", batch.within_bound());
        }
        None => {
            let _ = writeln!(s, "theoretical bound: none");
        }
    }
    let _ = writeln!(s, "imbalance/sqln ratio: mean {mean_ratio:.4}, max {max_ratio:.4}");
    s
}

pub fn rad_json(r: &RadReport, vc_bound: Option<f64>) -> Value {
    let method = match r.method {
        Method::Exact => json!({"kind": "exact"}),
        Method::MonteCarlo { samples, seed, std_error } => {
            json!({"kind": "monte_carlo", "samples": samples, "seed": seed, "std_error": std_error})
        }
    };
    json!({
        "m": r.m,
        "value": r.value,
        "method": method,
        "massart": r.massart,
        "vc_bound": vc_bound,
        "slices": r.slices.iter().map(|s| json!({"j": s.j, "count": s.count, "value": s.value, "bound": s.bound})).collect::<Vec<_>>(),
    })
}

pub fn rad_text(r: &RadReport, vc_bound: Option<f64>) -> String {
    let mut s = String::new();
    match r.method {
        Method::Exact => {
            let _ = writeln!(s, "m·Rad (exact, m={}): {}", r.m, r.value);
        }
        Method::MonteCarlo { samples, std_error, .. } => {
            let _ = writeln!(s, "m·Rad (monte carlo, m={}, {samples} samples): {} ± {std_error}", r.m, r.value);
        }
    }
    let _ = writeln!(s, "massart bound: {}", r.massart);
    if let Some(b) = vc_bound {
        let _ = writeln!(s, "vc bound: {b}");
    }
    for sl in &r.slices {
        let _ = writeln!(s, "  j={:<4} count={:<6} value={:<12.6} bound={:.6}", sl.j, sl.count, sl.value, sl.bound);
    }
    s
}
