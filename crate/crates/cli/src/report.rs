//! JSON documents printed by the subcommands. Field order is fixed by the
//! `serde_json` map and floats use its shortest round-trip formatting, so equal
//! inputs give byte-identical output.

use serde_json::{json, Value};
use thermoforms::enumerate::{CandidateForm, Provenance, SingletonTheorem};
use thermoforms::experiment::GasSpec;
use thermoforms::forms::{Exponents, OneForm, Potential};
use thermoforms::validate::{discovered_potential, symbolic_potential, Discovery, FitReport, SegmentIntegrals, Verdict};
use thermoforms::Rational;

use crate::CliError;

/// Relative tolerance for reading fitted constants as `nR`, `c_v`, `c_v + nR`.
/// The reading is an annotation only.
const ANNOTATION_REL_TOL: f64 = 1e-3;

const OUTSIDE_NOTE: &str = "closed family outside c1/p dp + c2/V dV";

pub fn enumeration(bound: u32, candidates: &[CandidateForm<Rational>]) -> Value {
    let list: Vec<Value> = candidates
        .iter()
        .map(|c| {
            let mut entry = json!({
                "form": c.form.to_string(),
                "potential": c.potential.to_string(),
                "complexity": c.complexity,
                "provenance": provenance(&c.provenance),
                "outside_log_ansatz": c.outside_log_ansatz,
            });
            if c.outside_log_ansatz {
                entry["note"] = json!(OUTSIDE_NOTE);
            }
            entry
        })
        .collect();
    json!({ "bound": bound, "candidates": list })
}

fn provenance(p: &Provenance) -> Value {
    match p {
        Provenance::Tuple { tuple, pattern } => json!({
            "exponents": [tuple.alpha, tuple.beta, tuple.alpha_p, tuple.beta_p],
            "pattern": format!("{pattern:?}"),
        }),
        Provenance::Composite(s) => json!({ "composite": s }),
    }
}

fn fit(report: &FitReport<f64>) -> Value {
    json!({
        "coefficients": report.coefficients,
        "residual_rel": report.residual_rel,
        "rank": report.rank,
        "condition": report.condition,
        "verdict": report.verdict.to_string(),
        "overdetermined": report.overdetermined,
    })
}

pub fn validation(forms: &[OneForm<Rational>], integration: &str, table: &[SegmentIntegrals<f64>], report: &FitReport<f64>) -> Value {
    let segments: Vec<Value> = table
        .iter()
        .map(|s| json!({ "segment": s.segment_id, "delta_s": s.delta_s, "integrals": s.integrals }))
        .collect();
    json!({
        "forms": forms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "integration": integration,
        "segments": segments,
        "report": fit(report),
    })
}

fn log_coefficient(field: &thermoforms::forms::ScalarField<f64>) -> f64 {
    field.coefficient(&Exponents::ZERO).copied().unwrap_or(0.0)
}

fn numeric_potential(p: &Potential<f64>) -> Value {
    json!({
        "text": p.to_string(),
        "ln_p": log_coefficient(p.log_p()),
        "ln_V": log_coefficient(p.log_v()),
    })
}

pub fn discovery(
    budget: u32,
    integration: &str,
    set: &[SingletonTheorem<Rational>],
    gas: &GasSpec<f64>,
    ranked: &[Discovery<f64>],
) -> Result<Value, CliError> {
    let theorems: Vec<Value> = ranked
        .iter()
        .map(|d| {
            let mut entry = fit(&d.report);
            entry["candidate"] = json!(d.rendered);
            entry["terms"] = json!(d.labels);
            entry["complexity"] = json!(d.candidate.total_complexity);
            entry
        })
        .collect();
    let best = match ranked.first() {
        None => Value::Null,
        Some(d) => {
            let mut entry = json!({
                "candidate": d.rendered,
                "verdict": d.report.verdict.to_string(),
                "coefficients": d.report.coefficients,
                "potential": Value::Null,
                "symbolic_potential": Value::Null,
            });
            if d.report.verdict == Verdict::Valid {
                let err = |e: thermoforms::validate::ValidateError| CliError::Data(e.to_string());
                entry["potential"] = numeric_potential(&discovered_potential(d, set, gas).map_err(err)?);
                if let Some(sym) = symbolic_potential(d, set, gas, ANNOTATION_REL_TOL).map_err(err)? {
                    entry["symbolic_potential"] = json!(sym.to_string());
                }
            }
            entry
        }
    };
    Ok(json!({
        "budget": budget,
        "integration": integration,
        "singletons": set.iter().map(|s| s.label.clone()).collect::<Vec<_>>(),
        "theorems": theorems,
        "best": best,
    }))
}
