//! JSON documents emitted by the command-line tool. Rationals are written as
//! `"p/q"` strings (or `"p"` for integers).

use serde_json::{json, Value};

use crate::graph::LabeledDigraph;
use crate::liealg::NilAlgebra;
use crate::scalar::rat_to_string;
use crate::schreier::SchreierAction;
use crate::spectra::{SingularityVerdict, Witness};
use crate::Rational;

pub fn rat_json(r: &Rational) -> Value {
    Value::String(rat_to_string(r))
}

pub fn rats_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

/// `[[coeff, vertex], ...]` for the nonzero coordinates of a vertex vector.
pub fn vertex_terms_json(a: &NilAlgebra, v: &[Rational]) -> Value {
    Value::Array(
        a.vertex_terms(v)
            .into_iter()
            .map(|(c, name)| json!([rat_to_string(&c), name.0]))
            .collect(),
    )
}

/// The analysis behind `nilgraph info`.
pub fn info(g: &LabeledDigraph) -> Value {
    let a = NilAlgebra::build(g);
    let derived = a.derived_algebra();
    let abelian = a.abelian_factor();
    let center = a.center();
    let perp = a.center_perp_from(&abelian);
    let mut warnings = Vec::new();
    if !derived.equals_label_span {
        warnings.push(format!(
            "derived algebra has dimension {} but there are {} labels",
            derived.span.dim(),
            a.p()
        ));
    }
    if !center.decomposition_holds {
        warnings.push("center is larger than derived algebra plus abelian factor".to_string());
    }
    let script_a = match g.script_a() {
        Ok(vs) => Value::Array(vs.into_iter().map(|v| Value::String(v.0)).collect()),
        Err(_) => {
            warnings.push("graph is not simple; script A is not defined".to_string());
            Value::Null
        }
    };
    json!({
        "dims": {
            "V": a.n(),
            "C": a.p(),
            "derived": derived.span.dim(),
            "center": center.subspace.dim(),
            "abelian_factor": abelian.dim(),
        },
        "vertices": g.vertices().iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
        "labels": g.labels().iter().map(|z| z.0.clone()).collect::<Vec<_>>(),
        "script_a": script_a,
        "abelian_factor_basis": abelian
            .basis_vectors()
            .iter()
            .map(|v| vertex_terms_json(&a, v))
            .collect::<Vec<_>>(),
        "center_perp": perp
            .basis
            .iter()
            .map(|(v, n)| json!({"vector": vertex_terms_json(&a, v), "norm_sq": rat_json(n)}))
            .collect::<Vec<_>>(),
        "diagnostics": g.diagnostics(),
        "uniform": g.uniform_coloring_check(),
        "warnings": warnings,
    })
}

fn witness_json(w: &Witness) -> Value {
    json!({"coeffs": rats_json(&w.coeffs), "det": rat_json(&w.det)})
}

pub fn verdict(v: &SingularityVerdict) -> Value {
    json!({
        "status": v.status,
        "witnesses": v.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "char_poly": rats_json(&v.char_poly.coeffs),
        "restricted_dim": v.restricted_dim,
        "symbolic": v.symbolic,
        "samples": v.samples,
        "seed": v.seed,
    })
}

pub fn schreier(act: &SchreierAction<'_>) -> Value {
    let a = NilAlgebra::build(act.graph());
    let part = act.classes();
    json!({
        "classes": part.classes,
        "representatives": part.representatives,
        "xi": act.xi_basis().iter().map(|v| vertex_terms_json(&a, v)).collect::<Vec<_>>(),
    })
}

/// Renders `[[c, v], ...]` as `c*v + ...` for the human-readable output.
pub fn terms_text(terms: &Value) -> String {
    let mut out = String::new();
    for t in terms.as_array().into_iter().flatten() {
        let (Some(c), Some(v)) = (t.get(0).and_then(Value::as_str), t.get(1).and_then(Value::as_str)) else {
            continue;
        };
        let (negative, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c),
        };
        let term = if mag == "1" { v.to_string() } else { format!("{mag}*{v}") };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
