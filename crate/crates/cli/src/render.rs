use jacobian_core::expr::{print_poly_with, var_name, VarStyle};
use jacobian_core::structure::{
    Classification, HessianPower, RelationStructure, Side, StSplitting, WitnessPoint,
};
use jacobian_core::{EigenReport, JordanDecomposition, Poly, Rat, RatMatrix};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Debug)]
pub struct ResultDoc {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outcome: String,
    pub certificates: Value,
}

impl ResultDoc {
    pub fn new(
        command: &str,
        inputs: Value,
        outcome: impl Into<String>,
        certificates: Value,
    ) -> Self {
        ResultDoc {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outcome: outcome.into(),
            certificates,
        }
    }
}

pub fn error_doc(command: &str, kind: &str, message: &str) -> ResultDoc {
    ResultDoc::new(
        command,
        json!({}),
        "error",
        json!({ "error": { "kind": kind, "message": message } }),
    )
}

pub fn poly(f: &Poly, style: VarStyle) -> Value {
    Value::String(print_poly_with(f, style))
}

pub fn polys(fs: &[Poly], style: VarStyle) -> Value {
    Value::Array(fs.iter().map(|f| poly(f, style)).collect())
}

pub fn form(f: &Poly, style: VarStyle) -> Value {
    json!({ "poly": poly(f, style), "nvars": f.nvars(), "degree": f.degree() })
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn matrix(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rat).collect()))
            .collect(),
    )
}

pub fn point(p: &[Rat]) -> Value {
    Value::String(p.iter().map(Rat::to_string).collect::<Vec<_>>().join(","))
}

pub fn eigen_report(r: &EigenReport) -> Value {
    json!({
        "char_poly": r.char_poly.to_string(),
        "min_poly": r.min_poly.to_string(),
        "min_poly_squarefree": r.is_diagonalizable_over_closure,
        "is_scalar": r.is_scalar,
        "splits_over_Q": r.splits_over_q,
        "rational_eigenvalues": r
            .rational_eigenvalues
            .iter()
            .map(|(v, k)| json!({ "value": rat(v), "multiplicity": k }))
            .collect::<Vec<_>>(),
    })
}

pub fn jordan(dec: &JordanDecomposition) -> Value {
    json!({
        "J": matrix(&dec.j),
        "P": matrix(&dec.p),
        "blocks": dec
            .blocks
            .iter()
            .map(|b| json!({ "eigenvalue": rat(&b.eigenvalue), "size": b.size, "offset": b.offset }))
            .collect::<Vec<_>>(),
    })
}

pub fn relation(r: &RelationStructure) -> Value {
    json!({
        "C": matrix(&r.c),
        "eigen": eigen_report(&r.report),
        "jordan": r.jordan.as_ref().map(jordan),
    })
}

fn side(s: Side) -> &'static str {
    match s {
        Side::F => "f",
        Side::G => "g",
    }
}

pub fn witness_point(w: &WitnessPoint) -> Value {
    json!({
        "side": side(w.side),
        "point": point(&w.point),
        "multiplicity": w.multiplicity,
        "linear_index": w.linear_index,
        "coordinate_change": matrix(&w.coordinate_change),
    })
}

pub fn splitting(s: &StSplitting, nvars: usize, style: VarStyle) -> Value {
    let partition: Vec<String> = s
        .group_forms
        .iter()
        .map(|forms| {
            let mut vars: Vec<usize> = forms.iter().flat_map(Poly::support).collect();
            vars.sort_unstable();
            vars.dedup();
            vars.iter()
                .map(|&i| var_name(i, nvars, style))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    json!({
        "partition": partition.join(" | "),
        "coordinate_change": matrix(&s.coordinate_change),
        "transformed_g": poly(&s.transformed_g, style),
        "groups": s.groups,
        "eigenvalues": s.eigenvalues.iter().map(rat).collect::<Vec<_>>(),
        "group_forms": s.group_forms.iter().map(|g| polys(g, style)).collect::<Vec<_>>(),
        "parts": polys(&s.parts, style),
    })
}

pub fn hessian_power(h: &HessianPower, style: VarStyle) -> Value {
    json!({
        "c": rat(&h.c),
        "ell": poly(&h.ell, style),
        "e": h.e,
        "probe": point(&h.probe),
    })
}

pub fn classification(c: &Classification, nvars: usize, style: VarStyle) -> Value {
    json!({
        "scalar": c.scalar.as_ref().map(rat),
        "relation": c.relation.as_ref().map(relation),
        "st_splitting": c.st_splitting.as_ref().map(|s| splitting(s, nvars, style)),
        "witness_point": c.witness_point().map(witness_point),
        "witnesses": c.witnesses.iter().map(witness_point).collect::<Vec<_>>(),
        "hessian_power": c.hessian_power.as_ref().map(|h| hessian_power(h, style)),
    })
}
