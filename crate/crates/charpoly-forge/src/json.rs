//! JSON file formats.
//!
//! Fields are `{"kind": "Q"}` or `{"kind": "GF", "p": 7}`. Rational literals
//! are strings such as `"-3/4"`, residues are bare integers; both spellings
//! are accepted when reading. Matrices are
//! `{"field", "rows", "cols", "entries": [[...], ...]}` and polynomials are
//! `{"field", "coeffs": [...]}` with coefficients ascending.

use std::fmt;

use charpoly_forge_core::decompose::Evidence;
use charpoly_forge_core::{
    DecompositionCertificate, DecompositionKind, FieldElement, FieldSpec, ForgeCertificate, Matrix,
    Polynomial,
};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

pub type Result<T> = std::result::Result<T, FormatError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError(msg.into()))
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| FormatError(format!("missing key \"{key}\"")))
}

fn usize_of(v: &Value, key: &str) -> Result<usize> {
    field_of(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| FormatError(format!("\"{key}\" must be a non-negative integer")))
}

pub fn field_to_json(spec: FieldSpec) -> Value {
    match spec.modulus() {
        None => json!({"kind": "Q"}),
        Some(p) => json!({"kind": "GF", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match field_of(v, "kind")?.as_str() {
        Some("Q") => Ok(FieldSpec::Rationals),
        Some("GF") => {
            let p = field_of(v, "p")?
                .as_u64()
                .ok_or_else(|| FormatError("\"p\" must be an integer".into()))?;
            FieldSpec::prime_field(p).map_err(|e| FormatError(e.to_string()))
        }
        _ => err("field kind must be \"Q\" or \"GF\""),
    }
}

/// Parses `Q` or `GF:p` as used on the command line.
pub fn field_from_flag(s: &str) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("GF:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| FormatError(format!("field must be Q or GF:<p>, got {s:?}")))?;
    FieldSpec::prime_field(p).map_err(|e| FormatError(e.to_string()))
}

pub fn element_to_json(e: &FieldElement) -> Value {
    match e.residue() {
        Some(r) => json!(r),
        None => Value::String(e.to_string()),
    }
}

pub fn element_from_json(spec: FieldSpec, v: &Value) -> Result<FieldElement> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return err(format!("invalid field literal {v}")),
    };
    FieldElement::parse(spec, &text).map_err(|e| FormatError(format!("{e}: {text:?}")))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(element_to_json).collect()))
        .collect();
    json!({
        "field": field_to_json(m.spec()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let spec = field_from_json(field_of(v, "field")?)?;
    let rows = usize_of(v, "rows")?;
    let cols = usize_of(v, "cols")?;
    let entries = field_of(v, "entries")?
        .as_array()
        .ok_or_else(|| FormatError("\"entries\" must be an array".into()))?;
    if entries.len() != rows {
        return err(format!("expected {rows} rows, found {}", entries.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| FormatError("each row must be an array".into()))?;
        if row.len() != cols {
            return err(format!("expected {cols} columns, found {}", row.len()));
        }
        out.push(
            row.iter()
                .map(|x| element_from_json(spec, x))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if rows == 0 {
        return Ok(Matrix::zeros(spec, 0, cols));
    }
    Matrix::from_rows(spec, out).map_err(|e| FormatError(e.to_string()))
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    json!({
        "field": field_to_json(p.spec()),
        "coeffs": p.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let spec = field_from_json(field_of(v, "field")?)?;
    let coeffs = field_of(v, "coeffs")?
        .as_array()
        .ok_or_else(|| FormatError("\"coeffs\" must be an array".into()))?;
    let coeffs = coeffs
        .iter()
        .map(|x| element_from_json(spec, x))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(spec, coeffs).map_err(|e| FormatError(e.to_string()))
}

pub fn forge_certificate_to_json(c: &ForgeCertificate) -> Value {
    json!({
        "N": matrix_to_json(&c.n),
        "q": poly_to_json(&c.q_achieved),
        "transform": matrix_to_json(c.transform.matrix()),
        "nonderogatory_result": c.nonderogatory_result,
    })
}

pub fn evidence_to_json(e: &Evidence) -> Value {
    match e {
        Evidence::Eigenvalues(v) => {
            json!({"eigenvalues": v.iter().map(element_to_json).collect::<Vec<_>>()})
        }
        Evidence::Determinant(d) => json!({"determinant": element_to_json(d)}),
        Evidence::PotentPower(n) => json!({"power": n, "identity": "good^n = good"}),
        Evidence::TorsionPower(n) => json!({"power": n, "identity": "good^n = I"}),
    }
}

fn evidence_from_json(kind: DecompositionKind, spec: FieldSpec, v: &Value) -> Result<Evidence> {
    Ok(match kind {
        DecompositionKind::Diagonalizable => {
            let list = field_of(v, "eigenvalues")?
                .as_array()
                .ok_or_else(|| FormatError("\"eigenvalues\" must be an array".into()))?;
            Evidence::Eigenvalues(
                list.iter()
                    .map(|x| element_from_json(spec, x))
                    .collect::<Result<_>>()?,
            )
        }
        DecompositionKind::Invertible => {
            Evidence::Determinant(element_from_json(spec, field_of(v, "determinant")?)?)
        }
        DecompositionKind::Potent => Evidence::PotentPower(usize_of(v, "power")?),
        DecompositionKind::Torsion => Evidence::TorsionPower(usize_of(v, "power")?),
    })
}

/// Also carries `N = -nilpotent` and `q = charpoly(good)` so that the
/// certificate can be fed to `verify` as it is.
pub fn decomposition_to_json(c: &DecompositionCertificate) -> Value {
    json!({
        "kind": c.kind.name(),
        "good": matrix_to_json(&c.good),
        "nilpotent": matrix_to_json(&c.nilpotent),
        "evidence": evidence_to_json(&c.evidence),
        "N": matrix_to_json(&c.perturbation()),
        "q": poly_to_json(&c.q),
    })
}

pub fn decomposition_from_json(v: &Value) -> Result<DecompositionCertificate> {
    let kind = field_of(v, "kind")?
        .as_str()
        .and_then(DecompositionKind::parse)
        .ok_or_else(|| FormatError("unknown decomposition kind".into()))?;
    let good = matrix_from_json(field_of(v, "good")?)?;
    let nilpotent = matrix_from_json(field_of(v, "nilpotent")?)?;
    let evidence = evidence_from_json(kind, good.spec(), field_of(v, "evidence")?)?;
    let q = poly_from_json(field_of(v, "q")?)?;
    Ok(DecompositionCertificate {
        kind,
        good,
        nilpotent,
        evidence,
        q,
    })
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| FormatError(format!("invalid JSON: {e}")))
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Keys of a JSON object, for telling file kinds apart.
pub fn has_key(v: &Value, key: &str) -> bool {
    v.as_object()
        .is_some_and(|m: &Map<String, Value>| m.contains_key(key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let q = FieldSpec::Rationals;
        let half = element_from_json(q, &json!("-1/2")).unwrap();
        assert_eq!(element_to_json(&half), json!("-1/2"));
        assert_eq!(element_from_json(q, &json!(3)).unwrap(), q.from_i64(3));
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert_eq!(element_from_json(f7, &json!("9")).unwrap(), f7.from_i64(2));
        assert_eq!(element_to_json(&f7.from_i64(-1)), json!(6));
        assert!(element_from_json(q, &json!(0.5)).is_err());
        assert!(element_from_json(q, &json!("1/0")).is_err());
    }

    #[test]
    fn fields() {
        assert_eq!(
            field_from_flag("GF:5").unwrap(),
            FieldSpec::prime_field(5).unwrap()
        );
        assert_eq!(field_from_flag("Q").unwrap(), FieldSpec::Rationals);
        assert!(field_from_flag("GF:4").is_err());
        assert!(field_from_flag("R").is_err());
        assert!(field_from_json(&json!({"kind": "GF", "p": 6})).is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let m = Matrix::from_i64_rows(f5, &[&[1, 2], &[3, 4], &[0, 1]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let bad = json!({"field": {"kind": "Q"}, "rows": 2, "cols": 1, "entries": [["1"]]});
        assert!(matrix_from_json(&bad).is_err());
    }

    #[test]
    fn poly_roundtrip() {
        let p = Polynomial::from_i64s(FieldSpec::Rationals, &[1, 0, -3, 1]);
        let v = poly_to_json(&p);
        assert_eq!(v["coeffs"], json!(["1", "0", "-3", "1"]));
        assert_eq!(poly_from_json(&v).unwrap(), p);
    }
}
