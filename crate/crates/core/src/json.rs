//! JSON encodings. Scalars are exact strings ("n", "n/d", or a residue);
//! the field is declared once per matrix or block spec.

use serde_json::{json, Map, Value};

use crate::canon::{Block, BlockSpec, Decomposition, FrobeniusForm, XFormCertificate};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Scalar};
use crate::f3product::TwoFactorCertificate;
use crate::matrix::Matrix;
use crate::topology::{CompanionWitness, DensityWitness, WitnessElement};
use crate::upoly::{Polynomial, PropertyPReport};

/// Parses JSON text, reporting syntax errors as `line:column`.
pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn scalar_from_json(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        other => {
            return Err(Error::parse(
                at,
                format!("expected a scalar string, got {other}"),
            ))
        }
    };
    field.parse_scalar(&text).map_err(|e| match e {
        Error::Parse { detail, .. } => Error::parse(at, detail),
        other => Error::parse(at, other.to_string()),
    })
}

fn field_from_json(obj: &Map<String, Value>, default: Option<Field>, at: &str) -> Result<Field> {
    let tag = match obj.get("field") {
        None => return default.ok_or_else(|| Error::parse(at, "missing \"field\"")),
        Some(Value::String(s)) => s.as_str(),
        Some(other) => {
            return Err(Error::parse(
                format!("{at}.field"),
                format!("expected a string, got {other}"),
            ))
        }
    };
    match tag {
        "rational" => Ok(Field::Rational),
        "fp" => {
            let p = obj.get("p").and_then(Value::as_u64).ok_or_else(|| {
                Error::parse(format!("{at}.p"), "fp field needs an integer \"p\"")
            })?;
            let p = u32::try_from(p)
                .map_err(|_| Error::parse(format!("{at}.p"), format!("{p} is out of range")))?;
            Field::fp(p)
        }
        other => Err(Error::parse(
            format!("{at}.field"),
            format!("unknown field {other:?}; expected \"rational\" or \"fp\""),
        )),
    }
}

fn field_to_json(field: Field, obj: &mut Map<String, Value>) {
    match field {
        Field::Rational => {
            obj.insert("field".into(), json!("rational"));
        }
        Field::Fp(p) => {
            obj.insert("field".into(), json!("fp"));
            obj.insert("p".into(), json!(p));
        }
    }
}

fn rows_from_json(field: Field, rows: &Value, at: &str) -> Result<Matrix> {
    let rows = rows
        .as_array()
        .ok_or_else(|| Error::parse(at, "\"rows\" must be an array of arrays"))?;
    if rows.is_empty() {
        return Err(Error::parse(at, "matrix has no rows"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(format!("{at}[{i}]"), "row must be an array"))?;
        if row.len() != rows.len() {
            return Err(Error::parse(
                format!("{at}[{i}]"),
                format!(
                    "row has {} entries, expected {} for a square matrix",
                    row.len(),
                    rows.len()
                ),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, v)| scalar_from_json(field, v, &format!("{at}[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(field, out)
}

fn matrix_at(v: &Value, default: Option<Field>, at: &str) -> Result<Matrix> {
    match v {
        Value::Object(obj) => {
            let field = field_from_json(obj, default, at)?;
            let rows = obj
                .get("rows")
                .ok_or_else(|| Error::parse(at, "missing \"rows\""))?;
            rows_from_json(field, rows, &format!("{at}.rows"))
        }
        Value::Array(_) if default.is_some() => rows_from_json(default.expect("checked"), v, at),
        _ => Err(Error::parse(at, "expected a matrix object")),
    }
}

/// Square matrix from `{"field": …, "p"?: …, "rows": [[…]]}`.
pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    matrix_at(v, None, "$")
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    matrix_from_json(&parse_value(text)?)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let mut obj = Map::new();
    field_to_json(m.field(), &mut obj);
    let rows: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    obj.insert("rows".into(), json!(rows));
    Value::Object(obj)
}

fn poly_at(field: Field, v: &Value, at: &str) -> Result<Polynomial> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| Error::parse(at, "polynomial must be an array of coefficients"))?;
    let coeffs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_from_json(field, c, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(field, coeffs))
}

/// Polynomial from an ascending array of coefficient strings.
pub fn poly_from_json(field: Field, v: &Value) -> Result<Polynomial> {
    poly_at(field, v, "$")
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    json!(p.to_strings())
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!(Scalar::from(r.clone()).to_string())
}

pub fn report_to_json(r: &PropertyPReport) -> Value {
    json!({
        "holds": r.holds,
        "view": r.view.to_string(),
        "violation": r.violation.as_ref().map(ToString::to_string),
    })
}

pub fn certificate_to_json(c: &XFormCertificate) -> Value {
    json!({
        "P": matrix_to_json(&c.p),
        "X": matrix_to_json(&c.x),
        "checks": {"reconstructed": c.a_reconstructed, "x_shape": c.x_shape_ok},
    })
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    match d {
        Decomposition::Certified(c) => {
            let mut v = certificate_to_json(c);
            v["xformable"] = json!(true);
            v
        }
        Decomposition::NotXFormable(report) => json!({
            "xformable": false,
            "report": report_to_json(report),
        }),
        Decomposition::NotConstructibleExactly { report, missing } => json!({
            "xformable": report.holds,
            "constructible": false,
            "report": report_to_json(report),
            "missing": missing,
        }),
    }
}

fn block_from_json(field: Field, v: &Value, at: &str) -> Result<Block> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(at, "block must be an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse(format!("{at}.kind"), "missing block kind"))?;
    match kind {
        "jordan" => {
            let lambda = scalar_from_json(
                field,
                obj.get("lambda").unwrap_or(&Value::Null),
                &format!("{at}.lambda"),
            )?;
            let size = obj
                .get("size")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse(format!("{at}.size"), "expected a positive integer"))?;
            Ok(Block::Jordan {
                lambda,
                size: size as usize,
            })
        }
        "companion" => Ok(Block::Companion(poly_at(
            field,
            obj.get("poly").unwrap_or(&Value::Null),
            &format!("{at}.poly"),
        )?)),
        "raw" => Ok(Block::Raw(matrix_at(
            obj.get("matrix").unwrap_or(&Value::Null),
            Some(field),
            &format!("{at}.matrix"),
        )?)),
        other => Err(Error::parse(
            format!("{at}.kind"),
            format!("unknown block kind {other:?}; expected jordan, companion or raw"),
        )),
    }
}

/// Block spec; the field defaults to rational and applies to every block.
pub fn blockspec_from_json(v: &Value) -> Result<BlockSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse("$", "block spec must be an object"))?;
    let field = field_from_json(obj, Some(Field::Rational), "$")?;
    let blocks = obj
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("$.blocks", "expected an array of blocks"))?
        .iter()
        .enumerate()
        .map(|(i, b)| block_from_json(field, b, &format!("$.blocks[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let conjugator = match obj.get("conjugator") {
        None | Some(Value::Null) => None,
        Some(m) => Some(matrix_at(m, Some(field), "$.conjugator")?),
    };
    BlockSpec::new(field, blocks, conjugator)
}

pub fn blockspec_to_json(spec: &BlockSpec) -> Value {
    let mut obj = Map::new();
    field_to_json(spec.field(), &mut obj);
    let blocks: Vec<Value> = spec
        .blocks()
        .iter()
        .map(|b| match b {
            Block::Jordan { lambda, size } => {
                json!({"kind": "jordan", "lambda": lambda.to_string(), "size": size})
            }
            Block::Companion(p) => json!({"kind": "companion", "poly": poly_to_json(p)}),
            Block::Raw(m) => json!({"kind": "raw", "matrix": matrix_to_json(m)}),
        })
        .collect();
    obj.insert("blocks".into(), json!(blocks));
    obj.insert(
        "conjugator".into(),
        spec.conjugator().map_or(Value::Null, matrix_to_json),
    );
    Value::Object(obj)
}

pub fn witness_to_json(w: &WitnessElement) -> Value {
    json!({
        "case": w.case.to_string(),
        "n": w.n,
        "A_n": matrix_to_json(&w.a_n),
        "distance": rational_to_json(&w.distance),
        "distance_bound": rational_to_json(&w.distance_bound),
        "minpoly": poly_to_json(&w.minpoly),
        "xformable": w.report.holds,
        "report": report_to_json(&w.report),
    })
}

pub fn density_to_json(w: &DensityWitness) -> Value {
    json!({
        "B": matrix_to_json(&w.b),
        "delta": rational_to_json(&w.delta),
        "distance": rational_to_json(&w.distance),
        "report": report_to_json(&w.report),
    })
}

pub fn companion_witness_to_json(w: &CompanionWitness) -> Value {
    json!({
        "R": poly_to_json(&w.r),
        "C": matrix_to_json(&w.companion),
        "distance": rational_to_json(&w.distance),
        "report": report_to_json(&w.report),
    })
}

pub fn two_factor_to_json(c: &TwoFactorCertificate) -> Value {
    json!({
        "M1": matrix_to_json(&c.m1),
        "M2": matrix_to_json(&c.m2),
        "reports": [report_to_json(&c.reports[0]), report_to_json(&c.reports[1])],
        "checks": {"product": c.product_ok},
    })
}

pub fn frobenius_to_json(f: &FrobeniusForm) -> Value {
    let factors: Vec<Value> = f.invariant_factors.iter().map(poly_to_json).collect();
    json!({
        "invariant_factors": factors,
        "transform": matrix_to_json(&f.transform),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn parse_examples() {
        let m = parse_matrix(r#"{"field":"rational","rows":[["1","1/2"],["0","2"]]}"#).unwrap();
        assert_eq!(*m.get(0, 1), Scalar::from(rational(1, 2)));
        let c = parse_matrix(r#"{"field":"fp","p":3,"rows":[["0","2"],["1","0"]]}"#).unwrap();
        assert_eq!(
            c,
            Matrix::companion(&Polynomial::from_i64s(Field::Fp(3), &[1, 0, 1]))
        );
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_matrix(r#"{"field":"rational","rows":[["1","2"],["3"]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location == "$.rows[1]"));
        let err = parse_matrix(r#"{"field":"rational","rows":[["1","x"],["3","4"]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location == "$.rows[0][1]"));
        assert!(parse_matrix(r#"{"field":"fp","p":4,"rows":[["1"]]}"#).is_err());
        assert!(parse_matrix("{").is_err());
        assert!(parse_matrix(r#"{"field":"rational","rows":[]}"#).is_err());
    }

    #[test]
    fn round_trips() {
        let m = Matrix::from_i64s(Field::Fp(5), &[[1, 4], [3, 0]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let spec = blockspec_from_json(&serde_json::json!({
            "blocks": [
                {"kind": "jordan", "lambda": "2", "size": 2},
                {"kind": "companion", "poly": ["2", "0", "1"]},
                {"kind": "raw", "matrix": [["1/3"]]}
            ],
            "conjugator": null
        }))
        .unwrap();
        assert_eq!(spec.n(), 5);
        assert_eq!(
            blockspec_from_json(&blockspec_to_json(&spec)).unwrap(),
            spec
        );
    }
}
