use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};
use xformlab_core::canon::{classify_xformable, frobenius_form, xform_decompose};
use xformlab_core::exactnum::parse_rational;
use xformlab_core::f3product::two_xformable_factorization;
use xformlab_core::json::{
    blockspec_from_json, companion_witness_to_json, decomposition_to_json, density_to_json,
    frobenius_to_json, matrix_from_json, parse_value, poly_from_json, poly_to_json, report_to_json,
    two_factor_to_json, witness_to_json,
};
use xformlab_core::topology::{
    boundary_witness, companion_density_witness, density_witness, interior_test,
};
use xformlab_core::{Decomposition, Error, Field, Matrix, View};

use crate::args::Command;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

pub struct Outcome {
    pub code: u8,
    pub body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome {
            code: EXIT_OK,
            body,
        }
    }

    fn negative(body: Value) -> Self {
        Outcome {
            code: EXIT_NEGATIVE,
            body,
        }
    }

    fn verdict(holds: bool, body: Value) -> Self {
        if holds {
            Self::ok(body)
        } else {
            Self::negative(body)
        }
    }
}

enum Failure {
    Core(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (kind, detail) = match self {
            Failure::Core(e) => (e.kind(), e.to_string()),
            Failure::Io(d) => ("io_error", d),
            Failure::Verification(d) => ("verification_failed", d),
        };
        Outcome {
            code: EXIT_ERROR,
            body: json!({"error": {"kind": kind, "detail": detail}}),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        Ok(text)
    } else {
        read_path(Path::new(source))
    }
}

fn read_path(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_matrix(source: &str) -> Result<Matrix> {
    Ok(matrix_from_json(&parse_value(&read_source(source)?)?)?)
}

fn parse_view(s: &str) -> Result<View> {
    Ok(s.parse::<View>()?)
}

fn ensure(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(what.to_string()))
    }
}

pub fn run(command: &Command) -> Outcome {
    dispatch(command).unwrap_or_else(Failure::into_outcome)
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Minpoly(input) => {
            let a = read_matrix(&input.input)?;
            Ok(Outcome::ok(poly_to_json(&a.minpoly())))
        }
        Command::Charpoly(input) => {
            let a = read_matrix(&input.input)?;
            Ok(Outcome::ok(poly_to_json(&a.charpoly())))
        }
        Command::Xformable { input, view } => {
            let a = read_matrix(&input.input)?;
            let report = classify_xformable(&a, parse_view(&view.view)?)?;
            Ok(Outcome::verdict(report.holds, report_to_json(&report)))
        }
        Command::Decompose { input, view } => {
            let a = read_matrix(&input.input)?;
            let d = xform_decompose(&a, parse_view(&view.view)?)?;
            let body = decomposition_to_json(&d);
            match &d {
                Decomposition::Certified(cert) => {
                    ensure(
                        cert.is_valid() && cert.verify(&a),
                        "P·X·P⁻¹ does not reproduce the input or X is not X-shaped",
                    )?;
                    Ok(Outcome::ok(body))
                }
                _ => Ok(Outcome::negative(body)),
            }
        }
        Command::Interior { input, view } => {
            let a = read_matrix(&input.input)?;
            let view = parse_view(&view.view)?;
            let interior = interior_test(&a, view)?;
            let report = classify_xformable(&a, view)?;
            Ok(Outcome::verdict(
                interior,
                json!({"interior": interior, "xformable": report.holds}),
            ))
        }
        Command::Density { input, view, eps } => {
            let a = read_matrix(&input.input)?;
            let eps = parse_rational(eps)?;
            let w = density_witness(&a, &eps, parse_view(&view.view)?)?;
            let chi = w.b.charpoly();
            ensure(
                w.distance < eps
                    && (&w.b - &a).inf_norm()? == w.distance
                    && chi.gcd(&chi.derivative())?.deg() == 0
                    && w.report.holds,
                "density witness failed re-verification",
            )?;
            Ok(Outcome::ok(density_to_json(&w)))
        }
        Command::CompanionDensity { input, r, n } => {
            let value = parse_value(&read_source(input)?)?;
            let q = poly_from_json(Field::Rational, &value)?;
            let w = companion_density_witness(&q, *r, *n)?;
            ensure(
                w.report.holds && w.companion.minpoly() == w.r,
                "companion witness failed re-verification",
            )?;
            Ok(Outcome::ok(companion_witness_to_json(&w)))
        }
        Command::Boundary { spec, n, view } => {
            let spec = blockspec_from_json(&parse_value(&read_path(spec)?)?)?;
            match boundary_witness(&spec, *n, parse_view(&view.view)?) {
                Ok(w) => {
                    ensure(
                        w.structure_ok()
                            && !w.report.holds
                            && w.a_n.minpoly() == w.minpoly
                            && w.distance <= w.distance_bound,
                        "boundary witness failed re-verification",
                    )?;
                    Ok(Outcome::ok(witness_to_json(&w)))
                }
                Err(Error::NoApplicableCase) => Ok(Outcome::negative(json!({
                    "applicable": false,
                    "detail": Error::NoApplicableCase.to_string(),
                }))),
                Err(e) => Err(e.into()),
            }
        }
        Command::F3Product(input) => {
            let a = read_matrix(&input.input)?;
            let cert = two_xformable_factorization(&a)?;
            ensure(
                cert.is_valid() && cert.verify(&a),
                "M1·M2 does not reproduce the input or a factor is not X-formable",
            )?;
            Ok(Outcome::ok(two_factor_to_json(&cert)))
        }
        Command::Canonical(input) => {
            let a = read_matrix(&input.input)?;
            let form = frobenius_form(&a);
            ensure(form.verify(&a), "Frobenius form failed re-verification")?;
            Ok(Outcome::ok(frobenius_to_json(&form)))
        }
    }
}
