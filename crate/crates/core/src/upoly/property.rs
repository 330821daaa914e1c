//! The factorization pattern shared by minimal polynomials of X-formable
//! matrices: distinct irreducible monic quadratics to the first power times
//! distinct linear factors to power at most two.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::Field;

use super::{fp_factor, sturm_count, yun_squarefree, Polynomial};

/// The field over which the pattern is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum View {
    Real,
    Complex,
    Fp(u32),
}

impl View {
    /// Field the input coefficients must live in.
    pub fn entry_field(self) -> Field {
        match self {
            View::Real | View::Complex => Field::Rational,
            View::Fp(p) => Field::Fp(p),
        }
    }

    pub(crate) fn check(self, field: Field) -> Result<()> {
        if self.entry_field() == field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                expected: self.entry_field(),
                found: field,
            })
        }
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            View::Real => f.write_str("real"),
            View::Complex => f.write_str("complex"),
            View::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for View {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(View::Real),
            "complex" => Ok(View::Complex),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "unknown view {s:?}; expected real, complex or fp:<p>"
                        ))
                    })?;
                Field::fp(p)?;
                Ok(View::Fp(p))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Squarefree part carrying an exponent of at least 3.
    HighMultiplicity { exponent: u32, factor: Polynomial },
    /// The doubled part has non-real roots.
    NonRealDoublePart { factor: Polynomial },
    /// Irreducible factor of degree at least 3.
    HighDegreeFactor { factor: Polynomial, exponent: u32 },
    /// Irreducible quadratic with exponent at least 2.
    RepeatedQuadratic { factor: Polynomial, exponent: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HighMultiplicity { exponent, factor } if factor.deg() == 1 => {
                write!(f, "exponent {exponent} at root {}", -&factor.coeff(0))
            }
            Violation::HighMultiplicity { exponent, factor } => {
                write!(f, "exponent {exponent} on factor {factor}")
            }
            Violation::NonRealDoublePart { factor } => {
                write!(f, "doubled factor {factor} is not real-rooted")
            }
            Violation::HighDegreeFactor { factor, exponent } => write!(
                f,
                "irreducible factor {factor} of degree {} (exponent {exponent})",
                factor.deg()
            ),
            Violation::RepeatedQuadratic { factor, exponent } => {
                write!(f, "irreducible quadratic {factor} with exponent {exponent}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyPReport {
    pub holds: bool,
    pub view: View,
    pub violation: Option<Violation>,
}

impl PropertyPReport {
    fn ok(view: View) -> Self {
        PropertyPReport {
            holds: true,
            view,
            violation: None,
        }
    }

    fn fail(view: View, violation: Violation) -> Self {
        PropertyPReport {
            holds: false,
            view,
            violation: Some(violation),
        }
    }
}

/// Decides the pattern for `f` (normalized to monic) over `view`.
///
/// Over ℂ only multiplicities matter. Over ℝ the doubled part must also be
/// real-rooted, which a Sturm count decides without factoring. Over F_p the
/// full factorization is inspected.
pub fn verifies_property_p(f: &Polynomial, view: View) -> Result<PropertyPReport> {
    view.check(f.field())?;
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let f = f.monic();
    match view {
        View::Real | View::Complex => {
            let sqf = yun_squarefree(&f);
            if let Some((g, e)) = sqf.parts.iter().find(|(_, e)| *e >= 3) {
                return Ok(PropertyPReport::fail(
                    view,
                    Violation::HighMultiplicity {
                        exponent: *e,
                        factor: g.clone(),
                    },
                ));
            }
            if view == View::Real {
                if let Some(g2) = sqf.part(2) {
                    if sturm_count(g2)? != g2.deg() {
                        return Ok(PropertyPReport::fail(
                            view,
                            Violation::NonRealDoublePart { factor: g2.clone() },
                        ));
                    }
                }
            }
            Ok(PropertyPReport::ok(view))
        }
        View::Fp(_) => {
            for (u, e) in fp_factor(&f) {
                let violation = match (u.deg(), e) {
                    (1, 1..=2) | (2, 1) => continue,
                    (1, _) => Violation::HighMultiplicity {
                        exponent: e,
                        factor: u,
                    },
                    (2, _) => Violation::RepeatedQuadratic {
                        factor: u,
                        exponent: e,
                    },
                    _ => Violation::HighDegreeFactor {
                        factor: u,
                        exponent: e,
                    },
                };
                return Ok(PropertyPReport::fail(view, violation));
            }
            Ok(PropertyPReport::ok(view))
        }
    }
}
