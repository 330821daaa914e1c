//! Exact linear algebra for matrices similar to X-form matrices (entries
//! allowed only on the diagonal and the anti-diagonal).

pub mod canon;
pub mod error;
pub mod exactnum;
pub mod f3product;
pub mod json;
pub mod matrix;
pub mod topology;
pub mod upoly;

pub use canon::{BlockSpec, Decomposition, FrobeniusForm, XFormCertificate};
pub use error::{Error, Result};
pub use exactnum::{Field, Fp, Rational, Scalar};
pub use f3product::TwoFactorCertificate;
pub use matrix::Matrix;
pub use topology::{BoundaryCase, WitnessElement};
pub use upoly::{Polynomial, PropertyPReport, View};
