use thiserror::Error;

use crate::exactnum::Field;
use crate::upoly::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("{0} is not an odd prime <= 97")]
    InvalidPrime(u32),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("rational root search could not certify the residual factor {residual}")]
    RootSearchExhausted { residual: Polynomial },

    #[error("factors are not pairwise coprime")]
    NotCoprime,

    #[error("product of the factors is not the minimal polynomial")]
    NotMinpolyFactorization,

    #[error("minimal polynomial of the restriction is {found}, expected {expected}")]
    WrongMinpoly {
        expected: Polynomial,
        found: Polynomial,
    },

    #[error("quadratic {0} is reducible over the working field")]
    ReducibleQuadratic(Polynomial),

    #[error("quadratic {0} has a non-negative discriminant")]
    NonNegativeDiscriminant(Polynomial),

    #[error("input lies in the interior, no witness exists")]
    NoApplicableCase,

    #[error("wrong view: {0}")]
    WrongView(String),

    #[error("matrix is not X-formable: {0}")]
    NotXFormable(String),

    #[error("invalid block spec: {0}")]
    InvalidBlockSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at {location}: {detail}")]
    Parse { location: String, detail: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::SizeMismatch(_) => "size_mismatch",
            Error::Singular => "singular",
            Error::InvalidPrime(_) => "invalid_prime",
            Error::NotSquarefree => "not_squarefree",
            Error::RootSearchExhausted { .. } => "root_search_exhausted",
            Error::NotCoprime => "not_coprime",
            Error::NotMinpolyFactorization => "not_minpoly_factorization",
            Error::WrongMinpoly { .. } => "wrong_minpoly",
            Error::ReducibleQuadratic(_) => "reducible_quadratic",
            Error::NonNegativeDiscriminant(_) => "non_negative_discriminant",
            Error::NoApplicableCase => "no_applicable_case",
            Error::WrongView(_) => "wrong_view",
            Error::NotXFormable(_) => "not_xformable",
            Error::InvalidBlockSpec(_) => "invalid_block_spec",
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse { .. } => "parse_error",
        }
    }
}
