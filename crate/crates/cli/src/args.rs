use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "xformlab",
    version,
    about = "Exact X-formability decisions and certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Matrix JSON file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Args, Debug, Clone)]
pub struct ViewArg {
    /// `real`, `complex` or `fp:<p>`.
    #[arg(long, default_value = "real")]
    pub view: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal polynomial, ascending coefficients.
    Minpoly(Input),
    /// Characteristic polynomial, ascending coefficients.
    Charpoly(Input),
    /// Decide X-formability from the minimal polynomial.
    Xformable {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        view: ViewArg,
    },
    /// Build a verified similarity to an X-form matrix.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        view: ViewArg,
    },
    /// Decide whether the matrix is interior to the X-formable set.
    Interior {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        view: ViewArg,
    },
    /// Nearby matrix with squarefree characteristic polynomial.
    Density {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        view: ViewArg,
        /// Distance bound, an exact rational such as `1/1000`.
        #[arg(long)]
        eps: String,
    },
    /// Shifted product of copies of an irreducible quadratic.
    CompanionDensity {
        /// Polynomial JSON (array of coefficient strings), or `-`.
        #[arg(long, default_value = "-")]
        input: String,
        /// Number of copies.
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        n: u64,
    },
    /// Non-X-formable matrix near the one described by a block spec.
    Boundary {
        /// Block spec JSON file.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        view: ViewArg,
    },
    /// Factor a matrix over F_3 into two X-formable matrices.
    F3Product(Input),
    /// Frobenius normal form with transform.
    Canonical(Input),
}
