use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::matrix::Matrix;
use crate::upoly::{
    fp_factor, quadratic_split, rational_roots, verifies_property_p, yun_squarefree, Polynomial,
    PropertyPReport, SplitFailure, View,
};

use super::split::{
    jordan_chains_small, kernel_lemma_split, pairing_permutation, quad_cyclic_split, restrict,
};

/// Decides X-formability of a square matrix from its minimal polynomial.
pub fn classify_xformable(a: &Matrix, view: View) -> Result<PropertyPReport> {
    require_square(a)?;
    view.check(a.field())?;
    verifies_property_p(&a.minpoly(), view)
}

fn require_square(a: &Matrix) -> Result<()> {
    if a.is_square() && a.rows() > 0 {
        Ok(())
    } else {
        Err(Error::SizeMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Similarity `A = P·X·P⁻¹` with X in X-form, plus the checks that were run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XFormCertificate {
    pub p: Matrix,
    pub x: Matrix,
    pub a_reconstructed: bool,
    pub x_shape_ok: bool,
}

impl XFormCertificate {
    /// Recomputes both checks against `a`.
    pub fn verify(&self, a: &Matrix) -> bool {
        let rebuilt = self.p.inverse().ok().map(|inv| &(&self.p * &self.x) * &inv);
        rebuilt.as_ref() == Some(a) && self.x.is_x_shape()
    }

    pub fn is_valid(&self) -> bool {
        self.a_reconstructed && self.x_shape_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Certified(XFormCertificate),
    NotXFormable(PropertyPReport),
    /// The pattern holds over the view, but the canonical data needs numbers
    /// outside the entry field.
    NotConstructibleExactly {
        report: PropertyPReport,
        missing: String,
    },
}

impl Decomposition {
    pub fn certificate(&self) -> Option<&XFormCertificate> {
        match self {
            Decomposition::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// One primary component of the minimal polynomial.
#[derive(Clone, Debug)]
enum Component {
    Linear { lambda: Scalar, exponent: u32 },
    Quadratic(Polynomial),
}

impl Component {
    fn factor(&self) -> Polynomial {
        match self {
            Component::Linear { lambda, exponent } => Polynomial::linear(lambda).pow(*exponent),
            Component::Quadratic(q) => q.clone(),
        }
    }
}

fn rational_components(pi: &Polynomial) -> Result<std::result::Result<Vec<Component>, String>> {
    let mut out = Vec::new();
    for (g, e) in yun_squarefree(pi).parts {
        let roots = rational_roots(&g)?;
        let mut residual = g.clone();
        for (lambda, _) in &roots {
            let lambda = Scalar::from(lambda.clone());
            residual = residual
                .exact_div(&Polynomial::linear(&lambda))
                .expect("root divides");
            out.push(Component::Linear {
                lambda,
                exponent: e,
            });
        }
        if residual.deg() == 0 {
            continue;
        }
        if e == 2 {
            return Ok(Err(format!("double roots of {residual} are irrational")));
        }
        match quadratic_split(&residual)? {
            Ok(qs) => out.extend(qs.into_iter().map(Component::Quadratic)),
            Err(SplitFailure::OddDegree) => {
                return Ok(Err(format!(
                    "{residual} has an irreducible rational factor of odd degree at least 3"
                )))
            }
            Err(SplitFailure::Uncertified { residual }) => {
                return Ok(Err(format!(
                    "no rational quadratic factorization found for {residual}"
                )))
            }
        }
    }
    Ok(Ok(out))
}

fn fp_components(pi: &Polynomial) -> Vec<Component> {
    fp_factor(pi)
        .into_iter()
        .map(|(u, e)| {
            if u.deg() == 1 {
                Component::Linear {
                    lambda: -&u.coeff(0),
                    exponent: e,
                }
            } else {
                Component::Quadratic(u)
            }
        })
        .collect()
}

/// Builds an X-form matrix similar to `a`, or explains why none exists over
/// the entry field.
///
/// The minimal polynomial is split into primary components; each kernel is
/// decomposed into blocks of size at most 2, the blocks are paired (two-blocks
/// first, leftover one-block in the middle) and the basis is reordered so the
/// pairs land on mirrored positions.
pub fn xform_decompose(a: &Matrix, view: View) -> Result<Decomposition> {
    let report = classify_xformable(a, view)?;
    if !report.holds {
        return Ok(Decomposition::NotXFormable(report));
    }
    let field = a.field();
    let n = a.rows();
    let pi = a.minpoly();
    let components = match field {
        Field::Rational => match rational_components(&pi)? {
            Ok(c) => c,
            Err(missing) => return Ok(Decomposition::NotConstructibleExactly { report, missing }),
        },
        Field::Fp(_) => fp_components(&pi),
    };
    let factors: Vec<Polynomial> = components.iter().map(Component::factor).collect();
    let bases = kernel_lemma_split(a, &factors)?;

    let mut blocks = Vec::new();
    for (component, basis) in components.iter().zip(&bases) {
        let local = restrict(a, basis);
        let local_blocks = match component {
            Component::Linear { lambda, exponent } => {
                jordan_chains_small(&local, lambda, *exponent)?
            }
            Component::Quadratic(q) => quad_cyclic_split(&local, q)?,
        };
        let lift = |c: &[Scalar]| -> Vec<Scalar> {
            (0..n)
                .map(|i| {
                    c.iter()
                        .zip(basis)
                        .fold(field.zero(), |acc, (ci, b)| &acc + &(ci * &b[i]))
                })
                .collect()
        };
        blocks.extend(local_blocks.into_iter().map(|b| b.map_vectors(lift)));
    }

    let (pairs, singles): (Vec<_>, Vec<_>) = blocks.iter().partition(|b| b.size() == 2);
    let mut frame: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for b in pairs.iter().chain(&singles) {
        frame.extend(b.vectors().into_iter().cloned());
    }
    debug_assert_eq!(frame.len(), n);

    let order = pairing_permutation(n);
    let columns: Vec<Vec<Scalar>> = order.iter().map(|&k| frame[k].clone()).collect();
    let p = Matrix::from_columns(field, n, &columns);
    let p_inv = p.inverse()?;
    let x = &(&p_inv * a) * &p;
    let a_reconstructed = &(&p * &x) * &p_inv == *a;
    let x_shape_ok = x.is_x_shape();
    Ok(Decomposition::Certified(XFormCertificate {
        p,
        x,
        a_reconstructed,
        x_shape_ok,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::matrix_c;

    const Q: Field = Field::Rational;

    fn matrix_b() -> Matrix {
        Matrix::from_i64s(Q, &[[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    }

    #[test]
    fn classify_examples() {
        assert!(!classify_xformable(&matrix_b(), View::Real).unwrap().holds);
        assert!(
            !classify_xformable(&matrix_b(), View::Complex)
                .unwrap()
                .holds
        );
        assert!(classify_xformable(&matrix_c(), View::Real).unwrap().holds);
    }

    #[test]
    fn classify_doubled_irrational() {
        let c = Matrix::companion(&Polynomial::from_i64s(Q, &[-2, 0, 1]).pow(2));
        assert!(classify_xformable(&c, View::Real).unwrap().holds);
        assert!(classify_xformable(&c, View::Complex).unwrap().holds);
        assert!(matches!(
            xform_decompose(&c, View::Real).unwrap(),
            Decomposition::NotConstructibleExactly { .. }
        ));
    }

    #[test]
    fn decompose_matrix_c() {
        let c = matrix_c();
        let cert = xform_decompose(&c, View::Real).unwrap();
        let cert = cert.certificate().expect("certificate");
        assert!(cert.is_valid());
        assert!(cert.verify(&c));
    }

    #[test]
    fn decompose_matrix_b_fails() {
        assert!(matches!(
            xform_decompose(&matrix_b(), View::Real).unwrap(),
            Decomposition::NotXFormable(_)
        ));
    }

    #[test]
    fn decompose_mixed_blocks() {
        // J2(1) + (1) + C(X^2 - 2) + (3), conjugated
        let blocks = vec![
            Matrix::from_i64s(Q, &[[1, 1], [0, 1]]),
            Matrix::from_i64s(Q, &[[1]]),
            Matrix::companion(&Polynomial::from_i64s(Q, &[-2, 0, 1])),
            Matrix::from_i64s(Q, &[[3]]),
        ];
        let d = Matrix::block_diagonal(Q, &blocks);
        let p = Matrix::from_fn(Q, 6, 6, |i, j| {
            Q.from_i64(if i == j {
                1
            } else if j == i + 1 {
                2
            } else if i == j + 2 {
                -1
            } else {
                0
            })
        });
        let a = crate::matrix::conjugate(&p, &d).unwrap();
        let cert = xform_decompose(&a, View::Real).unwrap();
        assert!(cert.certificate().unwrap().verify(&a));
    }

    #[test]
    fn decompose_over_f3() {
        let f3 = Field::Fp(3);
        let c = Matrix::companion(&Polynomial::from_i64s(f3, &[1, 0, 1]));
        let d = Matrix::block_diagonal(f3, &[c.clone(), c, Matrix::from_i64s(f3, &[[2]])]);
        let p = Matrix::from_fn(f3, 5, 5, |i, j| {
            f3.from_i64(if i == j {
                1
            } else if j > i {
                (i + j) as i64
            } else {
                0
            })
        });
        let a = crate::matrix::conjugate(&p, &d).unwrap();
        let cert = xform_decompose(&a, View::Fp(3)).unwrap();
        assert!(cert.certificate().unwrap().verify(&a));
    }

    #[test]
    fn rejects_bad_input() {
        let r = Matrix::zeros(Q, 2, 3);
        assert!(matches!(
            classify_xformable(&r, View::Real),
            Err(Error::SizeMismatch(_))
        ));
        assert!(matches!(
            classify_xformable(&matrix_c(), View::Fp(3)),
            Err(Error::FieldMismatch { .. })
        ));
    }
}
