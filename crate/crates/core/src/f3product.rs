//! Every matrix over F₃ is a product of two X-formable matrices.

use crate::canon::{classify_xformable, frobenius_form};
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::matrix::Matrix;
use crate::upoly::{Polynomial, PropertyPReport, View};

const F3: Field = Field::Fp(3);

fn require_f3(field: Field) -> Result<()> {
    if field == F3 {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            expected: F3,
            found: field,
        })
    }
}

/// Splits `C(p) = J·H` with J the exchange matrix and H anti-triangular:
/// ones on the anti-diagonal of the leading (d−1)×(d−1) part and the
/// companion column `aᵢ = −pᵢ` read bottom-up in the last column.
pub fn companion_exchange_identity(p: &Polynomial) -> Result<(Matrix, Matrix)> {
    require_f3(p.field())?;
    if !p.is_monic() || p.deg() == 0 {
        return Err(Error::InvalidInput(format!(
            "{p} is not monic of degree at least 1"
        )));
    }
    let d = p.deg();
    let a = |i: usize| -&p.coeff(i);
    let j = Matrix::exchange(F3, d);
    let h = Matrix::from_fn(F3, d, d, |r, c| {
        if c == d - 1 {
            a(d - 1 - r)
        } else if r + c + 2 == d {
            F3.one()
        } else {
            F3.zero()
        }
    });
    Ok((j, h))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactorCertificate {
    pub m1: Matrix,
    pub m2: Matrix,
    pub reports: [PropertyPReport; 2],
    pub product_ok: bool,
}

impl TwoFactorCertificate {
    /// Recomputes the product and both classifications.
    pub fn verify(&self, a: &Matrix) -> bool {
        let reclassified = [&self.m1, &self.m2]
            .iter()
            .all(|m| classify_xformable(m, View::Fp(3)).is_ok_and(|r| r.holds));
        &self.m1 * &self.m2 == *a && reclassified
    }

    pub fn is_valid(&self) -> bool {
        self.product_ok && self.reports.iter().all(|r| r.holds)
    }
}

/// Factors `a = M1·M2` with both factors X-formable, by conjugating the
/// block-wise identity `C(Rᵢ) = Jᵢ·Hᵢ` through the Frobenius transform.
pub fn two_xformable_factorization(a: &Matrix) -> Result<TwoFactorCertificate> {
    require_f3(a.field())?;
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::SizeMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let form = frobenius_form(a);
    let mut js = Vec::new();
    let mut hs = Vec::new();
    for r in &form.invariant_factors {
        let (j, h) = companion_exchange_identity(r)?;
        js.push(j);
        hs.push(h);
    }
    let t = &form.transform;
    let t_inv = t.inverse()?;
    let m1 = &(t * &Matrix::block_diagonal(F3, &js)) * &t_inv;
    let m2 = &(t * &Matrix::block_diagonal(F3, &hs)) * &t_inv;
    let product_ok = &m1 * &m2 == *a;
    let reports = [
        classify_xformable(&m1, View::Fp(3))?,
        classify_xformable(&m2, View::Fp(3))?,
    ];
    Ok(TwoFactorCertificate {
        m1,
        m2,
        reports,
        product_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(F3, c)
    }

    #[test]
    fn identity_d2() {
        let p = f3(&[1, 0, 1]);
        let (j, h) = companion_exchange_identity(&p).unwrap();
        assert_eq!(j, Matrix::from_i64s(F3, &[[0, 1], [1, 0]]));
        assert_eq!(h, Matrix::from_i64s(F3, &[[1, 0], [0, 2]]));
        assert_eq!(&j * &h, Matrix::companion(&p));
    }

    #[test]
    fn identity_d1_and_d3() {
        let (j, h) = companion_exchange_identity(&f3(&[1, 1])).unwrap();
        assert_eq!(j, Matrix::identity(F3, 1));
        assert_eq!(h, Matrix::from_i64s(F3, &[[2]]));

        // last column (1, 1, 1)
        let p = f3(&[-1, -1, -1, 1]);
        let (j, h) = companion_exchange_identity(&p).unwrap();
        assert_eq!(&j * &h, Matrix::companion(&p));
        let bound = &f3(&[-1, 1]).pow(2) * &f3(&[1, 1]).pow(2);
        assert!(h.minpoly().divides(&bound));
    }

    #[test]
    fn factor_companion() {
        let c = Matrix::from_i64s(F3, &[[0, 2], [1, 0]]);
        let cert = two_xformable_factorization(&c).unwrap();
        assert_eq!(cert.m1, Matrix::from_i64s(F3, &[[0, 1], [1, 0]]));
        assert_eq!(cert.m2, Matrix::from_i64s(F3, &[[1, 0], [0, 2]]));
        assert!(cert.is_valid() && cert.verify(&c));
    }

    #[test]
    fn factor_identity() {
        let i = Matrix::identity(F3, 3);
        let cert = two_xformable_factorization(&i).unwrap();
        assert_eq!(cert.m1, i);
        assert_eq!(cert.m2, i);
    }

    #[test]
    fn factor_general() {
        let a = Matrix::from_i64s(
            F3,
            &[[1, 2, 0, 1], [0, 1, 1, 0], [2, 0, 0, 1], [1, 1, 1, 1]],
        );
        let cert = two_xformable_factorization(&a).unwrap();
        assert!(cert.is_valid() && cert.verify(&a));
        assert!(matches!(
            two_xformable_factorization(&Matrix::identity(Field::Rational, 2)),
            Err(Error::FieldMismatch { .. })
        ));
    }
}
