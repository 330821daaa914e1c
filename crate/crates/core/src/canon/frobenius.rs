use crate::exactnum::{Field, Scalar};
use crate::matrix::Matrix;
use crate::upoly::Polynomial;

use super::split::restrict;

/// Rational canonical form: `A = T·diag(C(R₁), …, C(R_t))·T⁻¹` with
/// `R₁ | R₂ | … | R_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub invariant_factors: Vec<Polynomial>,
    pub transform: Matrix,
}

impl FrobeniusForm {
    pub fn companion_diagonal(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .invariant_factors
            .iter()
            .map(Matrix::companion)
            .collect();
        Matrix::block_diagonal(self.transform.field(), &blocks)
    }

    /// Checks the divisibility chain, the products and the conjugation
    /// `A·T = T·C` together with invertibility of T.
    pub fn verify(&self, a: &Matrix) -> bool {
        let chain_ok = self
            .invariant_factors
            .windows(2)
            .all(|w| w[0].divides(&w[1]));
        let prod = self
            .invariant_factors
            .iter()
            .fold(Polynomial::one(a.field()), |acc, r| &acc * r);
        let last_ok = self.invariant_factors.last() == Some(&a.minpoly());
        let t = &self.transform;
        chain_ok
            && last_ok
            && prod == a.charpoly()
            && t.inverse().is_ok()
            && a * t == t * &self.companion_diagonal()
    }
}

fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![field.zero(); n];
    e[i] = field.one();
    e
}

fn add(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

/// Strips from `f` every prime factor it shares with `h`.
fn strip(f: &Polynomial, h: &Polynomial) -> Polynomial {
    let mut f = f.clone();
    loop {
        let g = f.gcd(h).expect("same field");
        if g.deg() == 0 {
            return f;
        }
        f = f.exact_div(&g).expect("gcd divides");
    }
}

/// A vector whose annihilator is the minimal polynomial of `a`.
///
/// Standard basis vectors are merged in one at a time: given u, w with
/// annihilators pu, pw, the primes where pw has the larger exponent are
/// moved to w's side so the two parts become coprime and their sum has
/// annihilator lcm(pu, pw).
fn maximal_vector(a: &Matrix) -> (Vec<Scalar>, Polynomial) {
    let field = a.field();
    let n = a.rows();
    let mut u = unit_vector(field, n, 0);
    let mut pu = a.vector_annihilator(&u);
    for j in 1..n {
        let w = unit_vector(field, n, j);
        if a.apply_poly(&pu, &w).iter().all(Scalar::is_zero) {
            continue;
        }
        let pw = a.vector_annihilator(&w);
        let h = pw
            .exact_div(&pu.gcd(&pw).expect("same field"))
            .expect("gcd divides");
        let rest = strip(&pw, &h);
        let b = pw.exact_div(&rest).expect("divides");
        let a_part = strip(&pu, &h);
        let u2 = a.apply_poly(&pu.exact_div(&a_part).expect("divides"), &u);
        let w2 = a.apply_poly(&rest, &w);
        u = add(&u2, &w2);
        pu = &a_part * &b;
        debug_assert_eq!(a.vector_annihilator(&u), pu);
    }
    (u, pu)
}

/// Invariant factors and transform, built by peeling off a maximal cyclic
/// subspace together with an invariant complement and recursing.
pub fn frobenius_form(a: &Matrix) -> FrobeniusForm {
    assert!(a.is_square(), "frobenius_form of a non-square matrix");
    let field = a.field();
    let n = a.rows();
    if n == 0 {
        return FrobeniusForm {
            invariant_factors: Vec::new(),
            transform: Matrix::identity(field, 0),
        };
    }
    let (v, pi) = maximal_vector(a);
    let d = pi.deg();
    let mut krylov = Vec::with_capacity(d);
    let mut cur = v;
    for _ in 0..d {
        let next = a.mul_vec(&cur);
        krylov.push(cur);
        cur = next;
    }
    if d == n {
        return FrobeniusForm {
            invariant_factors: vec![pi],
            transform: Matrix::from_columns(field, n, &krylov),
        };
    }

    // complete the Krylov basis with standard vectors, lowest index first
    let mut cols = krylov.clone();
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut trial = cols.clone();
        trial.push(unit_vector(field, n, i));
        if Matrix::from_columns(field, n, &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    let m_inv = Matrix::from_columns(field, n, &cols)
        .inverse()
        .expect("basis");
    // functional vanishing on A^i v for i < d-1 and equal to 1 on A^{d-1} v
    let mut f = m_inv.row(d - 1);
    let mut functionals = Vec::with_capacity(d);
    let at = a.transpose();
    for _ in 0..d {
        let next = at.mul_vec(&f);
        functionals.push(f);
        f = next;
    }
    let complement = Matrix::from_rows(field, functionals)
        .expect("rectangular")
        .nullspace();
    debug_assert_eq!(complement.len(), n - d);

    let inner = frobenius_form(&restrict(a, &complement));
    let b = Matrix::from_columns(field, n, &complement);
    let lifted = &b * &inner.transform;
    let mut columns: Vec<Vec<Scalar>> = (0..lifted.cols()).map(|j| lifted.column(j)).collect();
    columns.extend(krylov);
    let mut invariant_factors = inner.invariant_factors;
    invariant_factors.push(pi);
    FrobeniusForm {
        invariant_factors,
        transform: Matrix::from_columns(field, n, &columns),
    }
}
