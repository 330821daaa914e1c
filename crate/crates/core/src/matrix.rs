//! Dense exact matrices over ℚ or F_p.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Scalar};
use crate::upoly::Polynomial;

/// Row-major dense matrix. Most operations expect a square matrix; a few
/// (nullspace, products) also accept rectangular shapes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "entry outside {field}");
                data.push(v);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Rejects ragged rows and entries from another field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::SizeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        found: v.field(),
                    });
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64s<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(
            field,
            n,
            n,
            |i, j| {
                if i == j {
                    field.one()
                } else {
                    field.zero()
                }
            },
        )
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                field.zero()
            }
        })
    }

    /// Anti-identity: ones on the anti-diagonal.
    pub fn exchange(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| {
            if i + j + 1 == n {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// last column `(−a₀, …, −a_{d−1})`.
    pub fn companion(p: &Polynomial) -> Self {
        assert!(p.is_monic(), "companion needs a monic polynomial");
        let field = p.field();
        let d = p.deg();
        Self::from_fn(field, d, d, |i, j| {
            if j == d - 1 {
                -&p.coeff(i)
            } else if i == j + 1 {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn block_diagonal(field: Field, blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square(), "diagonal blocks must be square");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.field, r1 - r0, c1 - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::SizeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Self::identity(self.field, self.n());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// p(A) by Horner's scheme.
    pub fn eval_poly(&self, p: &Polynomial) -> Matrix {
        assert_eq!(p.field(), self.field, "field mismatch");
        let n = self.n();
        let mut acc = Self::zeros(self.field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// p(A)·v without forming p(A).
    pub fn apply_poly(&self, p: &Polynomial, v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = &*a + &(c * x);
            }
        }
        acc
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Av = 0}` read off the reduced row echelon form, one
    /// vector per free column. Empty iff the columns are independent.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Self::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    /// Characteristic polynomial det(XI − A) by Berkowitz's division-free
    /// recurrence, so the same code runs in any characteristic.
    pub fn charpoly(&self) -> Polynomial {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        // descending coefficients of the leading k×k principal minor
        let mut v = vec![f.one()];
        for k in 0..n {
            let a = self.get(k, k);
            let row: Vec<Scalar> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut col: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let lead = self.submatrix(0, k, 0, k);
            // Toeplitz column: 1, −a, −R·C, −R·A_k·C, …
            let mut t = Vec::with_capacity(k + 2);
            t.push(f.one());
            t.push(-a);
            for step in 0..k {
                if step > 0 {
                    col = lead.mul_vec(&col);
                }
                let dot = row
                    .iter()
                    .zip(&col)
                    .fold(f.zero(), |acc, (x, y)| &acc + &(x * y));
                t.push(-dot);
            }
            let mut next = vec![f.zero(); k + 2];
            for (i, out) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    *out = &*out + &(&t[i - j] * vj);
                }
            }
            v = next;
        }
        v.reverse();
        Polynomial::new(f, v)
    }

    /// Minimal polynomial as the lcm over the standard basis of each
    /// vector's Krylov annihilator.
    pub fn minpoly(&self) -> Polynomial {
        assert!(self.is_square(), "minpoly of a non-square matrix");
        let n = self.rows;
        let mut acc = Polynomial::one(self.field);
        for i in 0..n {
            if acc.deg() == n {
                break;
            }
            let mut e = vec![self.field.zero(); n];
            e[i] = self.field.one();
            if self.apply_poly(&acc, &e).iter().all(Scalar::is_zero) {
                continue;
            }
            let ann = self.vector_annihilator(&e);
            acc = acc.lcm(&ann).expect("same field");
        }
        acc
    }

    /// Monic polynomial p of least degree with p(A)·v = 0, found from the
    /// first linear dependency in v, Av, A²v, ….
    pub fn vector_annihilator(&self, v: &[Scalar]) -> Polynomial {
        let f = self.field;
        let n = self.rows;
        // reduced vectors with pivot index and combination coefficients
        let mut basis: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut w = v.to_vec();
        for j in 0..=n {
            let mut r = w.clone();
            let mut combo = vec![f.zero(); j + 1];
            combo[j] = f.one();
            for (pivot, b, bc) in &basis {
                if r[*pivot].is_zero() {
                    continue;
                }
                let factor = &r[*pivot] / &b[*pivot];
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x - &(&factor * y);
                }
                for (x, y) in combo.iter_mut().zip(bc) {
                    *x = &*x - &(&factor * y);
                }
            }
            match r.iter().position(|x| !x.is_zero()) {
                None => return Polynomial::new(f, combo),
                Some(pivot) => basis.push((pivot, r, combo)),
            }
            w = self.mul_vec(&w);
        }
        unreachable!("n + 1 vectors in dimension n are dependent")
    }

    /// True iff every entry off the diagonal and anti-diagonal is zero.
    pub fn is_x_shape(&self) -> bool {
        let n = self.rows;
        self.is_square()
            && (0..n).all(|i| (0..n).all(|j| j == i || j + i + 1 == n || self.get(i, j).is_zero()))
    }

    /// Largest entry in absolute value.
    pub fn inf_norm(&self) -> Result<Rational> {
        if self.field != Field::Rational {
            return Err(Error::FieldMismatch {
                expected: Field::Rational,
                found: self.field,
            });
        }
        Ok(self
            .data
            .iter()
            .filter_map(Scalar::abs)
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("compatible matrices")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_add(&rhs.scale(&-rhs.field.one()))
            .expect("compatible matrices")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("compatible matrices")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
}

/// Sum or product of two square matrices of the same size and field.
pub fn mat_arith(a: &Matrix, b: &Matrix, op: MatOp) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        a.check_compatible(b)?;
        return Err(Error::SizeMismatch(format!(
            "{}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    match op {
        MatOp::Add => a.checked_add(b),
        MatOp::Mul => a.checked_mul(b),
    }
}

/// P·B·P⁻¹
pub fn conjugate(p: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inv = p.inverse()?;
    p.checked_mul(b)?.checked_mul(&inv)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactnum::{int, rational};

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64s(Q, rows)
    }

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(Q, c)
    }

    #[test]
    fn arith_examples() {
        let j = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            mat_arith(&j, &j, MatOp::Mul).unwrap(),
            Matrix::identity(Q, 2)
        );
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(&a * &Matrix::identity(Q, 2), a);
        let f3 = Field::Fp(3);
        let j3 = Matrix::from_i64s(f3, &[[0, 1], [1, 0]]);
        let d3 = Matrix::from_i64s(f3, &[[1, 0], [0, 2]]);
        assert_eq!(
            mat_arith(&j3, &d3, MatOp::Mul).unwrap(),
            Matrix::from_i64s(f3, &[[0, 2], [1, 0]])
        );
    }

    #[test]
    fn arith_errors() {
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Q, 3);
        assert!(matches!(
            mat_arith(&a, &b, MatOp::Add),
            Err(Error::SizeMismatch(_))
        ));
        let c = Matrix::identity(Field::Fp(3), 2);
        assert!(matches!(
            mat_arith(&a, &c, MatOp::Mul),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::zeros(Q, 2, 2).nullspace().len(), 2);
        assert!(Matrix::identity(Q, 3).nullspace().is_empty());
        let ns = m(&[&[1, 1], &[1, 1]]).nullspace();
        assert_eq!(ns, vec![vec![Scalar::Rat(int(-1)), Scalar::Rat(int(1))]]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            Matrix::identity(Q, 3).inverse().unwrap(),
            Matrix::identity(Q, 3)
        );
        let j = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(j.inverse().unwrap(), j);
        let a = m(&[&[1, 1], &[0, 2]]);
        let want = Matrix::from_rows(
            Q,
            vec![
                vec![Scalar::Rat(int(1)), Scalar::Rat(rational(-1, 2))],
                vec![Scalar::Rat(int(0)), Scalar::Rat(rational(1, 2))],
            ],
        )
        .unwrap();
        assert_eq!(a.inverse().unwrap(), want);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(Matrix::identity(Q, 2).charpoly(), q(&[1, -2, 1]));
        let p = q(&[5, -1, 0, 3, 1]);
        assert_eq!(Matrix::companion(&p).charpoly(), p);
        assert_eq!(matrix_c().charpoly(), q(&[12, -10, 8, -5, 1]));
    }

    #[test]
    fn minpoly_examples() {
        let b = m(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(b.minpoly(), q(&[-1, 3, -3, 1]));
        assert_eq!(matrix_c().minpoly(), q(&[12, -10, 8, -5, 1]));
        let l = Matrix::identity(Q, 4).scale(&Scalar::Rat(int(7)));
        assert_eq!(l.minpoly(), q(&[-7, 1]));
        assert_eq!(Matrix::zeros(Q, 0, 0).minpoly(), q(&[1]));
    }

    #[test]
    fn x_shape_examples() {
        assert!(m(&[&[1, 2], &[3, 4]]).is_x_shape());
        assert!(m(&[&[1, 0, 2], &[0, 3, 0], &[4, 0, 5]]).is_x_shape());
        assert!(!m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).is_x_shape());
    }

    #[test]
    fn inf_norm_examples() {
        assert_eq!(Matrix::zeros(Q, 3, 3).inf_norm().unwrap(), int(0));
        let a = Matrix::from_rows(
            Q,
            vec![
                vec![Scalar::Rat(int(1)), Scalar::Rat(int(-3))],
                vec![Scalar::Rat(int(2)), Scalar::Rat(rational(1, 2))],
            ],
        )
        .unwrap();
        assert_eq!(a.inf_norm().unwrap(), int(3));
        assert_eq!((&a - &a).inf_norm().unwrap(), int(0));
        assert!(Matrix::identity(Field::Fp(3), 2).inf_norm().is_err());
    }

    #[test]
    fn conjugate_examples() {
        let b = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(conjugate(&Matrix::identity(Q, 2), &b).unwrap(), b);
        let p = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(conjugate(&p, &b).unwrap().charpoly(), b.charpoly());
        assert_eq!(conjugate(&m(&[&[1, 1], &[1, 1]]), &b), Err(Error::Singular));
    }

    pub(crate) fn matrix_c() -> Matrix {
        m(&[
            &[-22, 47, -19, 18],
            &[1, 3, -3, -5],
            &[14, -23, 7, -16],
            &[-15, 27, -9, 17],
        ])
    }
}
