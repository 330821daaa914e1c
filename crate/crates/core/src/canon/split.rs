//! Splitting a matrix into invariant pieces whose blocks have size at most 2.

use num::Signed;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Scalar};
use crate::matrix::Matrix;
use crate::upoly::{product, Polynomial};

/// A block of size 1 or 2 together with the basis vectors that realize it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallBlock {
    /// Av = λv.
    Eigen { lambda: Scalar, vector: Vec<Scalar> },
    /// Basis `(Nw, w)` with N = A − λI, giving the block [[λ, 1], [0, λ]].
    Jordan2 {
        lambda: Scalar,
        chain: [Vec<Scalar>; 2],
    },
    /// Basis `(v, Av)`, giving the companion block of the quadratic q.
    Cyclic {
        q: Polynomial,
        pair: [Vec<Scalar>; 2],
    },
}

impl SmallBlock {
    pub fn size(&self) -> usize {
        match self {
            SmallBlock::Eigen { .. } => 1,
            _ => 2,
        }
    }

    pub fn vectors(&self) -> Vec<&Vec<Scalar>> {
        match self {
            SmallBlock::Eigen { vector, .. } => vec![vector],
            SmallBlock::Jordan2 { chain, .. } => chain.iter().collect(),
            SmallBlock::Cyclic { pair, .. } => pair.iter().collect(),
        }
    }

    /// The block in its own basis.
    pub fn matrix(&self) -> Matrix {
        match self {
            SmallBlock::Eigen { lambda, .. } => Matrix::diagonal(lambda.field(), &[lambda.clone()]),
            SmallBlock::Jordan2 { lambda, .. } => {
                let f = lambda.field();
                Matrix::from_rows(
                    f,
                    vec![
                        vec![lambda.clone(), f.one()],
                        vec![f.zero(), lambda.clone()],
                    ],
                )
                .expect("2x2")
            }
            SmallBlock::Cyclic { q, .. } => Matrix::companion(q),
        }
    }

    pub(crate) fn map_vectors(self, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> SmallBlock {
        match self {
            SmallBlock::Eigen { lambda, vector } => SmallBlock::Eigen {
                lambda,
                vector: f(&vector),
            },
            SmallBlock::Jordan2 { lambda, chain } => SmallBlock::Jordan2 {
                lambda,
                chain: [f(&chain[0]), f(&chain[1])],
            },
            SmallBlock::Cyclic { q, pair } => SmallBlock::Cyclic {
                q,
                pair: [f(&pair[0]), f(&pair[1])],
            },
        }
    }
}

/// Matrix of `a` restricted to the invariant subspace spanned by the
/// (independent) columns `basis`: the unique R with `a·B = B·R`.
pub fn restrict(a: &Matrix, basis: &[Vec<Scalar>]) -> Matrix {
    let field = a.field();
    let n = a.rows();
    let k = basis.len();
    let b = Matrix::from_columns(field, n, basis);
    let ab = a * &b;
    let aug = Matrix::from_fn(field, n, 2 * k, |i, j| {
        if j < k {
            b.get(i, j).clone()
        } else {
            ab.get(i, j - k).clone()
        }
    });
    let (r, pivots) = aug.rref();
    debug_assert!(pivots.len() >= k && pivots[..k].iter().enumerate().all(|(i, &p)| i == p));
    r.submatrix(0, k, k, 2 * k)
}

fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![field.zero(); n];
    e[i] = field.one();
    e
}

/// Greedy basis extension: tracks the span of accepted vectors.
struct SpanTracker {
    field: Field,
    n: usize,
    rows: Vec<Vec<Scalar>>,
}

impl SpanTracker {
    fn new(field: Field, n: usize) -> Self {
        SpanTracker {
            field,
            n,
            rows: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn would_grow(&self, vs: &[&Vec<Scalar>]) -> bool {
        let mut rows = self.rows.clone();
        rows.extend(vs.iter().map(|v| (*v).clone()));
        Matrix::from_rows(self.field, rows)
            .expect("rectangular")
            .rank()
            == self.rows.len() + vs.len()
    }

    fn try_add(&mut self, vs: &[&Vec<Scalar>]) -> bool {
        if self.n == 0 || !self.would_grow(vs) {
            return false;
        }
        self.rows.extend(vs.iter().map(|v| (*v).clone()));
        true
    }
}

/// Bases of `Ker fᵢ(A)` for pairwise coprime monic factors whose product is
/// the minimal polynomial of `a`.
pub fn kernel_lemma_split(a: &Matrix, factors: &[Polynomial]) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let field = a.field();
    for f in factors {
        if f.field() != field {
            return Err(Error::FieldMismatch {
                expected: field,
                found: f.field(),
            });
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !factors[i].gcd(&factors[j])?.is_one() {
                return Err(Error::NotCoprime);
            }
        }
    }
    if product(field, factors).monic() != a.minpoly() {
        return Err(Error::NotMinpolyFactorization);
    }
    Ok(factors.iter().map(|f| a.eval_poly(f).nullspace()).collect())
}

fn expect_minpoly(a: &Matrix, expected: &Polynomial) -> Result<()> {
    let found = a.minpoly();
    if &found == expected {
        Ok(())
    } else {
        Err(Error::WrongMinpoly {
            expected: expected.clone(),
            found,
        })
    }
}

/// Jordan basis of a matrix with minimal polynomial `(X − λ)^e`, `e ≤ 2`.
///
/// Chains `(Nw, w)` come from lifting a complement of Ker N (standard basis
/// vectors, lowest index first); the vectors `Nw` are then completed to a
/// basis of Ker N with eigenvectors. Two-blocks are listed first.
pub fn jordan_chains_small(a: &Matrix, lambda: &Scalar, e: u32) -> Result<Vec<SmallBlock>> {
    let field = a.field();
    let n = a.rows();
    if !(1..=2).contains(&e) {
        return Err(Error::InvalidInput(format!("exponent {e} not in 1..=2")));
    }
    expect_minpoly(a, &Polynomial::linear(lambda).pow(e))?;
    if e == 1 {
        return Ok((0..n)
            .map(|i| SmallBlock::Eigen {
                lambda: lambda.clone(),
                vector: unit_vector(field, n, i),
            })
            .collect());
    }
    let shift = Matrix::identity(field, n).scale(lambda);
    let nil = a - &shift;
    let kernel = nil.nullspace();

    let mut span = SpanTracker::new(field, n);
    for k in &kernel {
        span.try_add(&[k]);
    }
    let mut blocks = Vec::new();
    let mut images = SpanTracker::new(field, n);
    for i in 0..n {
        if span.dim() == n {
            break;
        }
        let w = unit_vector(field, n, i);
        if span.try_add(&[&w]) {
            let nw = nil.mul_vec(&w);
            images.try_add(&[&nw]);
            blocks.push(SmallBlock::Jordan2 {
                lambda: lambda.clone(),
                chain: [nw, w],
            });
        }
    }
    for k in kernel {
        if images.try_add(&[&k]) {
            blocks.push(SmallBlock::Eigen {
                lambda: lambda.clone(),
                vector: k,
            });
        }
    }
    Ok(blocks)
}

fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

/// True iff the monic quadratic has no root in its coefficient field.
pub fn quadratic_is_irreducible(q: &Polynomial) -> bool {
    match q.field() {
        Field::Rational => q
            .quadratic_discriminant()
            .and_then(|d| d.as_rational().cloned())
            .is_some_and(|d| !is_rational_square(&d)),
        Field::Fp(_) => {
            q.deg() == 2
                && q.field()
                    .elements()
                    .expect("finite")
                    .iter()
                    .all(|x| !q.eval(x).is_zero())
        }
    }
}

/// Cyclic pairs `(v, Av)` for a matrix whose minimal polynomial is the
/// irreducible quadratic `q`; every such span is invariant and meets the
/// previous ones trivially, so greedy selection over the standard basis works.
pub fn quad_cyclic_split(a: &Matrix, q: &Polynomial) -> Result<Vec<SmallBlock>> {
    let field = a.field();
    let n = a.rows();
    if q.deg() != 2 || !q.is_monic() {
        return Err(Error::InvalidInput(format!("{q} is not a monic quadratic")));
    }
    if !quadratic_is_irreducible(q) {
        return Err(Error::ReducibleQuadratic(q.clone()));
    }
    expect_minpoly(a, q)?;
    let mut span = SpanTracker::new(field, n);
    let mut blocks = Vec::new();
    for i in 0..n {
        if span.dim() == n {
            break;
        }
        let v = unit_vector(field, n, i);
        let av = a.mul_vec(&v);
        if span.try_add(&[&v, &av]) {
            blocks.push(SmallBlock::Cyclic {
                q: q.clone(),
                pair: [v, av],
            });
        }
    }
    Ok(blocks)
}

/// Reordering that turns a block-diagonal matrix with blocks of size ≤ 2,
/// paired as `(f₁, f₂), (f₃, f₄), …` with any single block last, into an
/// X-form matrix. Returns 0-based indices: every other index from 0 upward,
/// then the remaining ones downward, so `n = 4` gives `[0, 2, 3, 1]`.
pub fn pairing_permutation(n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).step_by(2).collect();
    perm.extend((1..n).step_by(2).rev());
    perm
}

/// Permutation matrix whose k-th column is `e_{perm[k]}`; conjugating by it
/// lists the old basis in the order `perm`.
pub fn permutation_matrix(field: Field, perm: &[usize]) -> Matrix {
    let n = perm.len();
    Matrix::from_fn(field, n, n, |i, j| {
        if perm[j] == i {
            field.one()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(Q, c)
    }

    #[test]
    fn kernel_split_examples() {
        let c = crate::matrix::tests::matrix_c();
        let bases = kernel_lemma_split(&c, &[q(&[-2, 1]), q(&[-3, 1]), q(&[2, 0, 1])]).unwrap();
        assert_eq!(
            bases.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 1, 2]
        );

        let d = Matrix::from_i64s(Q, &[[1, 0], [0, 2]]);
        let bases = kernel_lemma_split(&d, &[q(&[-1, 1]), q(&[-2, 1])]).unwrap();
        assert_eq!(bases.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1]);

        let bases = kernel_lemma_split(&Matrix::identity(Q, 2), &[q(&[-1, 1])]).unwrap();
        assert_eq!(bases[0].len(), 2);
    }

    #[test]
    fn kernel_split_errors() {
        let d = Matrix::from_i64s(Q, &[[1, 0], [0, 2]]);
        assert_eq!(
            kernel_lemma_split(&d, &[q(&[-1, 1]), q(&[-1, 1])]),
            Err(Error::NotCoprime)
        );
        assert_eq!(
            kernel_lemma_split(&d, &[q(&[-1, 1])]),
            Err(Error::NotMinpolyFactorization)
        );
    }

    #[test]
    fn jordan_examples() {
        let five = Q.from_i64(5);
        let j2 = Matrix::from_i64s(Q, &[[5, 1], [0, 5]]);
        let blocks = jordan_chains_small(&j2, &five, 2).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].size(), 2);

        let d = Matrix::from_i64s(Q, &[[5, 0], [0, 5]]);
        let blocks = jordan_chains_small(&d, &five, 1).unwrap();
        assert_eq!(
            blocks.iter().map(SmallBlock::size).collect::<Vec<_>>(),
            vec![1, 1]
        );

        let z = Matrix::from_i64s(Q, &[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let blocks = jordan_chains_small(&z, &Q.zero(), 2).unwrap();
        assert_eq!(
            blocks.iter().map(SmallBlock::size).collect::<Vec<_>>(),
            vec![2, 1]
        );
    }

    #[test]
    fn jordan_wrong_minpoly() {
        let j3 = Matrix::from_i64s(Q, &[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert!(matches!(
            jordan_chains_small(&j3, &Q.zero(), 2),
            Err(Error::WrongMinpoly { .. })
        ));
    }

    #[test]
    fn cyclic_examples() {
        let c = Matrix::companion(&q(&[2, 0, 1]));
        let blocks = quad_cyclic_split(&c, &q(&[2, 0, 1])).unwrap();
        assert_eq!(blocks.len(), 1);
        let SmallBlock::Cyclic { pair, .. } = &blocks[0] else {
            panic!("expected cyclic block")
        };
        assert_eq!(pair[0], unit_vector(Q, 2, 0));
        assert_eq!(pair[1], c.column(0));

        let cc = Matrix::block_diagonal(Q, &[c.clone(), c]);
        assert_eq!(quad_cyclic_split(&cc, &q(&[2, 0, 1])).unwrap().len(), 2);
    }

    #[test]
    fn cyclic_rejects_reducible() {
        let d = Matrix::from_i64s(Q, &[[1, 0], [0, -1]]);
        assert!(matches!(
            quad_cyclic_split(&d, &q(&[-1, 0, 1])),
            Err(Error::ReducibleQuadratic(_))
        ));
        let f3 = Field::Fp(3);
        let p = Polynomial::from_i64s(f3, &[-1, 0, 1]);
        assert!(!quadratic_is_irreducible(&p));
        assert!(quadratic_is_irreducible(&Polynomial::from_i64s(
            f3,
            &[1, 0, 1]
        )));
        assert!(quadratic_is_irreducible(&q(&[-2, 0, 1])));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(pairing_permutation(4), vec![0, 2, 3, 1]);
        assert_eq!(pairing_permutation(2), vec![0, 1]);
        assert_eq!(pairing_permutation(5), vec![0, 2, 4, 3, 1]);
        assert_eq!(pairing_permutation(1), vec![0]);
    }

    #[test]
    fn restrict_to_invariant_subspace() {
        let c = crate::matrix::tests::matrix_c();
        let ker = c.eval_poly(&q(&[2, 0, 1])).nullspace();
        let r = restrict(&c, &ker);
        assert_eq!(r.minpoly(), q(&[2, 0, 1]));
    }
}
