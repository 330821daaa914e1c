//! Deterministic inputs shared by the benchmarks.

use xformlab_core::canon::{Block, BlockSpec};
use xformlab_core::{Field, Matrix, Polynomial};

/// Dense integer matrix with small pseudo-random entries.
pub fn dense(field: Field, n: usize, salt: i64) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        let k = (i * n + j) as i64 + salt;
        field.from_i64((k * k * 7 + k * 3 + 1) % 7 - 3)
    })
}

/// Upper unitriangular conjugator with entries in {-1, 0, 1}.
pub fn conjugator(field: Field, n: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        field.from_i64(if i == j {
            1
        } else if j > i {
            ((i + 2 * j) % 3) as i64 - 1
        } else {
            0
        })
    })
}

/// Conjugated block-diagonal matrix of size `2 * pairs` mixing Jordan and
/// companion blocks.
pub fn xformable(field: Field, pairs: usize) -> Matrix {
    let q = match field {
        Field::Rational => Polynomial::from_i64s(field, &[2, 0, 1]),
        Field::Fp(_) => Polynomial::from_i64s(field, &[1, 0, 1]),
    };
    let blocks: Vec<Block> = (0..pairs)
        .map(|k| match k % 3 {
            0 => Block::Jordan {
                lambda: field.from_i64(1),
                size: 2,
            },
            1 => Block::Companion(q.clone()),
            _ => Block::Raw(Matrix::diagonal(
                field,
                &[field.from_i64(-1), field.from_i64(2)],
            )),
        })
        .collect();
    BlockSpec::new(field, blocks, Some(conjugator(field, 2 * pairs)))
        .expect("valid spec")
        .assemble()
}
