#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use xformlab_core::canon::{Block, BlockSpec};
use xformlab_core::{Field, Matrix, Polynomial};

pub use rand::SeedableRng;

pub const Q: Field = Field::Rational;
pub const F3: Field = Field::Fp(3);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(field: Field, c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(field, c)
}

pub fn matrix_b() -> Matrix {
    Matrix::from_i64s(Q, &[[1, 1, 1], [0, 1, 1], [0, 0, 1]])
}

pub fn matrix_c() -> Matrix {
    Matrix::from_i64s(
        Q,
        &[
            [-22, 47, -19, 18],
            [1, 3, -3, -5],
            [14, -23, 7, -16],
            [-15, 27, -9, 17],
        ],
    )
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, n: usize, bound: i64) -> Matrix {
    Matrix::from_fn(field, n, n, |_, _| {
        field.from_i64(rng.gen_range(-bound..=bound))
    })
}

/// Product of random elementary row operations with integer multipliers,
/// so the determinant is ±1 in every field.
pub fn unimodular(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    let mut p = Matrix::identity(field, n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = field.from_i64(rng.gen_range(-2..=2));
        for col in 0..n {
            let v = p.get(i, col) + &(&c * p.get(j, col));
            p.set(i, col, v);
        }
    }
    p
}

const F3_IRREDUCIBLE: [[i64; 3]; 3] = [[1, 0, 1], [2, 1, 1], [2, 2, 1]];

/// Random block of size at most 2 (size at most `room`).
pub fn small_block(rng: &mut ChaCha8Rng, field: Field, room: usize) -> Block {
    let kind = if room < 2 { 0 } else { rng.gen_range(0..4) };
    let lambda = field.from_i64(rng.gen_range(-2..=2));
    match kind {
        0 => Block::Jordan { lambda, size: 1 },
        1 => Block::Jordan { lambda, size: 2 },
        2 => {
            let q = match field {
                Field::Rational => {
                    let b = rng.gen_range(-2i64..=2);
                    // even b with c = -2 has irrational real roots
                    let c = if b % 2 == 0 && rng.gen_bool(0.2) {
                        -2
                    } else {
                        b * b / 4 + rng.gen_range(1..=3)
                    };
                    poly(field, &[c, b, 1])
                }
                Field::Fp(_) => poly(field, &F3_IRREDUCIBLE[rng.gen_range(0..3)]),
            };
            Block::Companion(q)
        }
        _ => {
            let mu = field.from_i64(rng.gen_range(-2..=2));
            Block::Raw(Matrix::diagonal(field, &[lambda, mu]))
        }
    }
}

/// Conjugated block-diagonal matrix with every block of size at most 2.
pub fn random_small_block_spec(rng: &mut ChaCha8Rng, field: Field, max_n: usize) -> BlockSpec {
    let n = rng.gen_range(1..=max_n);
    let mut blocks = Vec::new();
    let mut size = 0;
    while size < n {
        let b = small_block(rng, field, n - size);
        size += b.size();
        blocks.push(b);
    }
    let p = unimodular(rng, field, size);
    BlockSpec::new(field, blocks, Some(p)).expect("valid spec")
}

/// Like [`random_small_block_spec`] but with one Jordan block of size 3.
pub fn random_spec_with_j3(rng: &mut ChaCha8Rng, field: Field, max_n: usize) -> BlockSpec {
    let n = rng.gen_range(3..=max_n);
    let mut blocks = vec![Block::Jordan {
        lambda: field.from_i64(rng.gen_range(-2..=2)),
        size: 3,
    }];
    let mut size = 3;
    while size < n {
        let b = small_block(rng, field, n - size);
        size += b.size();
        blocks.push(b);
    }
    let at = rng.gen_range(0..blocks.len());
    blocks.swap(0, at);
    let p = unimodular(rng, field, size);
    BlockSpec::new(field, blocks, Some(p)).expect("valid spec")
}
