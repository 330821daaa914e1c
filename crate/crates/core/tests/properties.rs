mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use xformlab_core::canon::{
    classify_xformable, frobenius_form, kernel_lemma_split, pairing_permutation,
    permutation_matrix, quad_cyclic_split, restrict, SmallBlock,
};
use xformlab_core::f3product::two_xformable_factorization;
use xformlab_core::json::{matrix_from_json, matrix_to_json, parse_matrix};
use xformlab_core::matrix::conjugate;
use xformlab_core::topology::interior_test;
use xformlab_core::upoly::fp_factor;
use xformlab_core::{Field, Matrix, Scalar, View};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(F3), Just(Field::Fp(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(seed in any::<u64>(), field in field_strategy(), n in 1usize..6) {
        let mut rng = rng(seed);
        let m = if field == Q {
            Matrix::from_fn(Q, n, n, |_, _| {
                Scalar::from(xformlab_core::exactnum::rational(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
            })
        } else {
            random_matrix(&mut rng, field, n, 10)
        };
        let text = matrix_to_json(&m).to_string();
        prop_assert_eq!(parse_matrix(&text).unwrap(), m.clone());
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn reordering_maps_small_blocks_to_x_shape(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = rng(seed);
        // pairs (f1, f2), (f3, f4), ... with a lone 1x1 block last for odd n
        let mut blocks: Vec<Matrix> = (0..n / 2).map(|_| random_matrix(&mut rng, Q, 2, 5)).collect();
        if n % 2 == 1 {
            blocks.push(random_matrix(&mut rng, Q, 1, 5));
        }
        let d = Matrix::block_diagonal(Q, &blocks);
        let p = permutation_matrix(Q, &pairing_permutation(n));
        let x = &(&p.transpose() * &d) * &p;
        prop_assert!(x.is_x_shape());
        prop_assert_eq!(&(&p * &x) * &p.transpose(), d);
    }

    #[test]
    fn symmetric_matrices_are_x_formable(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = random_matrix(&mut rng, Q, n, 4);
        let s = &a + &a.transpose();
        prop_assert!(classify_xformable(&s, View::Real).unwrap().holds);
    }

    #[test]
    fn diagonalizable_matrices_are_x_formable(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = rng(seed);
        let diag: Vec<Scalar> = (0..n).map(|_| Q.from_i64(rng.gen_range(-3..=3))).collect();
        let p = unimodular(&mut rng, Q, n);
        let a = conjugate(&p, &Matrix::diagonal(Q, &diag)).unwrap();
        prop_assert!(classify_xformable(&a, View::Real).unwrap().holds);
        prop_assert!(classify_xformable(&a, View::Complex).unwrap().holds);
    }

    #[test]
    fn frobenius_invariants(seed in any::<u64>(), field in field_strategy(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = if rng.gen_bool(0.5) {
            random_matrix(&mut rng, field, n, 2)
        } else {
            random_small_block_spec(&mut rng, field, n).assemble()
        };
        let form = frobenius_form(&a);
        prop_assert!(form.verify(&a));
    }

    #[test]
    fn interior_implies_x_formable(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = if rng.gen_bool(0.5) {
            random_matrix(&mut rng, Q, n, 3)
        } else {
            random_small_block_spec(&mut rng, Q, n).assemble()
        };
        let interior = interior_test(&a, View::Real).unwrap();
        if interior {
            prop_assert!(classify_xformable(&a, View::Real).unwrap().holds);
        }
        let p = unimodular(&mut rng, Q, a.rows());
        let b = conjugate(&p, &a).unwrap();
        prop_assert_eq!(interior_test(&b, View::Real).unwrap(), interior);
    }

    #[test]
    fn kernel_split_is_a_direct_sum(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_small_block_spec(&mut rng, F3, 8).assemble();
        let factors: Vec<_> = fp_factor(&a.minpoly())
            .into_iter()
            .map(|(u, e)| u.pow(e))
            .collect();
        let bases = kernel_lemma_split(&a, &factors).unwrap();
        let all: Vec<Vec<Scalar>> = bases.iter().flatten().cloned().collect();
        prop_assert_eq!(all.len(), a.rows());
        prop_assert!(Matrix::from_columns(F3, a.rows(), &all).inverse().is_ok());
        for (basis, f) in bases.iter().zip(&factors) {
            prop_assert_eq!(&restrict(&a, basis).minpoly(), f);
        }
    }

    #[test]
    fn f3_factorization_survives_similarity(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = rng(seed);
        let a = random_matrix(&mut rng, F3, n, 1);
        let p = unimodular(&mut rng, F3, n);
        for m in [a.clone(), conjugate(&p, &a).unwrap()] {
            let cert = two_xformable_factorization(&m).unwrap();
            prop_assert!(cert.is_valid() && cert.verify(&m));
        }
    }

    #[test]
    fn cyclic_split_of_conjugated_companion(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let q = poly(F3, &[1, 0, 1]);
        let p = loop {
            let p = random_matrix(&mut rng, F3, 2, 1);
            if p.inverse().is_ok() {
                break p;
            }
        };
        let a = conjugate(&p, &Matrix::companion(&q)).unwrap();
        let blocks = quad_cyclic_split(&a, &q).unwrap();
        prop_assert_eq!(blocks.len(), 1);
        let SmallBlock::Cyclic { pair, .. } = &blocks[0] else { unreachable!() };
        let basis = Matrix::from_columns(F3, 2, pair);
        prop_assert_eq!(conjugate(&basis, &Matrix::companion(&q)).unwrap(), a);
    }
}

#[test]
fn cyclic_vectors_of_diag_1_2() {
    let d = Matrix::from_i64s(Q, &[[1, 0], [0, 2]]);
    let mut cyclic = Vec::new();
    for x in -1..=1i64 {
        for y in -1..=1i64 {
            let v = vec![Q.from_i64(x), Q.from_i64(y)];
            let krylov = Matrix::from_columns(Q, 2, &[v.clone(), d.mul_vec(&v)]);
            if krylov.rank() == 2 {
                cyclic.push((x, y));
            }
        }
    }
    assert_eq!(cyclic, vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]);
    let form = frobenius_form(&d);
    let v = form.transform.column(0);
    assert_eq!(v, vec![Q.one(), Q.one()]);
}

#[test]
fn j3_specs_are_never_x_formable() {
    let mut rng = rng(11);
    for i in 0..60 {
        let field = if i % 2 == 0 { Q } else { F3 };
        let view = if field == Q {
            View::Complex
        } else {
            View::Fp(3)
        };
        let a = random_spec_with_j3(&mut rng, field, 7).assemble();
        assert!(!classify_xformable(&a, view).unwrap().holds);
    }
}
