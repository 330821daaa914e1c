use crate::exactnum::{Field, Scalar};
use crate::matrix::Matrix;

use super::{fp_squarefree, Polynomial};

/// Complete factorization over F_p into distinct monic irreducibles with
/// exponents, sorted by degree and then coefficients. The leading unit is
/// dropped.
///
/// Squarefree decomposition followed by Berlekamp splitting of each part,
/// which stays deterministic because p is small enough to sweep all shifts.
pub fn fp_factor(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    assert!(
        matches!(f.field(), Field::Fp(_)),
        "fp_factor needs a prime field"
    );
    let mut out = Vec::new();
    for (g, e) in fp_squarefree(f).parts {
        for u in berlekamp(&g) {
            out.push((u, e));
        }
    }
    out.sort_by_key(|(u, _)| sort_key(u));
    out
}

fn sort_key(u: &Polynomial) -> (usize, Vec<u32>) {
    let values = u
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Fp(a) => a.value(),
            Scalar::Rat(_) => unreachable!("prime field"),
        })
        .collect();
    (u.deg(), values)
}

/// Irreducible factors of a monic squarefree polynomial.
fn berlekamp(g: &Polynomial) -> Vec<Polynomial> {
    let field = g.field();
    let d = g.deg();
    if d <= 1 {
        return if d == 1 { vec![g.clone()] } else { Vec::new() };
    }
    let p = field.characteristic();

    // row i holds X^{ip} mod g
    let xp = pow_mod(&Polynomial::x(field), p as u64, g);
    let mut rows = Vec::with_capacity(d);
    let mut cur = Polynomial::one(field);
    for _ in 0..d {
        rows.push((0..d).map(|j| cur.coeff(j)).collect::<Vec<_>>());
        cur = (&cur * &xp).rem(g).expect("same field");
    }
    // fixed points h^p = h  <=>  v (Q - I) = 0  <=>  (Q - I)^T v^T = 0
    let q_minus_i = Matrix::from_fn(field, d, d, |i, j| {
        let v = rows[j][i].clone();
        if i == j {
            &v - &field.one()
        } else {
            v
        }
    });
    let basis = q_minus_i.nullspace();
    let k = basis.len();
    if k == 1 {
        return vec![g.clone()];
    }

    let mut factors = vec![g.clone()];
    let elements = field.elements().expect("finite field");
    for v in basis {
        let h = Polynomial::new(field, v);
        if h.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for s in &elements {
                if rest.deg() <= 1 {
                    break;
                }
                let shifted = &h - &Polynomial::constant(s.clone());
                let gcd = rest.gcd(&shifted).expect("same field");
                if gcd.deg() > 0 && gcd.deg() < rest.deg() {
                    rest = rest.exact_div(&gcd).expect("gcd divides");
                    next.push(gcd);
                }
            }
            next.push(rest);
        }
        factors = next;
        if factors.len() == k {
            break;
        }
    }
    factors.into_iter().map(|u| u.monic()).collect()
}

fn pow_mod(base: &Polynomial, mut e: u64, modulus: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::one(base.field());
    let mut b = base.rem(modulus).expect("same field");
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(modulus).expect("same field");
        }
        b = (&b * &b).rem(modulus).expect("same field");
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32, c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(Field::Fp(p), c)
    }

    #[test]
    fn f3_examples() {
        assert_eq!(fp_factor(&fp(3, &[1, 0, 1])), vec![(fp(3, &[1, 0, 1]), 1)]);
        assert_eq!(
            fp_factor(&fp(3, &[0, -1, 0, 1])),
            vec![
                (fp(3, &[0, 1]), 1),
                (fp(3, &[1, 1]), 1),
                (fp(3, &[2, 1]), 1)
            ]
        );
        assert_eq!(
            fp_factor(&fp(3, &[1, 0, 2, 0, 1])),
            vec![(fp(3, &[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn x_pow_p_minus_x_splits_completely() {
        for p in [5u32, 7, 13] {
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            let factors = fp_factor(&fp(p, &c));
            assert_eq!(factors.len(), p as usize);
            assert!(factors.iter().all(|(u, e)| u.deg() == 1 && *e == 1));
        }
    }

    #[test]
    fn large_prime_product_of_quadratics() {
        // (X^2 + 5)(X^2 + 3)(X + 1)^2 over F_97; -5 is a non-residue, -3 a residue
        let a = fp(97, &[5, 0, 1]);
        let b = fp(97, &[3, 0, 1]);
        let c = fp(97, &[1, 1]);
        let f = &(&a * &b) * &c.pow(2);
        let factors = fp_factor(&f);
        let rebuilt = factors
            .iter()
            .fold(Polynomial::one(Field::Fp(97)), |acc, (u, e)| {
                &acc * &u.pow(*e)
            });
        assert_eq!(rebuilt, f);
        assert_eq!(factors.iter().map(|(u, _)| u.deg()).sum::<usize>(), 5);
    }
}
