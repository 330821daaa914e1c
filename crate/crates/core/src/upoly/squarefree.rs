use crate::exactnum::{Field, Scalar};

use super::Polynomial;

/// `f = unit · ∏ gᵢ^eᵢ` with monic, squarefree, pairwise coprime `gᵢ` and
/// strictly increasing exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Scalar,
    pub parts: Vec<(Polynomial, u32)>,
}

impl SquarefreeDecomposition {
    pub fn part(&self, exponent: u32) -> Option<&Polynomial> {
        self.parts
            .iter()
            .find(|(_, e)| *e == exponent)
            .map(|(g, _)| g)
    }

    pub fn max_exponent(&self) -> u32 {
        self.parts.iter().map(|(_, e)| *e).max().unwrap_or(0)
    }

    /// Multiplies the parts back out.
    pub fn reconstruct(&self) -> Polynomial {
        self.parts
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (g, e)| {
                &acc * &g.pow(*e)
            })
    }
}

/// Dispatches on the coefficient field.
pub fn squarefree(f: &Polynomial) -> SquarefreeDecomposition {
    match f.field() {
        Field::Rational => yun_squarefree(f),
        Field::Fp(_) => fp_squarefree(f),
    }
}

/// Yun's algorithm; valid in characteristic zero. Panics on the zero
/// polynomial.
pub fn yun_squarefree(f: &Polynomial) -> SquarefreeDecomposition {
    let unit = f.leading().expect("nonzero polynomial").clone();
    let f = f.monic();
    let mut parts = Vec::new();
    if f.deg() > 0 {
        let df = f.derivative();
        let a0 = f.gcd(&df).expect("same field");
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d).expect("same field");
            let next_b = b.exact_div(&a).expect("gcd divides");
            let next_c = d.exact_div(&a).expect("gcd divides");
            d = &next_c - &next_b.derivative();
            b = next_b;
            if a.deg() > 0 {
                parts.push((a, i));
            }
            i += 1;
        }
    }
    SquarefreeDecomposition { unit, parts }
}

/// Squarefree decomposition in characteristic p, peeling off p-th powers via
/// coefficient p-th roots (the identity on F_p).
pub fn fp_squarefree(f: &Polynomial) -> SquarefreeDecomposition {
    let unit = f.leading().expect("nonzero polynomial").clone();
    let p = f.field().characteristic();
    assert!(p > 0, "fp_squarefree needs a prime field");
    let mut parts = monic_sqf_char_p(&f.monic(), p);
    parts.sort_by_key(|(_, e)| *e);
    SquarefreeDecomposition { unit, parts }
}

fn monic_sqf_char_p(f: &Polynomial, p: u32) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative()).expect("same field");
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c).expect("same field");
        let z = w.exact_div(&y).expect("gcd divides");
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if c.deg() > 0 {
        let root = pth_root(&c, p);
        for (g, e) in monic_sqf_char_p(&root, p) {
            out.push((g, e * p));
        }
    }
    out
}

/// For `c(X) = Σ a_k X^{kp}` returns `Σ a_k X^k`.
fn pth_root(c: &Polynomial, p: u32) -> Polynomial {
    let coeffs = c.coeffs().iter().step_by(p as usize).cloned().collect();
    Polynomial::new(c.field(), coeffs)
}
