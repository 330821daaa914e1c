//! Where X-formable matrices sit inside the full matrix space: interior
//! membership, perturbations into the set, and sequences converging to a
//! boundary point from outside.

use std::fmt;

use num::{Signed, Zero};

use crate::canon::{classify_xformable, quadratic_is_irreducible, Block, BlockSpec};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Scalar};
use crate::matrix::Matrix;
use crate::upoly::{verifies_property_p, Polynomial, PropertyPReport, View};

fn require_real_or_complex(view: View) -> Result<()> {
    match view {
        View::Real | View::Complex => Ok(()),
        View::Fp(_) => Err(Error::WrongView(format!(
            "{view} is not supported here; use real or complex"
        ))),
    }
}

fn require_square_rational(a: &Matrix) -> Result<()> {
    if a.field() != Field::Rational {
        return Err(Error::FieldMismatch {
            expected: Field::Rational,
            found: a.field(),
        });
    }
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::SizeMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// True iff the characteristic polynomial has the X-formable pattern, which
/// characterizes the interior of the X-formable set.
pub fn interior_test(a: &Matrix, view: View) -> Result<bool> {
    require_real_or_complex(view)?;
    require_square_rational(a)?;
    Ok(verifies_property_p(&a.charpoly(), view)?.holds)
}

fn is_squarefree(p: &Polynomial) -> bool {
    p.gcd(&p.derivative()).expect("same field").deg() == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub b: Matrix,
    pub delta: Rational,
    /// Largest entry of `A − B` in absolute value.
    pub distance: Rational,
    pub report: PropertyPReport,
}

/// A matrix within `eps` of `a` whose characteristic polynomial is
/// squarefree, hence X-formable over both views.
///
/// Tries `B = A + δ·diag(1, …, n)` for δ = 0 and then δ = eps/(2nk),
/// k = 1, 2, …. The discriminant of χ_B is a nonzero polynomial in δ of
/// degree at most n(n−1), so one of the first n(n−1)+1 positive candidates
/// succeeds.
pub fn density_witness(a: &Matrix, eps: &Rational, view: View) -> Result<DensityWitness> {
    require_real_or_complex(view)?;
    require_square_rational(a)?;
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let n = a.rows();
    let ramp: Vec<Scalar> = (1..=n)
        .map(|i| Field::Rational.from_i64(i as i64))
        .collect();
    let ramp = Matrix::diagonal(Field::Rational, &ramp);
    let step = eps / Rational::from_integer((2 * n).into());
    let candidates = std::iter::once(Rational::zero())
        .chain((1..=n * (n - 1) + 1).map(|k| &step / Rational::from_integer(k.into())));
    for delta in candidates {
        let b = a + &ramp.scale(&Scalar::from(delta.clone()));
        if is_squarefree(&b.charpoly()) {
            let distance = (&b - a).inf_norm()?;
            let report = classify_xformable(&b, view)?;
            return Ok(DensityWitness {
                b,
                delta,
                distance,
                report,
            });
        }
    }
    unreachable!("discriminant in delta has fewer roots than candidates")
}

fn require_negative_discriminant(q: &Polynomial) -> Result<()> {
    if q.field() != Field::Rational || q.deg() != 2 || !q.is_monic() {
        return Err(Error::InvalidInput(format!(
            "{q} is not a monic rational quadratic"
        )));
    }
    let disc = q.quadratic_discriminant().expect("quadratic");
    if !disc.as_rational().expect("rational").is_negative() {
        return Err(Error::NonNegativeDiscriminant(q.clone()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionWitness {
    pub r: Polynomial,
    pub companion: Matrix,
    pub report: PropertyPReport,
    /// Largest coefficient of `R − q^r` in absolute value; also the entrywise
    /// distance between the two companion matrices.
    pub distance: Rational,
}

fn inv_square(n: u64) -> Rational {
    Rational::new(1.into(), (n * n).into())
}

/// `R = ∏_{j=1..r} q(X + j/n²)`: r distinct shifted copies of q, so C(R) is
/// X-formable and tends to C(q^r).
pub fn companion_density_witness(q: &Polynomial, r: u32, n: u64) -> Result<CompanionWitness> {
    require_negative_discriminant(q)?;
    if r == 0 || n == 0 {
        return Err(Error::InvalidInput("r and n must be positive".into()));
    }
    let h = inv_square(n);
    let mut prod = Polynomial::one(Field::Rational);
    for j in 1..=r {
        let shift = Scalar::from(&h * Rational::from_integer(j.into()));
        prod = &prod * &q.shift(&shift);
    }
    let distance = (&prod - &q.pow(r)).inf_norm();
    let report = verifies_property_p(&prod, View::Real)?;
    Ok(CompanionWitness {
        companion: Matrix::companion(&prod),
        r: prod,
        report,
        distance,
    })
}

/// A constant c with `‖R(n) − q^r‖∞ ≤ c/n²` for every n ≥ 1.
///
/// With h = 1/n², each factor is `q + jh·q' + j²h²`, so the product expands
/// as `q^r + Σ_{k≥1} h^k C_k`; since h ≤ 1 the sum of ‖C_k‖∞ works.
pub fn shift_convergence_constant(q: &Polynomial, r: u32) -> Result<Rational> {
    require_negative_discriminant(q)?;
    let field = Field::Rational;
    // coefficients in h, each a polynomial in X
    let mut acc: Vec<Polynomial> = vec![Polynomial::one(field)];
    let dq = q.derivative();
    for j in 1..=r {
        let j = Scalar::from(Rational::from_integer(j.into()));
        let factor = [q.clone(), dq.scale(&j), Polynomial::constant(&j * &j)];
        let mut next = vec![Polynomial::zero(field); acc.len() + 2];
        for (a, pa) in acc.iter().enumerate() {
            for (b, pb) in factor.iter().enumerate() {
                next[a + b] = &next[a + b] + &(pa * pb);
            }
        }
        acc = next;
    }
    debug_assert_eq!(acc[0], q.pow(r));
    Ok(acc[1..].iter().map(Polynomial::inf_norm).sum())
}

/// Which coupling pattern a boundary witness uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryCase {
    /// Two J₂(λ) blocks.
    A,
    /// Three 1×1 blocks (λ).
    B,
    /// One J₂(λ) and one 1×1 block (λ).
    C,
    /// Two 2×2 blocks sharing an irreducible characteristic polynomial S.
    D,
}

impl fmt::Display for BoundaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCase::A => "a",
            BoundaryCase::B => "b",
            BoundaryCase::C => "c",
            BoundaryCase::D => "d",
        })
    }
}

/// One term `A_n` of a sequence of non-X-formable matrices tending to the
/// X-formable matrix assembled from a block spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessElement {
    pub case: BoundaryCase,
    pub n: u64,
    pub base: Matrix,
    pub a_n: Matrix,
    pub distance: Rational,
    /// `#couplings · ‖P‖∞ · ‖P⁻¹‖∞ / n`.
    pub distance_bound: Rational,
    pub minpoly: Polynomial,
    pub report: PropertyPReport,
    /// λ for cases a to c, S for case d.
    pub target: Polynomial,
}

impl WitnessElement {
    /// `(X − λ)³ | π` for cases a to c. For case d, `S² | π`, which is
    /// `π = S²` when the spec has no other blocks.
    pub fn structure_ok(&self) -> bool {
        match self.case {
            BoundaryCase::D => self.target.pow(2).divides(&self.minpoly),
            _ => self.target.pow(3).divides(&self.minpoly),
        }
    }
}

/// Eigenvalue of a 1×1 or 2×2 Jordan-type block, if the block is one.
fn scalar_block(b: &Block) -> Option<(Scalar, usize)> {
    match b {
        Block::Jordan { lambda, size } if *size <= 2 => Some((lambda.clone(), *size)),
        Block::Companion(p) if p.deg() == 1 => Some((-&p.coeff(0), 1)),
        Block::Raw(m) if m.rows() == 1 => Some((m.get(0, 0).clone(), 1)),
        _ => None,
    }
}

fn irreducible_square_block(b: &Block) -> Option<Polynomial> {
    let s = match b {
        Block::Companion(p) if p.deg() == 2 => p.clone(),
        Block::Raw(m) if m.rows() == 2 => m.charpoly(),
        _ => return None,
    };
    quadratic_is_irreducible(&s).then_some(s)
}

struct Coupling {
    case: BoundaryCase,
    entries: Vec<(usize, usize)>,
    target: Polynomial,
}

fn find_case(spec: &BlockSpec) -> Option<Coupling> {
    let offsets = spec.offsets();
    let scalars: Vec<(usize, Scalar, usize)> = spec
        .blocks()
        .iter()
        .zip(&offsets)
        .filter_map(|(b, &off)| scalar_block(b).map(|(l, s)| (off, l, s)))
        .collect();
    let with = |lambda: &Scalar, size: usize| -> Vec<usize> {
        scalars
            .iter()
            .filter(|(_, l, s)| l == lambda && *s == size)
            .map(|(off, _, _)| *off)
            .collect()
    };
    let mut lambdas: Vec<&Scalar> = Vec::new();
    for (_, l, _) in &scalars {
        if !lambdas.contains(&l) {
            lambdas.push(l);
        }
    }

    for lambda in &lambdas {
        if let [s, t, ..] = with(lambda, 2)[..] {
            return Some(Coupling {
                case: BoundaryCase::A,
                entries: vec![(s, t), (s + 1, t + 1)],
                target: Polynomial::linear(lambda),
            });
        }
    }
    for lambda in &lambdas {
        if let ([s, ..], [t, ..]) = (&with(lambda, 2)[..], &with(lambda, 1)[..]) {
            return Some(Coupling {
                case: BoundaryCase::C,
                entries: vec![(s + 1, *t)],
                target: Polynomial::linear(lambda),
            });
        }
    }
    for lambda in &lambdas {
        if let [i, j, k, ..] = with(lambda, 1)[..] {
            return Some(Coupling {
                case: BoundaryCase::B,
                entries: vec![(i, j), (j, k)],
                target: Polynomial::linear(lambda),
            });
        }
    }
    let squares: Vec<(usize, Polynomial)> = spec
        .blocks()
        .iter()
        .zip(&offsets)
        .filter_map(|(b, &off)| irreducible_square_block(b).map(|s| (off, s)))
        .collect();
    for (i, (s, poly)) in squares.iter().enumerate() {
        if let Some((t, _)) = squares[i + 1..].iter().find(|(_, p)| p == poly) {
            return Some(Coupling {
                case: BoundaryCase::D,
                entries: vec![(*s, t + 1)],
                target: poly.clone(),
            });
        }
    }
    None
}

/// Builds `A_n` by adding 1/n couplings between blocks of the assembled
/// matrix so that it leaves the X-formable set, while `A_n → A`.
pub fn boundary_witness(spec: &BlockSpec, n: u64, view: View) -> Result<WitnessElement> {
    require_real_or_complex(view)?;
    if spec.field() != Field::Rational {
        return Err(Error::FieldMismatch {
            expected: Field::Rational,
            found: spec.field(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let base = spec.assemble();
    let chi_report = verifies_property_p(&base.charpoly(), view)?;
    let coupling = find_case(spec);
    if let (View::Complex, Some(c)) = (view, &coupling) {
        if c.case == BoundaryCase::D {
            return Err(Error::WrongView(
                "two equal 2x2 blocks split into 1x1 blocks over the complex numbers; \
                 describe them as Jordan blocks instead"
                    .into(),
            ));
        }
    }
    if chi_report.holds {
        return Err(Error::NoApplicableCase);
    }
    if !classify_xformable(&base, view)?.holds {
        return Err(Error::NotXFormable(
            "the assembled matrix is not X-formable".into(),
        ));
    }
    let coupling = coupling.ok_or_else(|| {
        Error::InvalidBlockSpec(
            "expected two J2(λ), a J2(λ) with a (λ), three (λ), or two 2x2 blocks with the same irreducible characteristic polynomial".into(),
        )
    })?;

    let eps = Scalar::from(Rational::new(1.into(), n.into()));
    let mut z = spec.block_diagonal();
    for &(i, j) in &coupling.entries {
        z.set(i, j, eps.clone());
    }
    let a_n = spec.conjugate(&z);
    let distance = (&a_n - &base).inf_norm()?;
    let scale = match spec.conjugator() {
        Some(p) => p.inf_norm()? * p.inverse()?.inf_norm()?,
        None => Rational::from_integer(1.into()),
    };
    let distance_bound = scale * Rational::new(coupling.entries.len().into(), n.into());
    let minpoly = a_n.minpoly();
    let report = verifies_property_p(&minpoly, view)?;
    Ok(WitnessElement {
        case: coupling.case,
        n,
        base,
        a_n,
        distance,
        distance_bound,
        minpoly,
        report,
        target: coupling.target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use crate::matrix::tests::matrix_c;

    const Q: Field = Field::Rational;

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(Q, c)
    }

    fn jordan(l: i64, size: usize) -> Block {
        Block::Jordan {
            lambda: Q.from_i64(l),
            size,
        }
    }

    #[test]
    fn interior_examples() {
        assert!(interior_test(&matrix_c(), View::Real).unwrap());
        let i3 = Matrix::identity(Q, 3);
        assert!(!interior_test(&i3, View::Real).unwrap());
        assert!(classify_xformable(&i3, View::Real).unwrap().holds);
        let b = Matrix::from_i64s(Q, &[[1, 1, 1], [0, 1, 1], [0, 0, 1]]);
        assert!(!interior_test(&b, View::Real).unwrap());
    }

    #[test]
    fn density_examples() {
        let b = Matrix::from_i64s(Q, &[[1, 1, 1], [0, 1, 1], [0, 0, 1]]);
        let eps = rational(1, 10);
        let w = density_witness(&b, &eps, View::Real).unwrap();
        assert!(w.distance < eps);
        assert!(w.delta.is_positive());
        assert!(w.report.holds);

        let c = matrix_c();
        let w = density_witness(&c, &eps, View::Real).unwrap();
        assert!(w.delta.is_zero());
        assert_eq!(w.b, c);

        let z = Matrix::zeros(Q, 2, 2);
        let w = density_witness(&z, &rational(1, 1), View::Complex).unwrap();
        assert_eq!(
            w.b,
            Matrix::diagonal(
                Q,
                &[w.delta.clone().into(), (&w.delta * rational(2, 1)).into()]
            )
        );
    }

    #[test]
    fn companion_density_examples() {
        let q2 = q(&[2, 0, 1]);
        let w = companion_density_witness(&q2, 2, 2).unwrap();
        let f1 = q2.shift(&rational(1, 4).into());
        let f2 = q2.shift(&rational(1, 2).into());
        assert_eq!(w.r, &f1 * &f2);
        assert!(w.report.holds);
        assert!(matches!(
            companion_density_witness(&q(&[-2, 0, 1]), 1, 1),
            Err(Error::NonNegativeDiscriminant(_))
        ));
        let c = shift_convergence_constant(&q2, 2).unwrap();
        for n in [1u64, 2, 4, 8, 16] {
            let w = companion_density_witness(&q2, 2, n).unwrap();
            assert!(w.distance <= &c * inv_square(n));
        }
    }

    #[test]
    fn boundary_case_a() {
        let spec = BlockSpec::new(Q, vec![jordan(0, 2), jordan(0, 2)], None).unwrap();
        let w = boundary_witness(&spec, 5, View::Real).unwrap();
        assert_eq!(w.case, BoundaryCase::A);
        let fifth = Scalar::from(rational(1, 5));
        let z = Matrix::from_rows(
            Q,
            vec![
                vec![Q.zero(), Q.one(), fifth.clone(), Q.zero()],
                vec![Q.zero(), Q.zero(), Q.zero(), fifth],
                vec![Q.zero(), Q.zero(), Q.zero(), Q.one()],
                vec![Q.zero(); 4],
            ],
        )
        .unwrap();
        assert_eq!(w.a_n, z);
        assert_eq!(w.minpoly, q(&[0, 0, 0, 1]));
        assert!(w.structure_ok());
        assert!(!w.report.holds);
    }

    #[test]
    fn boundary_case_b_and_c() {
        let spec = BlockSpec::new(Q, vec![jordan(1, 1), jordan(1, 1), jordan(1, 1)], None).unwrap();
        let w = boundary_witness(&spec, 3, View::Real).unwrap();
        assert_eq!(w.case, BoundaryCase::B);
        assert_eq!(w.minpoly, q(&[-1, 1]).pow(3));

        let spec = BlockSpec::new(Q, vec![jordan(2, 2), jordan(2, 1)], None).unwrap();
        let w = boundary_witness(&spec, 7, View::Complex).unwrap();
        assert_eq!(w.case, BoundaryCase::C);
        assert!(w.structure_ok());
    }

    #[test]
    fn boundary_case_d() {
        let s = q(&[1, 0, 1]);
        let spec = BlockSpec::new(
            Q,
            vec![Block::Companion(s.clone()), Block::Companion(s.clone())],
            None,
        )
        .unwrap();
        let w = boundary_witness(&spec, 2, View::Real).unwrap();
        assert_eq!(w.case, BoundaryCase::D);
        assert_eq!(*w.a_n.get(0, 3), rational(1, 2).into());
        assert_eq!(w.minpoly, s.pow(2));
        assert!(matches!(
            boundary_witness(&spec, 2, View::Complex),
            Err(Error::WrongView(_))
        ));

        let spec = BlockSpec::new(
            Q,
            vec![
                Block::Companion(s.clone()),
                Block::Companion(s.clone()),
                jordan(5, 1),
            ],
            None,
        )
        .unwrap();
        let w = boundary_witness(&spec, 3, View::Real).unwrap();
        assert!(w.structure_ok() && !w.report.holds);
        assert_eq!(w.minpoly, &s.pow(2) * &q(&[-5, 1]));
    }

    #[test]
    fn boundary_errors() {
        let spec = BlockSpec::new(Q, vec![jordan(0, 2), jordan(1, 1)], None).unwrap();
        assert_eq!(
            boundary_witness(&spec, 1, View::Real),
            Err(Error::NoApplicableCase)
        );
        let spec = BlockSpec::new(Q, vec![jordan(0, 3)], None).unwrap();
        assert!(matches!(
            boundary_witness(&spec, 1, View::Real),
            Err(Error::NotXFormable(_))
        ));
    }

    #[test]
    fn boundary_conjugated_distances_decrease() {
        let p = Matrix::from_i64s(Q, &[[1, 2, 0, 0], [0, 1, 0, 3], [0, 0, 1, 0], [1, 0, 0, 1]]);
        let spec = BlockSpec::new(Q, vec![jordan(3, 2), jordan(3, 2)], Some(p)).unwrap();
        let ws: Vec<_> = [1u64, 10, 100]
            .iter()
            .map(|&n| boundary_witness(&spec, n, View::Real).unwrap())
            .collect();
        for w in &ws {
            assert!(w.structure_ok());
            assert!(w.distance <= w.distance_bound);
        }
        assert!(ws.windows(2).all(|p| p[1].distance < p[0].distance));
    }
}
