//! Real-root counting and exact root extraction over ℚ.
//!
//! Floating-point roots from Aberth iteration only ever produce candidates.
//! A candidate is accepted after exact division, and completeness of the
//! rational root list is certified by Sturm isolation on the grid `k/L`,
//! where `L` is the leading coefficient of the primitive integer form.

use num::complex::Complex64;
use num::{BigInt, Complex, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{best_approximation, to_f64, Field, Rational, Scalar};

use super::{yun_squarefree, Polynomial};

const ABERTH_MAX_ITER: usize = 200;
const ABERTH_TOL: f64 = 1e-12;
const ABERTH_RESTARTS: usize = 4;
const IMAG_TOL: f64 = 1e-7;
const REFINE_STEPS: usize = 8;
const REFINE_BITS: u32 = 128;
const ISOLATION_STEP_LIMIT: usize = 200_000;

fn require_rational(f: &Polynomial) -> Result<()> {
    if f.field() == Field::Rational {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            expected: Field::Rational,
            found: f.field(),
        })
    }
}

fn horner_c64(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Numeric roots of a nonzero rational polynomial by Aberth–Ehrlich
/// iteration. Restarts from rotated starting circles if an attempt stalls and
/// returns the last iterate either way.
pub fn aberth_roots(f: &Polynomial) -> Vec<Complex64> {
    let f = f.monic();
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| to_f64(c.as_rational().expect("rational polynomial")))
        .collect();
    let dcoeffs: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect();

    // Fujiwara-style radius around the root centroid
    let center = -coeffs[n - 1] / n as f64;
    let radius = (1..=n)
        .map(|k| coeffs[n - k].abs().powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;

    let mut zs = Vec::new();
    for attempt in 0..ABERTH_RESTARTS {
        let offset = 0.4 + 0.7 * attempt as f64;
        zs = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset;
                Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta)
            })
            .collect();
        if aberth_iterate(&coeffs, &dcoeffs, &mut zs) {
            break;
        }
    }
    zs
}

fn aberth_iterate(coeffs: &[f64], dcoeffs: &[f64], zs: &mut [Complex64]) -> bool {
    let n = zs.len();
    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let z = zs[k];
            let pz = horner_c64(coeffs, z);
            if pz.norm() == 0.0 {
                continue;
            }
            let dpz = horner_c64(dcoeffs, z);
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z - zs[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return false;
            }
            zs[k] = z - step;
            max_step = max_step.max(step.norm() / z.norm().max(1.0));
        }
        if max_step <= ABERTH_TOL {
            return true;
        }
    }
    false
}

fn sturm_chain(f: &Polynomial) -> Vec<Polynomial> {
    let positive_scale = |p: Polynomial| match p.leading() {
        Some(Scalar::Rat(lc)) => p.scale(&Scalar::Rat(lc.abs().recip())),
        _ => p,
    };
    let mut chain = vec![positive_scale(f.clone()), positive_scale(f.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).expect("same field");
        if r.is_zero() {
            break;
        }
        chain.push(positive_scale(-&r));
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn variations_at(chain: &[Polynomial], x: &Rational) -> usize {
    sign_changes(chain.iter().map(|p| sign(&p.eval_rational(x))))
}

fn variations_at_infinity(chain: &[Polynomial], positive: bool) -> usize {
    sign_changes(chain.iter().map(|p| {
        let lc = sign(p.leading().and_then(Scalar::as_rational).expect("nonzero"));
        if positive || p.deg() % 2 == 0 {
            lc
        } else {
            -lc
        }
    }))
}

fn require_squarefree(f: &Polynomial) -> Result<()> {
    require_rational(f)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if !f.gcd(&f.derivative())?.is_one() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Number of distinct real roots of a squarefree rational polynomial.
pub fn sturm_count(f: &Polynomial) -> Result<usize> {
    require_squarefree(f)?;
    let chain = sturm_chain(f);
    Ok(variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true))
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count_in(f: &Polynomial, a: &Rational, b: &Rational) -> Result<usize> {
    require_squarefree(f)?;
    if a >= b {
        return Ok(0);
    }
    let chain = sturm_chain(f);
    Ok(variations_at(&chain, a).saturating_sub(variations_at(&chain, b)))
}

/// Strict bound on the absolute value of every complex root.
fn cauchy_bound(f: &Polynomial) -> Rational {
    let lc = f
        .leading()
        .and_then(Scalar::as_rational)
        .expect("nonzero")
        .abs();
    let max = f
        .coeffs()
        .iter()
        .take(f.deg())
        .map(|c| c.as_rational().expect("rational").abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

fn grid_candidates(x: f64, grid: &BigInt) -> Vec<Rational> {
    let Some(exact) = Rational::from_float(x) else {
        return Vec::new();
    };
    let scaled = (&exact * Rational::from_integer(grid.clone())).round();
    let mut out = vec![
        scaled / Rational::from_integer(grid.clone()),
        best_approximation(&exact, grid),
    ];
    out.dedup();
    out
}

fn deflate(r: &Polynomial, root: &Rational) -> Polynomial {
    r.exact_div(&Polynomial::linear(&Scalar::Rat(root.clone())))
        .expect("verified root")
}

/// Rational roots of a squarefree polynomial, ascending.
fn squarefree_rational_roots(g: &Polynomial) -> Result<Vec<Rational>> {
    let mut roots = Vec::new();
    let mut r = g.monic();
    if r.deg() == 0 {
        return Ok(roots);
    }
    let grid = r.primitive_integer().pop().expect("nonzero");

    if r.coeff(0).is_zero() {
        roots.push(Rational::zero());
        r = deflate(&r, &Rational::zero());
    }

    for z in aberth_roots(&r) {
        if r.deg() == 0 {
            break;
        }
        if z.im.abs() > IMAG_TOL * (1.0 + z.norm()) {
            continue;
        }
        for cand in grid_candidates(z.re, &grid) {
            if r.eval_rational(&cand).is_zero() {
                r = deflate(&r, &cand);
                roots.push(cand);
                break;
            }
        }
    }

    certify_residual(&mut r, &grid, &mut roots)?;
    roots.sort();
    Ok(roots)
}

/// Isolates the real roots of the squarefree residual `r` with Sturm
/// sequences until each interval is narrower than `1/grid`. Every rational
/// root has the form `k/grid`, so each interval holds at most one candidate,
/// which is checked exactly.
fn certify_residual(r: &mut Polynomial, grid: &BigInt, roots: &mut Vec<Rational>) -> Result<()> {
    let width = Rational::new(BigInt::one(), grid.clone());
    let grid_r = Rational::from_integer(grid.clone());
    let mut steps = 0usize;
    'outer: loop {
        if r.deg() == 0 {
            return Ok(());
        }
        let chain = sturm_chain(r);
        if variations_at_infinity(&chain, false) == variations_at_infinity(&chain, true) {
            return Ok(());
        }
        let bound = cauchy_bound(r);
        let lo = -bound.clone();
        let mut stack = vec![(
            lo.clone(),
            bound.clone(),
            variations_at(&chain, &lo),
            variations_at(&chain, &bound),
        )];
        while let Some((a, b, va, vb)) = stack.pop() {
            let count = va.saturating_sub(vb);
            if count == 0 {
                continue;
            }
            if count == 1 && &b - &a < width {
                let k = (&b * &grid_r).floor();
                let cand = k / &grid_r;
                if cand > a && r.eval_rational(&cand).is_zero() {
                    *r = deflate(r, &cand);
                    roots.push(cand);
                    continue 'outer;
                }
                continue;
            }
            steps += 1;
            if steps > ISOLATION_STEP_LIMIT {
                return Err(Error::RootSearchExhausted {
                    residual: r.clone(),
                });
            }
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            if r.eval_rational(&mid).is_zero() {
                *r = deflate(r, &mid);
                roots.push(mid);
                continue 'outer;
            }
            let vm = variations_at(&chain, &mid);
            stack.push((mid.clone(), b, vm, vb));
            stack.push((a, mid, va, vm));
        }
        return Ok(());
    }
}

/// All rational roots with multiplicities, ascending by root.
pub fn rational_roots(f: &Polynomial) -> Result<Vec<(Rational, u32)>> {
    require_rational(f)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (g, e) in yun_squarefree(f).parts {
        for root in squarefree_rational_roots(&g)? {
            out.push((root, e));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Why [`quadratic_split`] could not factor its input into rational
/// quadratics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitFailure {
    /// Odd degree with no rational root: some irreducible factor has odd
    /// degree at least 3.
    OddDegree,
    /// No quadratic factor was found numerically; the residual presumably has
    /// an irreducible factor of degree at least 3.
    Uncertified { residual: Polynomial },
}

impl SplitFailure {
    pub fn is_proven(&self) -> bool {
        matches!(self, SplitFailure::OddDegree)
    }
}

pub type QuadraticSplit = std::result::Result<Vec<Polynomial>, SplitFailure>;

/// Splits a squarefree rational polynomial without rational roots into monic
/// quadratics irreducible over ℚ. The product is verified exactly.
pub fn quadratic_split(f: &Polynomial) -> Result<QuadraticSplit> {
    require_squarefree(f)?;
    if f.deg() == 0 {
        return Ok(Ok(Vec::new()));
    }
    if !squarefree_rational_roots(f)?.is_empty() {
        return Err(Error::InvalidInput(format!("{f} has a rational root")));
    }
    if f.deg() % 2 == 1 {
        return Ok(Err(SplitFailure::OddDegree));
    }
    let mut r = f.monic();
    let mut out = Vec::new();
    while r.deg() > 2 {
        let grid = r.primitive_integer().pop().expect("nonzero");
        let approx: Vec<(Rational, Rational)> = aberth_roots(&r)
            .into_iter()
            .filter_map(|z| Some((Rational::from_float(z.re)?, Rational::from_float(z.im)?)))
            .collect();
        let found = find_quadratic(&r, &approx, &grid).or_else(|| {
            let refined: Vec<_> = approx.iter().map(|z| refine_root(&r, z)).collect();
            find_quadratic(&r, &refined, &grid)
        });
        match found {
            Some(q) => {
                r = r.exact_div(&q).expect("verified factor");
                out.push(q);
            }
            None => return Ok(Err(SplitFailure::Uncertified { residual: r })),
        }
    }
    if r.deg() == 2 {
        out.push(r);
    }
    out.sort_by(|a, b| {
        let key = |p: &Polynomial| (p.coeff(0), p.coeff(1));
        let (ka, kb) = (key(a), key(b));
        let ra = (ka.0.as_rational().cloned(), ka.1.as_rational().cloned());
        let rb = (kb.0.as_rational().cloned(), kb.1.as_rational().cloned());
        ra.cmp(&rb)
    });
    debug_assert_eq!(super::product(Field::Rational, &out), f.monic());
    Ok(Ok(out))
}

fn is_small(x: &Rational, scale: &Rational) -> bool {
    x.abs() <= scale * Rational::from_float(IMAG_TOL).expect("finite")
}

fn find_quadratic(
    r: &Polynomial,
    roots: &[(Rational, Rational)],
    grid: &BigInt,
) -> Option<Polynomial> {
    let one = Rational::one();
    let scale = |z: &(Rational, Rational)| &one + z.0.abs() + z.1.abs();
    let is_real = |z: &(Rational, Rational)| is_small(&z.1, &scale(z));
    let mut pairs = Vec::new();
    // conjugate pairs first, then pairs of real roots
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let (zi, zj) = (&roots[i], &roots[j]);
            let s = scale(zi);
            if !is_real(zi) && is_small(&(&zi.0 - &zj.0), &s) && is_small(&(&zi.1 + &zj.1), &s) {
                pairs.push((i, j));
            }
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if is_real(&roots[i]) && is_real(&roots[j]) {
                pairs.push((i, j));
            }
        }
    }
    let grid_r = Rational::from_integer(grid.clone());
    let lift = |x: &Rational| -> Vec<Rational> {
        let mut v = vec![(x * &grid_r).round() / &grid_r, best_approximation(x, grid)];
        v.dedup();
        v
    };
    for (i, j) in pairs {
        let (zi, zj) = (&roots[i], &roots[j]);
        let sum = &zi.0 + &zj.0;
        let prod = &zi.0 * &zj.0 - &zi.1 * &zj.1;
        for b in lift(&-sum) {
            for c in lift(&prod) {
                let q = Polynomial::from_rationals(vec![c.clone(), b.clone(), Rational::one()]);
                if q.divides(r) {
                    return Some(q);
                }
            }
        }
    }
    None
}

/// Newton steps in exact Gaussian-rational arithmetic, rounding to a
/// `2^-REFINE_BITS` grid after each step.
fn refine_root(f: &Polynomial, z: &(Rational, Rational)) -> (Rational, Rational) {
    let df = f.derivative();
    let to_c = |p: &Polynomial| -> Vec<Complex<Rational>> {
        p.coeffs()
            .iter()
            .map(|c| Complex::new(c.as_rational().expect("rational").clone(), Rational::zero()))
            .collect()
    };
    let (fc, dfc) = (to_c(f), to_c(&df));
    let eval = |cs: &[Complex<Rational>], z: &Complex<Rational>| {
        cs.iter().rev().fold(
            Complex::new(Rational::zero(), Rational::zero()),
            |acc, c| acc * z + c,
        )
    };
    let unit = Rational::from_integer(BigInt::one() << REFINE_BITS);
    let round = |x: &Rational| (x * &unit).round() / &unit;
    let mut cur = Complex::new(round(&z.0), round(&z.1));
    for _ in 0..REFINE_STEPS {
        let d = eval(&dfc, &cur);
        if d.re.is_zero() && d.im.is_zero() {
            break;
        }
        let step = eval(&fc, &cur) / d;
        cur = Complex::new(round(&(&cur.re - &step.re)), round(&(&cur.im - &step.im)));
    }
    (cur.re, cur.im)
}
