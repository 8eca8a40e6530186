//! Newton lifting of simple residue roots (Hensel's Lemma as an algorithm,
//! residue characteristic 0), q-th roots of 1-units, and the value
//! bookkeeping for roots.
//!
//! Lifting iterates z ← z − f(z)/f′(z) from the residue root and certifies
//! v(f(z)) ≥ target. Each doubling step at least doubles v(f(z)) within its
//! archimedean class; a target in a strictly coarser class than the first
//! correction is refused up front, mirroring the series inversion policy.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ValResult};
use crate::rational::Rat;
use crate::series::{Precision, Series};
use crate::valuation::{residue_constant, val};

/// Univariate polynomial with series coefficients, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Series>,
}

impl Poly {
    /// Builds from degree-indexed coefficients, trimming exactly-zero
    /// leading coefficients.
    pub fn new(mut coeffs: Vec<Series>) -> Result<Poly> {
        while coeffs.len() > 1 && coeffs.last().map(Series::is_exact_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Precondition("polynomial needs a coefficient".into()));
        }
        let depth = coeffs[0].depth();
        for c in &coeffs {
            if c.depth() != depth {
                return Err(Error::DepthMismatch {
                    expected: depth,
                    found: c.depth(),
                });
            }
        }
        Ok(Poly { coeffs })
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn depth(&self) -> usize {
        self.coeffs[0].depth()
    }

    /// Horner evaluation; precision propagates through the series ops.
    pub fn eval(&self, z: &Series) -> Result<Series> {
        let mut acc = Series::zero(self.depth());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z)?.add(c)?;
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly {
                coeffs: vec![Series::zero(self.depth())],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scalar_mul(&Rat::from_integer((i as i64).into())))
            .collect();
        Poly { coeffs }
    }

    /// All coefficients lie in the valuation ring. Empty coefficients with a
    /// nonnegative precision bound count as integral (their value is ≥ the
    /// bound ≥ 0).
    pub fn check_integral(&self) -> Result<()> {
        for (degree, c) in self.coeffs.iter().enumerate() {
            let ok = match val(c) {
                Ok(ValResult::Infinity) => true,
                Ok(ValResult::Finite(g)) => !g.is_negative(),
                Err(Error::IndeterminateLeading) => c
                    .prec()
                    .bound()
                    .map(|b| !b.is_negative())
                    .unwrap_or(false),
                Err(e) => return Err(e),
            };
            if !ok {
                return Err(Error::NotIntegral { degree });
            }
        }
        Ok(())
    }

    /// Residues of the coefficients at the full level: the reduction of the
    /// polynomial over Q. Requires integral coefficients with determined
    /// constant terms.
    pub fn residue_coeffs(&self) -> Result<Vec<Rat>> {
        self.coeffs.iter().map(residue_constant).collect()
    }
}

fn eval_rat(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Valuation of f at the lifted root, reported exactly when visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    /// The value is fully determined (∞ for an exact root).
    Exactly(ValResult),
    /// The evaluation vanishes below this precision bound.
    AtLeast(Exponent),
}

impl Residual {
    pub fn meets(&self, target: &Exponent) -> Result<bool> {
        match self {
            Residual::Exactly(v) => Ok(v.cmp_exponent(target)? != Ordering::Less),
            Residual::AtLeast(b) => Ok(b.compare(target)? != Ordering::Less),
        }
    }
}

impl std::fmt::Display for Residual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Residual::Exactly(v) => write!(f, "{v}"),
            Residual::AtLeast(b) => write!(f, ">={b}"),
        }
    }
}

/// Outcome of a lift: the root modulo the target, the number of Newton
/// updates, and the achieved valuation of f at the root.
#[derive(Debug, Clone)]
pub struct LiftResult {
    pub root: Series,
    pub iterations: usize,
    pub achieved: Residual,
}

const MAX_NEWTON_STEPS: usize = 64;

/// Lifts a simple residue root ζ of an integral polynomial to a root of f
/// modulo the target: Newton iteration from z₀ = ζ until v(f(z)) ≥ target.
///
/// Errors: non-integral f; ζ not a root, or not a simple root, of the
/// residue polynomial; coefficient precision below the target; a target in
/// a strictly coarser archimedean class than the first correction.
pub fn hensel_lift(f: &Poly, zeta: &Rat, target: &Exponent) -> Result<LiftResult> {
    let depth = f.depth();
    if target.depth() != depth {
        return Err(Error::DepthMismatch {
            expected: depth,
            found: target.depth(),
        });
    }
    if !target.is_positive() {
        return Err(Error::Precondition("target precision must be positive".into()));
    }
    if f.degree() == 0 {
        return Err(Error::Precondition("polynomial must have positive degree".into()));
    }
    f.check_integral()?;
    for c in f.coeffs() {
        if let Some(b) = c.prec().bound() {
            if b.compare(target)? == Ordering::Less {
                return Err(Error::PrecisionExhausted {
                    target: target.to_string(),
                });
            }
        }
    }
    let g = f.residue_coeffs()?;
    if !eval_rat(&g, zeta).is_zero() {
        return Err(Error::ResidueNotRoot {
            root: crate::rational::fmt_rat(zeta),
        });
    }
    let g_prime: Vec<Rat> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
        .collect();
    if eval_rat(&g_prime, zeta).is_zero() {
        return Err(Error::ResidueRootNotSimple {
            root: crate::rational::fmt_rat(zeta),
        });
    }

    let f_prime = f.derivative();
    let mut z = Series::constant(depth, zeta.clone());
    let mut iterations = 0usize;
    let mut first_correction: Option<Exponent> = None;

    loop {
        let fz = f.eval(&z)?;
        let visible = fz.truncate(target)?;
        if visible.no_known_terms() {
            let achieved = match fz.terms().first() {
                Some(t) => Residual::Exactly(ValResult::Finite(t.exponent.clone())),
                None => match fz.prec() {
                    Precision::Exact => Residual::Exactly(ValResult::Infinity),
                    Precision::Bound(b) => Residual::AtLeast(b.clone()),
                },
            };
            let root = if iterations == 0 {
                z
            } else {
                z.truncate(target)?
            };
            return Ok(LiftResult {
                root,
                iterations,
                achieved,
            });
        }
        let (delta_val, _) = visible.leading().map(|(g, c)| (g.clone(), c.clone()))?;
        if first_correction.is_none() {
            if delta_val.class_level() > target.class_level() {
                return Err(Error::CrossClassTarget {
                    target: target.to_string(),
                    first: delta_val.to_string(),
                });
            }
            first_correction = Some(delta_val);
        }
        if iterations >= MAX_NEWTON_STEPS {
            return Err(Error::Internal(
                "Newton iteration failed to converge within the step budget".into(),
            ));
        }
        let fpz = f_prime.eval(&z)?;
        let inv = fpz.invert(Some(target))?;
        let correction = fz.mul(&inv)?;
        z = z.sub(&correction)?.truncate(target)?;
        iterations += 1;
    }
}

/// q-th root of a 1-unit u (v(u) = 0, residue 1): the lift of 1 through
/// X^q − u. The result mod target satisfies result^q ≡ u.
pub fn unit_root(u: &Series, q: u32, target: &Exponent) -> Result<Series> {
    if q == 0 {
        return Err(Error::ZeroInteger);
    }
    match val(u)? {
        ValResult::Finite(g) if g.is_zero() => {}
        _ => return Err(Error::NotOneUnit),
    }
    if residue_constant(u)? != Rat::one() {
        return Err(Error::NotOneUnit);
    }
    if q == 1 {
        return Ok(u.clone());
    }
    let depth = u.depth();
    let mut coeffs = vec![Series::zero(depth); q as usize + 1];
    coeffs[0] = u.neg();
    coeffs[q as usize] = Series::one(depth);
    let f = Poly::new(coeffs)?;
    Ok(hensel_lift(&f, &Rat::one(), target)?.root)
}

/// Value of any q-th root of an element of value y_val: y_val / q.
pub fn root_value(y_val: &Exponent, q: u32) -> Result<Exponent> {
    if q == 0 {
        return Err(Error::ZeroInteger);
    }
    y_val.div_int(q as i64)
}

/// Membership of g in the subgroup of Q^d generated by the given elements
/// over Z. Detects the index jump a q-th root produces: y/q lies in ⟨y⟩
/// only when q divides the coefficient.
pub fn in_generated_subgroup(g: &Exponent, generators: &[Exponent]) -> Result<bool> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let d = g.depth();
    for h in generators {
        if h.depth() != d {
            return Err(Error::DepthMismatch {
                expected: d,
                found: h.depth(),
            });
        }
    }
    // common denominator: reduce to an integer lattice membership problem
    let mut denom = BigInt::one();
    for q in g
        .coords()
        .iter()
        .chain(generators.iter().flat_map(|h| h.coords().iter()))
    {
        denom = denom.lcm(q.denom());
    }
    let to_row = |e: &Exponent| -> Vec<BigInt> {
        e.coords()
            .iter()
            .map(|q| q.numer() * (&denom / q.denom()))
            .collect()
    };
    let mut rows: Vec<Vec<BigInt>> = generators.iter().map(to_row).collect();
    let mut target = to_row(g);

    // integer row echelon (Hermite-style) with simultaneous reduction of the
    // target vector, column by column
    let mut pivot_row = 0usize;
    for col in 0..d {
        // gcd out the column below pivot_row
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&r| rows[r][col].magnitude().clone());
            let (small, large) = (nonzero[0], nonzero[1]);
            let q = &rows[large][col] / &rows[small][col];
            let scaled: Vec<BigInt> = rows[small].iter().map(|x| &q * x).collect();
            for (dst, sub) in rows[large].iter_mut().zip(scaled) {
                *dst -= sub;
            }
        }
        let pivot = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero());
        match pivot {
            Some(r) => {
                rows.swap(pivot_row, r);
                let p = rows[pivot_row][col].clone();
                if (&target[col] % &p).is_zero() {
                    let q = &target[col] / &p;
                    for c in 0..d {
                        let sub = &q * &rows[pivot_row][c];
                        target[c] -= sub;
                    }
                } else {
                    return Ok(false);
                }
                pivot_row += 1;
            }
            None => {
                if !target[col].is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(target.iter().all(|x| x.is_zero()))
}
