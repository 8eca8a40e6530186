//! The canonical valuation on the series field, its coarsenings by convex
//! subgroups, residue maps, and the decomposition of the valuation through a
//! coarsening.
//!
//! For a series a ≠ 0 the valuation is the minimal support exponent; v(0) = ∞.
//! The coarsening at level j reads off the first j coordinates of the value;
//! the residue map at level j keeps the Γ_j-supported part and re-indexes it
//! to depth d−j. The canonical support-filtering residue representative is
//! fixed so that coarser residue maps extend finer ones.

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exponent::{ConvexLevel, Exponent, ValResult};
use crate::rational::Rat;
use crate::series::Series;

/// Value of a series under the coarsening v_Γ: the projection of the full
/// value to the quotient G/Γ_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseValue {
    pub level: ConvexLevel,
    pub value: ValResult,
}

/// Valuation: minimal support exponent, ∞ for the exact zero series.
/// Errors when the series vanishes at finite precision (value unknown).
pub fn val(a: &Series) -> Result<ValResult> {
    match a.leading() {
        Ok((g, _)) => Ok(ValResult::Finite(g.clone())),
        Err(Error::DivisionByZero) => Ok(ValResult::Infinity),
        Err(e) => Err(e),
    }
}

/// Certifies v(a) ≥ bound. Uses the precision marker when no terms are known:
/// an empty series mod π has v ≥ π. Errors when the certificate cannot be
/// decided at the current precision.
pub fn val_at_least(a: &Series, bound: &Exponent) -> Result<bool> {
    match a.leading() {
        Ok((g, _)) => Ok(g.compare(bound)? != Ordering::Less),
        Err(Error::DivisionByZero) => Ok(true),
        Err(Error::IndeterminateLeading) => {
            let prec = a
                .prec()
                .bound()
                .ok_or_else(|| Error::Internal("empty bounded series without bound".into()))?;
            if prec.compare(bound)? != Ordering::Less {
                Ok(true)
            } else {
                Err(Error::IndeterminateLeading)
            }
        }
        Err(e) => Err(e),
    }
}

/// The coarsening v_Γ at level j: project the value to the first j
/// coordinates; ∞ maps to ∞.
pub fn coarsen(a: &Series, level: ConvexLevel) -> Result<CoarseValue> {
    let v = val(a)?;
    Ok(CoarseValue {
        level,
        value: v.project(level)?,
    })
}

/// Residue of a at the level-j coarsening, as a series of depth d−j.
///
/// Requires the coarse value to be ≥ 0 (a lies in the coarse valuation
/// ring). A strictly positive coarse value residues to exactly zero; coarse
/// value 0 keeps the Γ_j-supported part of a, re-indexed.
pub fn residue(a: &Series, level: ConvexLevel) -> Result<Series> {
    let cv = coarsen(a, level)?;
    let target_depth = a.depth() - level.index();
    match &cv.value {
        ValResult::Infinity => Ok(Series::zero(target_depth)),
        ValResult::Finite(g) => match g.sign() {
            Ordering::Less => Err(Error::OutsideValuationRing {
                value: g.to_string(),
            }),
            Ordering::Greater => Ok(Series::zero(target_depth)),
            Ordering::Equal => a.gamma_part(level)?.drop_prefix(level),
        },
    }
}

/// Residue at the full level Γ_d: the constant coefficient, for elements of
/// the valuation ring. Errors when that coefficient is not determined.
pub fn residue_constant(a: &Series) -> Result<Rat> {
    let v = val(a)?;
    if let ValResult::Finite(g) = &v {
        if g.is_negative() {
            return Err(Error::OutsideValuationRing {
                value: g.to_string(),
            });
        }
    }
    let zero_exp = Exponent::zero(a.depth());
    a.known_coeff(&zero_exp)?
        .ok_or(Error::IndeterminateCoefficient {
            exponent: zero_exp.to_string(),
        })
}

/// Verifies v = v_Γ ∘ v̄_Γ at the level of values: the coarse value together
/// with the value of the shifted residue reconstructs v(a).
pub fn compose_check(a: &Series, level: ConvexLevel) -> Result<bool> {
    let v = val(a)?;
    let g = match v.finite() {
        Some(g) => g.clone(),
        None => return Err(Error::Precondition("compose_check needs a nonzero value".into())),
    };
    let coarse = g.project(level)?;
    // shift by the zero-padded lift so the coarse value becomes 0
    let lift = coarse.lift_to(a.depth())?;
    let shifted = a.mul_monomial(&lift.negate(), &Rat::one())?;
    let r = residue(&shifted, level)?;
    let rv = val(&r)?;
    let tail = match rv.finite() {
        Some(t) => t.clone(),
        None => return Ok(false),
    };
    // recombine: (coarse | tail) must equal the original value
    let mut coords = coarse.coords().to_vec();
    coords.extend_from_slice(tail.coords());
    Ok(Exponent::new(coords) == g)
}

/// v(a − b): the density gap against a target bound. Errors when the
/// difference vanishes at finite precision.
pub fn density_gap(a: &Series, b: &Series) -> Result<ValResult> {
    val(&a.sub(b)?)
}

/// Ultrametric check helper: v(a+b) ≥ min(v(a), v(b)), with equality
/// guaranteed when the values differ.
pub fn ultrametric_holds(a: &Series, b: &Series) -> Result<bool> {
    let va = val(a)?;
    let vb = val(b)?;
    let vsum = val(&a.add(b)?);
    let min = if va.compare(&vb)? == Ordering::Greater {
        vb.clone()
    } else {
        va.clone()
    };
    match vsum {
        Ok(v) => {
            if v.compare(&min)? == Ordering::Less {
                return Ok(false);
            }
            if va.compare(&vb)? != Ordering::Equal && v.compare(&min)? != Ordering::Equal {
                return Ok(false);
            }
            Ok(true)
        }
        // the sum vanished at finite precision: its value is at least the
        // precision bound, which dominates min(va, vb) whenever both inputs
        // had known leading terms below it
        Err(Error::IndeterminateLeading) => Ok(va.compare(&vb)? == Ordering::Equal),
        Err(e) => Err(e),
    }
}
