//! The compatible ordering on the series field, the floor map into
//! I = Q[G^{<0}] + Z, and the checkers for integer parts, weak and additive
//! complements, the level-restricted subrings R_Γ, and the coarse-residue
//! density construction.
//!
//! The ordering is the leading-coefficient lift of the order on Q: a series
//! is positive iff its leading coefficient is. t^g with g > 0 is a positive
//! infinitesimal, and 0 < x ≤ y forces v(x) ≥ v(y).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exponent::{ConvexLevel, Exponent, ValResult};
use crate::rational::Rat;
use crate::report::{ComplementReport, Witness};
use crate::series::{Precision, Series};
use crate::valuation::{val, val_at_least};

/// Sign of a series under the compatible ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Sign of the leading coefficient; zero only for the exact zero series.
/// Errors when the series vanishes at finite precision.
pub fn sign(a: &Series) -> Result<Sign> {
    match a.leading() {
        Ok((_, c)) => Ok(if c.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }),
        Err(Error::DivisionByZero) => Ok(Sign::Zero),
        Err(Error::IndeterminateLeading) => Err(Error::IndeterminateSign),
        Err(e) => Err(e),
    }
}

/// Total order extending the order on Q: compare(a, b) = sign(a − b).
pub fn compare(a: &Series, b: &Series) -> Result<Ordering> {
    Ok(match sign(&a.sub(b)?)? {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    })
}

/// Element of the integer part I = Q[G^{<0}] + Z: a purely negative exact
/// series plus an integer constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPartElement {
    neg: Series,
    constant: BigInt,
}

impl IntegerPartElement {
    /// Builds from a purely-negative exact series and an integer.
    pub fn new(neg: Series, constant: BigInt) -> Result<Self> {
        if !neg.is_exact() {
            return Err(Error::Precondition(
                "integer-part element needs an exact negative part".into(),
            ));
        }
        for t in neg.terms() {
            if !t.exponent.is_negative() {
                return Err(Error::Precondition(
                    "integer-part element has a non-negative exponent in its negative part".into(),
                ));
            }
        }
        Ok(IntegerPartElement { neg, constant })
    }

    pub fn neg_part(&self) -> &Series {
        &self.neg
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn to_series(&self) -> Series {
        self.neg
            .add(&Series::constant(
                self.neg.depth(),
                Rat::from_integer(self.constant.clone()),
            ))
            .expect("depths agree by construction")
    }
}

/// The strictly-negative-exponent part of a, as an exact series. Requires
/// the negative support to be fully known: precision ≥ 0 or exact.
pub fn neg_part(a: &Series) -> Result<Series> {
    if let Precision::Bound(b) = a.prec() {
        if b.is_negative() {
            return Err(Error::NegativeSupportUnknown {
                prec: b.to_string(),
            });
        }
    }
    let pairs = a
        .terms()
        .iter()
        .filter(|t| t.exponent.is_negative())
        .map(|t| (t.exponent.clone(), t.coeff.clone()))
        .collect();
    Series::from_terms(a.depth(), pairs, Precision::Exact)
}

/// The strictly-positive-exponent tail of a, keeping the precision marker.
fn positive_tail(a: &Series) -> Result<Series> {
    let pairs = a
        .terms()
        .iter()
        .filter(|t| t.exponent.is_positive())
        .map(|t| (t.exponent.clone(), t.coeff.clone()))
        .collect();
    Series::from_terms(a.depth(), pairs, a.prec().clone())
}

/// Floor into I = Q[G^{<0}] + Z: the unique r ∈ I with r ≤ a < r + 1.
///
/// r is the negative part of a plus an integer n. When the constant
/// coefficient of a is itself an integer, n is that integer minus one
/// exactly when the strictly-positive tail is negative; the tail sign must
/// then be determined (exactly zero or known leading term).
pub fn floor(a: &Series) -> Result<IntegerPartElement> {
    let zero_exp = Exponent::zero(a.depth());
    let c0 = a
        .known_coeff(&zero_exp)?
        .ok_or(Error::IndeterminateCoefficient {
            exponent: zero_exp.to_string(),
        })?;
    let neg = neg_part(a)?;
    let n = if c0.is_integer() {
        let tail = positive_tail(a)?;
        match sign(&tail) {
            Ok(Sign::Negative) => c0.to_integer() - 1,
            Ok(_) => c0.to_integer(),
            Err(Error::IndeterminateSign) => return Err(Error::IndeterminateTailSign),
            Err(e) => return Err(e),
        }
    } else {
        c0.floor().to_integer()
    };
    IntegerPartElement::new(neg, n)
}

fn witness(series: &Series, detail: String) -> Witness {
    Witness {
        sample: series.to_string(),
        detail,
    }
}

/// Checks the integer-part axiom on samples: r = floor(a) satisfies
/// r ≤ a < r + 1 with r ∈ I, the window is unique among the neighbours
/// r ± 1, and positive elements of I are ≥ 1.
pub fn check_integer_part(samples: &[Series]) -> ComplementReport {
    let mut report = ComplementReport::new("integer-part: r <= a < r+1, unique", samples.len());
    for a in samples {
        let r = match floor(a) {
            Ok(r) => r,
            Err(e) => {
                report.failures.push(witness(a, format!("floor failed: {e}")));
                continue;
            }
        };
        let rs = r.to_series();
        let one = Series::one(a.depth());
        let r_plus = rs.add(&one).unwrap();
        let lower = compare(&rs, a);
        let upper = compare(a, &r_plus);
        match (lower, upper) {
            (Ok(lo), Ok(up)) => {
                if lo == Ordering::Greater {
                    report.failures.push(witness(a, format!("floor {rs} exceeds the sample")));
                }
                if up != Ordering::Less {
                    report
                        .failures
                        .push(witness(a, format!("sample is not below floor+1 = {r_plus}")));
                }
                // uniqueness: the window of r+1 misses a on the lower side,
                // the window of r−1 misses a on the upper side
                let r_minus = rs.sub(&one).unwrap();
                if compare(&r_plus, a).map(|o| o != Ordering::Greater).unwrap_or(false) {
                    report
                        .failures
                        .push(witness(a, "floor+1 also satisfies the lower bound".into()));
                }
                if compare(a, &rs)
                    .map(|o| o == Ordering::Less)
                    .unwrap_or(false)
                {
                    report
                        .failures
                        .push(witness(a, format!("(r−1)+1 = {} exceeds the sample", r_minus)));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                report
                    .failures
                    .push(witness(a, format!("window comparison failed: {e}")));
            }
        }
        // 1 is the least positive element of I on samples
        if sign(&rs).map(|s| s == Sign::Positive).unwrap_or(false)
            && compare(&rs, &one).map(|o| o == Ordering::Less).unwrap_or(true)
        {
            report
                .failures
                .push(witness(&rs, "positive integer-part element below 1".into()));
        }
    }
    report
}

/// Checks the weak-complement axioms: ring samples have vr ≤ 0 (or r = 0),
/// and floor witnesses field samples into the valuation ring: v(a − r) ≥ 0.
pub fn check_weak_complement(ring_samples: &[Series], field_samples: &[Series]) -> ComplementReport {
    let mut report = ComplementReport::new(
        "weak complement: vr <= 0 on I; v(a - floor(a)) >= 0",
        ring_samples.len() + field_samples.len(),
    );
    for r in ring_samples {
        match val(r) {
            Ok(ValResult::Infinity) => {}
            Ok(ValResult::Finite(g)) => {
                if g.is_positive() {
                    report
                        .failures
                        .push(witness(r, format!("ring sample has positive value {g}")));
                }
            }
            Err(e) => report.failures.push(witness(r, format!("value failed: {e}"))),
        }
        // 1 is the least positive element: nothing sits strictly inside (0, 1)
        if matches!(sign(r), Ok(Sign::Positive))
            && compare(r, &Series::one(r.depth()))
                .map(|o| o == Ordering::Less)
                .unwrap_or(false)
        {
            report
                .failures
                .push(witness(r, "positive ring sample strictly below 1".into()));
        }
    }
    for a in field_samples {
        let r = match floor(a) {
            Ok(r) => r.to_series(),
            Err(e) => {
                report.failures.push(witness(a, format!("floor failed: {e}")));
                continue;
            }
        };
        let gap = a.sub(&r).unwrap();
        match val_at_least(&gap, &Exponent::zero(a.depth())) {
            Ok(true) => {}
            Ok(false) => report
                .failures
                .push(witness(a, format!("v(a − r) < 0 for r = {r}"))),
            Err(e) => report
                .failures
                .push(witness(a, format!("gap valuation failed: {e}"))),
        }
    }
    report
}

/// Checks the additive-complement axioms for Q[G^{<0}]: nonzero ring samples
/// have v < 0 (trivial intersection with the valuation ring), and every
/// field sample splits as negative part + valuation-ring remainder.
pub fn check_additive_complement(
    ring_samples: &[Series],
    field_samples: &[Series],
) -> ComplementReport {
    let mut report = ComplementReport::new(
        "additive complement: v < 0 on Neg; a = neg(a) + O-part",
        ring_samples.len() + field_samples.len(),
    );
    for r in ring_samples {
        match val(r) {
            Ok(ValResult::Infinity) => {}
            Ok(ValResult::Finite(g)) => {
                if !g.is_negative() {
                    report.failures.push(witness(
                        r,
                        format!("nonzero ring sample meets the valuation ring: v = {g}"),
                    ));
                }
            }
            Err(e) => report.failures.push(witness(r, format!("value failed: {e}"))),
        }
    }
    for a in field_samples {
        let neg = match neg_part(a) {
            Ok(n) => n,
            Err(e) => {
                report
                    .failures
                    .push(witness(a, format!("negative part failed: {e}")));
                continue;
            }
        };
        if neg.terms().iter().any(|t| !t.exponent.is_negative()) || !neg.is_exact() {
            report
                .failures
                .push(witness(a, "negative part is not a Neg element".into()));
        }
        let rest = a.sub(&neg).unwrap();
        match val_at_least(&rest, &Exponent::zero(a.depth())) {
            Ok(true) => {}
            Ok(false) => report
                .failures
                .push(witness(a, format!("remainder {rest} has negative value"))),
            Err(e) => report
                .failures
                .push(witness(a, format!("remainder valuation failed: {e}"))),
        }
    }
    report
}

/// The level-restricted subring filter: keeps the samples with value in
/// Γ_j ∪ {∞}. Samples whose value cannot be determined are dropped.
pub fn r_gamma_filter(samples: &[Series], level: ConvexLevel) -> Vec<Series> {
    samples
        .iter()
        .filter(|r| {
            val(r)
                .and_then(|v| v.in_subgroup(level))
                .unwrap_or(false)
        })
        .cloned()
        .collect()
}

/// Closure and value-coverage checks for the level-restricted subring:
/// pairwise sums, differences and products of kept elements keep their
/// values in Γ_j ∪ {∞} with v ≤ 0, and every sampled negative γ ∈ Γ_j is
/// attained as the value of a ring element.
pub fn check_r_gamma(
    samples: &[Series],
    level: ConvexLevel,
    coverage: &[Exponent],
) -> ComplementReport {
    let kept = r_gamma_filter(samples, level);
    let mut report = ComplementReport::new(
        "level-restricted subring: closure and value coverage",
        kept.len() + coverage.len(),
    );
    let in_ring = |s: &Series| -> std::result::Result<(), String> {
        match val(s) {
            Ok(ValResult::Infinity) => Ok(()),
            Ok(ValResult::Finite(g)) => {
                if g.is_positive() {
                    return Err(format!("value {g} is positive"));
                }
                match g.in_subgroup(level) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(format!("value {g} escapes the subgroup")),
                    Err(e) => Err(e.to_string()),
                }
            }
            Err(e) => Err(e.to_string()),
        }
    };
    for (i, r) in kept.iter().enumerate() {
        for s in kept.iter().skip(i) {
            for (op, name) in [
                (r.add(s), "sum"),
                (r.sub(s), "difference"),
                (r.mul(s), "product"),
            ] {
                match op {
                    Ok(c) => {
                        if let Err(msg) = in_ring(&c) {
                            report
                                .failures
                                .push(witness(&c, format!("{name} escapes the subring: {msg}")));
                        }
                    }
                    Err(e) => report
                        .failures
                        .push(witness(r, format!("{name} failed: {e}"))),
                }
            }
        }
    }
    for gamma in coverage {
        let ok = gamma
            .in_subgroup(level)
            .map(|b| b && gamma.is_negative())
            .unwrap_or(false);
        if !ok {
            report.failures.push(Witness {
                sample: gamma.to_string(),
                detail: "coverage target is not a negative subgroup element".into(),
            });
            continue;
        }
        // the monic monomial of value γ witnesses γ ∈ vR_Γ
        let r = Series::monomial(gamma.clone(), Rat::one());
        match val(&r) {
            Ok(ValResult::Finite(g)) if g == *gamma => {}
            other => report.failures.push(Witness {
                sample: gamma.to_string(),
                detail: format!("coverage witness has value {other:?}"),
            }),
        }
    }
    report
}

/// Coarse-residue density: for a with value in Γ_j and a bound γ ∈ Γ_j with
/// γ > v(a) > ... constructs b supported in Γ_j with v(a − b) ≥ γ.
///
/// Follows the witness construction: c = t^{−γ}, r = floor(a·c) ∈ R with
/// v(ac − r) ≥ 0, and b = r/c = r·t^γ.
pub fn embdsrf_density(a: &Series, gamma: &Exponent, level: ConvexLevel) -> Result<Series> {
    let va = val(a)?;
    match &va {
        ValResult::Infinity => {}
        ValResult::Finite(g) => {
            if !g.in_subgroup(level)? {
                return Err(Error::Precondition(format!(
                    "value {g} does not lie in the level-{level} subgroup"
                )));
            }
        }
    }
    if !gamma.in_subgroup(level)? || !gamma.is_positive() {
        return Err(Error::Precondition(format!(
            "bound {gamma} must be positive in the level-{level} subgroup"
        )));
    }
    if va.cmp_exponent(gamma)? != Ordering::Less {
        return Err(Error::Precondition(format!(
            "bound {gamma} must exceed the value {va}"
        )));
    }
    let ac = a.mul_monomial(&gamma.negate(), &Rat::one())?;
    let r = floor(&ac)?.to_series();
    r.mul_monomial(gamma, &Rat::one())
}

/// Quotient-field witness: for a supported in the chain level C_ν (the
/// subgroup with the last ν coordinates free), returns (a·t^α, t^α) with α
/// the canonical negative element of C_{ν+1} \ C_ν, so that both components
/// have only negative exponents and their quotient recovers a.
pub fn quotient_field_witness(a: &Series, nu: usize) -> Result<(Series, Series)> {
    let d = a.depth();
    if nu >= d {
        return Err(Error::LevelOutOfRange { level: nu, depth: d });
    }
    if !a.is_exact() {
        return Err(Error::SupportNotExact);
    }
    if !a.support_in_subgroup(ConvexLevel(d - nu))? {
        return Err(Error::SupportOutsideLevel);
    }
    // canonical α: −1 at coordinate d−ν (1-based), i.e. the generator of the
    // archimedean class that C_{ν+1} adds over C_ν
    let alpha = Exponent::unit(d, d - nu - 1).negate();
    let shifted = a.mul_monomial(&alpha, &Rat::one())?;
    let denom = Series::monomial(alpha, Rat::one());
    Ok((shifted, denom))
}

/// Probes the order isomorphism between two integer-part presentations on
/// samples from the first: a ↦ floor₂(a) is injective and order preserving,
/// and the inverse window construction recovers a as a″ + 1.
pub fn floor_bijection_probe<F1, F2>(
    samples: &[Series],
    floor_first: F1,
    floor_second: F2,
) -> ComplementReport
where
    F1: Fn(&Series) -> Result<Series>,
    F2: Fn(&Series) -> Result<Series>,
{
    let mut report = ComplementReport::new(
        "integer-part comparison map: injective, order preserving, invertible",
        samples.len(),
    );
    let mut images: Vec<(Series, Series)> = Vec::new();
    for a in samples {
        match floor_second(a) {
            Ok(img) => images.push((a.clone(), img)),
            Err(e) => report
                .failures
                .push(witness(a, format!("image floor failed: {e}"))),
        }
    }
    for (i, (a, a_img)) in images.iter().enumerate() {
        for (b, b_img) in images.iter().skip(i + 1) {
            if a != b && a_img == b_img {
                report
                    .failures
                    .push(witness(a, format!("collides with {b} at image {a_img}")));
            }
            if let (Ok(ord), Ok(ord_img)) = (compare(a, b), compare(a_img, b_img)) {
                if ord != Ordering::Equal && ord_img != ord {
                    report.failures.push(witness(
                        a,
                        format!("order not preserved against {b}: {ord:?} vs {ord_img:?}"),
                    ));
                }
            }
        }
    }
    for (a, a_img) in &images {
        let back = match floor_first(a_img) {
            Ok(f) => f,
            Err(e) => {
                report
                    .failures
                    .push(witness(a, format!("inverse floor failed: {e}")));
                continue;
            }
        };
        let one = Series::one(a.depth());
        // unique a″ with a″ < a′ ≤ a″ + 1
        let a_back = if back == *a_img {
            back.sub(&one).unwrap()
        } else {
            back
        };
        let recovered = a_back.add(&one).unwrap();
        if recovered != *a {
            report.failures.push(witness(
                a,
                format!("inverse construction recovered {recovered} instead"),
            ));
        }
    }
    report
}
