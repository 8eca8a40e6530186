//! Truncated generalized power series with exact rational coefficients.
//!
//! A `Series` is a finite, strictly increasing term list plus a precision
//! marker. Invariants:
//! - no zero coefficients are stored; exponents strictly increase
//! - with precision `Bound(π)`, every stored exponent is < π; terms at or
//!   beyond π are unknown, not zero
//! - with precision `Exact`, the series equals the stored finite sum
//! - a zero term list with finite precision is *not* the zero series: it is
//!   indistinguishable from zero at that precision (valuation ≥ π, unknown)
//!
//! Precision propagation:
//! - add/sub: min of the input precisions
//! - mul: min(π_a + v(b), π_b + v(a)), with Exact treated as +∞
//! - invert: π_a − 2·v(a); an exact input takes a caller-supplied target

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{ConvexLevel, Exponent, ValResult};
use crate::rational::{fmt_rat, Rat};

/// Precision marker: the first unknown exponent, or `Exact` for a genuine
/// finite sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precision {
    Exact,
    Bound(Exponent),
}

impl Precision {
    pub fn is_exact(&self) -> bool {
        matches!(self, Precision::Exact)
    }

    pub fn bound(&self) -> Option<&Exponent> {
        match self {
            Precision::Exact => None,
            Precision::Bound(b) => Some(b),
        }
    }

    /// min(self, other), with Exact acting as +∞.
    pub fn min(&self, other: &Precision) -> Result<Precision> {
        Ok(match (self, other) {
            (Precision::Exact, p) => p.clone(),
            (p, Precision::Exact) => p.clone(),
            (Precision::Bound(a), Precision::Bound(b)) => {
                if a.compare(b)? == Ordering::Greater {
                    Precision::Bound(b.clone())
                } else {
                    Precision::Bound(a.clone())
                }
            }
        })
    }

    /// Shifts a finite bound by an exponent; Exact stays Exact.
    pub fn shift(&self, by: &Exponent) -> Result<Precision> {
        Ok(match self {
            Precision::Exact => Precision::Exact,
            Precision::Bound(b) => Precision::Bound(b.checked_add(by)?),
        })
    }

    /// True iff an exponent is strictly below the precision (i.e. its
    /// coefficient is determined).
    pub fn admits(&self, g: &Exponent) -> Result<bool> {
        match self {
            Precision::Exact => Ok(true),
            Precision::Bound(b) => Ok(g.compare(b)? == Ordering::Less),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => write!(f, "exact"),
            Precision::Bound(b) => write!(f, "mod t^{b}"),
        }
    }
}

/// One monomial of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponent: Exponent,
    pub coeff: Rat,
}

/// Truncated generalized power series over Q with exponents in Q^depth (lex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    depth: usize,
    terms: Vec<Term>,
    prec: Precision,
}

/// Support summary: minimal exponent (when determined) and the set of
/// archimedean levels the support touches. A support exponent g touches
/// level j when g ∈ Γ_j \ Γ_{j+1}; the zero exponent touches level d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    /// `Some(Infinity)` for the exact zero series; `None` when the term list
    /// is empty at finite precision (minimum unknown).
    pub min_exponent: Option<ValResult>,
    pub levels: BTreeSet<usize>,
}

impl Series {
    /// The exact zero series.
    pub fn zero(depth: usize) -> Self {
        Series {
            depth,
            terms: Vec::new(),
            prec: Precision::Exact,
        }
    }

    /// A series indistinguishable from zero below the given bound.
    pub fn zero_mod(bound: Exponent) -> Self {
        Series {
            depth: bound.depth(),
            terms: Vec::new(),
            prec: Precision::Bound(bound),
        }
    }

    pub fn constant(depth: usize, c: Rat) -> Self {
        Self::monomial(Exponent::zero(depth), c)
    }

    pub fn one(depth: usize) -> Self {
        Self::constant(depth, Rat::one())
    }

    pub fn int(depth: usize, n: i64) -> Self {
        Self::constant(depth, Rat::from_integer(n.into()))
    }

    /// c·t^g, exact. A zero coefficient gives the exact zero series.
    pub fn monomial(exponent: Exponent, coeff: Rat) -> Self {
        let depth = exponent.depth();
        if coeff.is_zero() {
            return Self::zero(depth);
        }
        Series {
            depth,
            terms: vec![Term { exponent, coeff }],
            prec: Precision::Exact,
        }
    }

    /// Builds a series from arbitrary (exponent, coefficient) pairs:
    /// sorts, merges duplicates, drops zeros and terms at or beyond the
    /// precision bound.
    pub fn from_terms(
        depth: usize,
        pairs: Vec<(Exponent, Rat)>,
        prec: Precision,
    ) -> Result<Series> {
        for (g, _) in &pairs {
            if g.depth() != depth {
                return Err(Error::DepthMismatch {
                    expected: depth,
                    found: g.depth(),
                });
            }
        }
        if let Precision::Bound(b) = &prec {
            if b.depth() != depth {
                return Err(Error::DepthMismatch {
                    expected: depth,
                    found: b.depth(),
                });
            }
        }
        let mut pairs = pairs;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<Term> = Vec::with_capacity(pairs.len());
        for (exponent, coeff) in pairs {
            if let Some(last) = terms.last_mut() {
                if last.exponent == exponent {
                    last.coeff += coeff;
                    if last.coeff.is_zero() {
                        terms.pop();
                    }
                    continue;
                }
            }
            if !coeff.is_zero() {
                terms.push(Term { exponent, coeff });
            }
        }
        if let Precision::Bound(b) = &prec {
            terms.retain(|t| t.exponent < *b);
        }
        Ok(Series { depth, terms, prec })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn prec(&self) -> &Precision {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_exact()
    }

    /// True only for the exact zero series.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// True when no terms are known (covers both exact zero and
    /// zero-at-precision).
    pub fn no_known_terms(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_depth(&self, other: &Series) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: other.depth,
            });
        }
        Ok(())
    }

    /// Minimal-exponent term. Errors on the zero series and when the leading
    /// term is unknown at the current precision.
    pub fn leading(&self) -> Result<(&Exponent, &Rat)> {
        match self.terms.first() {
            Some(t) => Ok((&t.exponent, &t.coeff)),
            None => {
                if self.is_exact() {
                    Err(Error::DivisionByZero)
                } else {
                    Err(Error::IndeterminateLeading)
                }
            }
        }
    }

    /// Coefficient at an exponent: `Some` when determined at the current
    /// precision (zero when absent), `None` when the exponent lies at or
    /// beyond the precision bound.
    pub fn known_coeff(&self, g: &Exponent) -> Result<Option<Rat>> {
        if g.depth() != self.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: g.depth(),
            });
        }
        if !self.prec.admits(g)? {
            return Ok(None);
        }
        Ok(Some(
            self.terms
                .iter()
                .find(|t| t.exponent == *g)
                .map(|t| t.coeff.clone())
                .unwrap_or_else(Rat::zero),
        ))
    }

    /// Lower bound on the valuation used for precision propagation: leading
    /// exponent when known, the precision bound when empty, ∞ for exact zero.
    pub(crate) fn val_lower_bound(&self) -> ValResult {
        match self.terms.first() {
            Some(t) => ValResult::Finite(t.exponent.clone()),
            None => match &self.prec {
                Precision::Exact => ValResult::Infinity,
                Precision::Bound(b) => ValResult::Finite(b.clone()),
            },
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_depth(other)?;
        let prec = self.prec.min(&other.prec)?;
        let pairs = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| (t.exponent.clone(), t.coeff.clone()))
            .collect();
        Series::from_terms(self.depth, pairs, prec)
    }

    pub fn neg(&self) -> Series {
        Series {
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: t.exponent.clone(),
                    coeff: -&t.coeff,
                })
                .collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(self.depth);
        }
        Series {
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: t.exponent.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiplies by the exact monomial c·t^g (shifts support and bound).
    pub fn mul_monomial(&self, g: &Exponent, c: &Rat) -> Result<Series> {
        if g.depth() != self.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: g.depth(),
            });
        }
        if c.is_zero() {
            return Ok(Series::zero(self.depth));
        }
        Ok(Series {
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    Ok(Term {
                        exponent: t.exponent.checked_add(g)?,
                        coeff: &t.coeff * c,
                    })
                })
                .collect::<Result<_>>()?,
            prec: self.prec.shift(g)?,
        })
    }

    /// Cauchy product. An exactly zero factor annihilates; otherwise the
    /// result precision is min(π_a + v(b), π_b + v(a)).
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_depth(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Series::zero(self.depth));
        }
        let prec_a = prec_plus_val(&self.prec, &other.val_lower_bound())?;
        let prec_b = prec_plus_val(&other.prec, &self.val_lower_bound())?;
        let prec = prec_a.min(&prec_b)?;
        let mut pairs = Vec::with_capacity(self.terms.len() * other.terms.len());
        for ta in &self.terms {
            for tb in &other.terms {
                let g = ta.exponent.checked_add(&tb.exponent)?;
                if let Precision::Bound(b) = &prec {
                    if g >= *b {
                        continue;
                    }
                }
                pairs.push((g, &ta.coeff * &tb.coeff));
            }
        }
        Series::from_terms(self.depth, pairs, prec)
    }

    /// Integer power; negative powers invert first (see `invert` for the
    /// precision contract of the exact multi-term case).
    pub fn pow_i(&self, n: i64, exact_target: Option<&Exponent>) -> Result<Series> {
        if n < 0 {
            return self.invert(exact_target)?.pow_i(-n, exact_target);
        }
        let mut acc = Series::one(self.depth);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse by geometric expansion of the leading factor:
    /// write a = c·t^h·(1+ε) with v(ε) > 0 and sum Σ (−ε)^i.
    ///
    /// A finite-precision input yields precision π − 2h. An exact input
    /// yields the caller-supplied target precision (exact monomials invert
    /// exactly and ignore the target). When v(ε) lies in a strictly finer
    /// archimedean class than the needed bound the expansion cannot
    /// terminate and the call is refused.
    pub fn invert(&self, exact_target: Option<&Exponent>) -> Result<Series> {
        let (h, c) = match self.leading() {
            Ok((h, c)) => (h.clone(), c.clone()),
            Err(e) => return Err(e),
        };
        let c_inv = Rat::one() / &c;
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Series::monomial(h.negate(), c_inv));
        }
        // precision of the geometric sum: π_r + h
        let sum_prec = match &self.prec {
            Precision::Bound(p) => p.checked_sub(&h)?,
            Precision::Exact => {
                let target = exact_target.ok_or(Error::InverseNeedsPrecision)?;
                if target.depth() != self.depth {
                    return Err(Error::DepthMismatch {
                        expected: self.depth,
                        found: target.depth(),
                    });
                }
                target.checked_add(&h)?
            }
        };
        // ε = a / (c t^h) − 1
        let unit = self.mul_monomial(&h.negate(), &c_inv)?;
        let eps = unit.sub(&Series::one(self.depth))?.truncate(&sum_prec)?;
        let mut sum = Series::one(self.depth).truncate(&sum_prec)?;
        if let Ok((v_eps, _)) = eps.leading() {
            if sum_prec.is_positive() && v_eps.class_level() > sum_prec.class_level() {
                return Err(Error::NonArchimedeanExpansion {
                    epsilon_val: v_eps.to_string(),
                    target: sum_prec.to_string(),
                });
            }
            let mut power = eps.clone();
            let mut negate = true;
            while !power.no_known_terms() {
                sum = if negate {
                    sum.sub(&power)?
                } else {
                    sum.add(&power)?
                };
                negate = !negate;
                power = power.mul(&eps)?.truncate(&sum_prec)?;
            }
        }
        sum.mul_monomial(&h.negate(), &c_inv)
    }

    /// Division: self · other⁻¹.
    pub fn div(&self, other: &Series, exact_target: Option<&Exponent>) -> Result<Series> {
        self.mul(&other.invert(exact_target)?)
    }

    /// Keeps the terms with exponent < π; the result precision is
    /// min(π_self, π). The discarded tail has valuation ≥ π, which is what
    /// makes truncations density witnesses.
    pub fn truncate(&self, bound: &Exponent) -> Result<Series> {
        if bound.depth() != self.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                found: bound.depth(),
            });
        }
        let prec = self.prec.min(&Precision::Bound(bound.clone()))?;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exponent < *bound)
            .cloned()
            .collect();
        Ok(Series {
            depth: self.depth,
            terms,
            prec,
        })
    }

    /// The known sub-series supported on Γ_j. Exact when every Γ_j exponent
    /// lies below the precision bound (in particular when the bound has a
    /// positive projection), otherwise bounded by the same π.
    pub fn gamma_part(&self, level: ConvexLevel) -> Result<Series> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter_map(|t| match t.exponent.in_subgroup(level) {
                Ok(true) => Some(Ok(t.clone())),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_>>()?;
        let prec = match &self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Bound(b) => {
                let proj = b.project(level)?;
                if proj.is_positive() {
                    // every Γ_j exponent is below the bound
                    Precision::Exact
                } else {
                    Precision::Bound(b.clone())
                }
            }
        };
        Ok(Series {
            depth: self.depth,
            terms,
            prec,
        })
    }

    /// Support summary; levels follow `Exponent::class_level`.
    pub fn support_profile(&self) -> SupportProfile {
        let min_exponent = match self.terms.first() {
            Some(t) => Some(ValResult::Finite(t.exponent.clone())),
            None => {
                if self.is_exact() {
                    Some(ValResult::Infinity)
                } else {
                    None
                }
            }
        };
        let levels = self
            .terms
            .iter()
            .map(|t| t.exponent.class_level())
            .collect();
        SupportProfile {
            min_exponent,
            levels,
        }
    }

    /// True iff every known support exponent lies in Γ_j.
    pub fn support_in_subgroup(&self, level: ConvexLevel) -> Result<bool> {
        for t in &self.terms {
            if !t.exponent.in_subgroup(level)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-indexes a series supported on Γ_j to depth d−j by dropping the
    /// first j coordinates. All support must lie in Γ_j.
    pub fn drop_prefix(&self, level: ConvexLevel) -> Result<Series> {
        let j = level.index();
        if j > self.depth {
            return Err(Error::LevelOutOfRange {
                level: j,
                depth: self.depth,
            });
        }
        let mut pairs = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !t.exponent.in_subgroup(level)? {
                return Err(Error::Internal(
                    "drop_prefix applied to support outside the subgroup".into(),
                ));
            }
            pairs.push((t.exponent.drop_prefix(level)?, t.coeff.clone()));
        }
        let prec = match &self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Bound(b) => {
                if b.in_subgroup(level)? {
                    Precision::Bound(b.drop_prefix(level)?)
                } else if b.project(level)?.is_positive() {
                    Precision::Exact
                } else {
                    return Err(Error::Internal(
                        "drop_prefix on a bound below the subgroup".into(),
                    ));
                }
            }
        };
        Series::from_terms(self.depth - j, pairs, prec)
    }

    /// Canonical text form; parseable by the expression grammar.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn prec_plus_val(prec: &Precision, val: &ValResult) -> Result<Precision> {
    Ok(match (prec, val) {
        (Precision::Exact, _) => Precision::Exact,
        (_, ValResult::Infinity) => Precision::Exact,
        (Precision::Bound(p), ValResult::Finite(v)) => Precision::Bound(p.checked_add(v)?),
    })
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, t: &Term, lead: bool) -> fmt::Result {
    let coeff = if lead {
        t.coeff.clone()
    } else {
        t.coeff.abs()
    };
    if t.exponent.is_zero() {
        return write!(f, "{}", fmt_rat(&coeff));
    }
    if coeff != Rat::one() {
        if coeff == -Rat::one() {
            write!(f, "-")?;
        } else {
            write!(f, "{}*", fmt_rat(&coeff))?;
        }
    }
    if monomial_is_bare_t(&t.exponent) {
        write!(f, "t")
    } else {
        write!(f, "t^{}", fmt_exponent_for_monomial(&t.exponent))
    }
}

/// Depth-1 exponents print as `t^q` sugar (parenthesised when fractional or
/// negative); higher depths use the bracket form.
fn fmt_exponent_for_monomial(g: &Exponent) -> String {
    if g.depth() == 1 {
        let q = &g.coords()[0];
        let s = fmt_rat(q);
        if s.contains('/') || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    } else {
        g.to_string()
    }
}

fn monomial_is_bare_t(g: &Exponent) -> bool {
    g.depth() == 1 && g.coords()[0] == Rat::one()
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, t) in self.terms.iter().enumerate() {
                if i == 0 {
                    fmt_monomial(f, t, true)?;
                } else {
                    write!(f, "{}", if t.coeff.is_negative() { " - " } else { " + " })?;
                    fmt_monomial(f, t, false)?;
                }
            }
        }
        if let Precision::Bound(b) = &self.prec {
            write!(f, " mod t^{}", fmt_exponent_for_monomial(b))?;
        }
        Ok(())
    }
}
