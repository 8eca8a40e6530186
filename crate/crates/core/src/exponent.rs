//! The value group G = Q^d under lexicographic order, its convex subgroups
//! and quotient projections.
//!
//! Invariants:
//! - coordinates are exact rationals in lowest terms
//! - coordinate 1 is the most significant in the lexicographic order
//! - the convex subgroups of G are exactly the prefix kernels
//!   Γ_j = {g : g_1 = … = g_j = 0}, with Γ_0 = G and Γ_d = {0}

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, Rat};

/// Element of the value group Q^d with lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    coords: Vec<Rat>,
}

impl Exponent {
    pub fn new(coords: Vec<Rat>) -> Self {
        Exponent { coords }
    }

    /// The zero element of Q^depth.
    pub fn zero(depth: usize) -> Self {
        Exponent {
            coords: vec![Rat::zero(); depth],
        }
    }

    /// Unit vector with 1 at the given 0-based coordinate.
    pub fn unit(depth: usize, coord: usize) -> Self {
        assert!(coord < depth, "unit coordinate out of range");
        let mut coords = vec![Rat::zero(); depth];
        coords[coord] = Rat::from_integer(1.into());
        Exponent { coords }
    }

    pub fn depth(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_depth(&self, other: &Self) -> Result<()> {
        if self.depth() != other.depth() {
            return Err(Error::DepthMismatch {
                expected: self.depth(),
                found: other.depth(),
            });
        }
        Ok(())
    }

    /// Lexicographic comparison in the group order. Errors on depth mismatch.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_depth(other)?;
        Ok(self.cmp(other))
    }

    /// Coordinatewise sum. Errors on depth mismatch.
    pub fn checked_add(&self, other: &Self) -> Result<Exponent> {
        self.check_depth(other)?;
        Ok(Exponent {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Exponent> {
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> Exponent {
        Exponent {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Scales by a nonzero integer.
    pub fn scale(&self, n: i64) -> Result<Exponent> {
        if n == 0 {
            return Err(Error::ZeroInteger);
        }
        let f = Rat::from_integer(n.into());
        Ok(Exponent {
            coords: self.coords.iter().map(|c| c * &f).collect(),
        })
    }

    /// Divides by a nonzero integer; the coordinates stay exact rationals.
    pub fn div_int(&self, n: i64) -> Result<Exponent> {
        if n == 0 {
            return Err(Error::ZeroInteger);
        }
        let f = Rat::from_integer(n.into());
        Ok(Exponent {
            coords: self.coords.iter().map(|c| c / &f).collect(),
        })
    }

    /// True iff the first j coordinates vanish, i.e. self ∈ Γ_j.
    pub fn in_subgroup(&self, level: ConvexLevel) -> Result<bool> {
        let j = level.check(self.depth())?;
        Ok(self.coords[..j].iter().all(|c| c.is_zero()))
    }

    /// Canonical representative of self + Γ_j in the quotient G/Γ_j: the
    /// prefix of the first j coordinates.
    pub fn project(&self, level: ConvexLevel) -> Result<Exponent> {
        let j = level.check(self.depth())?;
        Ok(Exponent {
            coords: self.coords[..j].to_vec(),
        })
    }

    /// Zero-pads a depth-j projection back to the given depth: the unique
    /// order-preserving monomial section of the quotient map.
    pub fn lift_to(&self, depth: usize) -> Result<Exponent> {
        if self.depth() > depth {
            return Err(Error::DepthMismatch {
                expected: depth,
                found: self.depth(),
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(depth, Rat::zero());
        Ok(Exponent { coords })
    }

    /// Drops the first j coordinates (re-indexing into Γ_j ≅ Q^{d−j}).
    pub fn drop_prefix(&self, level: ConvexLevel) -> Result<Exponent> {
        let j = level.check(self.depth())?;
        Ok(Exponent {
            coords: self.coords[j..].to_vec(),
        })
    }

    /// Sign of the element against 0 in the lexicographic order.
    pub fn sign(&self) -> Ordering {
        for c in &self.coords {
            if c.is_positive() {
                return Ordering::Greater;
            }
            if c.is_negative() {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Index of the first nonzero coordinate: the unique j with
    /// self ∈ Γ_j \ Γ_{j+1}. Returns depth for the zero element.
    pub fn class_level(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.depth())
    }
}

/// Total order used internally for term storage. Coincides with the group
/// order on equal depths; cross-depth comparison falls back to length and is
/// never group-meaningful — use `compare` for the checked group order.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ne => return ne,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rat(c))?;
        }
        write!(f, "]")
    }
}

/// Index j of the convex subgroup Γ_j = {g : g_1 = … = g_j = 0}.
///
/// Γ_0 = G and Γ_d = {0}; the chain is strictly decreasing in j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexLevel(pub usize);

impl ConvexLevel {
    pub fn new(j: usize) -> Self {
        ConvexLevel(j)
    }

    pub fn index(self) -> usize {
        self.0
    }

    fn check(self, depth: usize) -> Result<usize> {
        if self.0 > depth {
            return Err(Error::LevelOutOfRange {
                level: self.0,
                depth,
            });
        }
        Ok(self.0)
    }
}

impl fmt::Display for ConvexLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A valuation value: an exponent, or ∞ for the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValResult {
    Finite(Exponent),
    Infinity,
}

impl ValResult {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ValResult::Infinity)
    }

    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            ValResult::Finite(g) => Some(g),
            ValResult::Infinity => None,
        }
    }

    /// ∞ absorbs: ∞ + g = ∞.
    pub fn checked_add(&self, other: &ValResult) -> Result<ValResult> {
        match (self, other) {
            (ValResult::Infinity, _) | (_, ValResult::Infinity) => Ok(ValResult::Infinity),
            (ValResult::Finite(a), ValResult::Finite(b)) => {
                Ok(ValResult::Finite(a.checked_add(b)?))
            }
        }
    }

    /// ∞ > g for every exponent g.
    pub fn compare(&self, other: &ValResult) -> Result<Ordering> {
        match (self, other) {
            (ValResult::Infinity, ValResult::Infinity) => Ok(Ordering::Equal),
            (ValResult::Infinity, ValResult::Finite(_)) => Ok(Ordering::Greater),
            (ValResult::Finite(_), ValResult::Infinity) => Ok(Ordering::Less),
            (ValResult::Finite(a), ValResult::Finite(b)) => a.compare(b),
        }
    }

    pub fn cmp_exponent(&self, bound: &Exponent) -> Result<Ordering> {
        self.compare(&ValResult::Finite(bound.clone()))
    }

    /// Projects a finite value to the quotient G/Γ_j; ∞ maps to ∞.
    pub fn project(&self, level: ConvexLevel) -> Result<ValResult> {
        match self {
            ValResult::Infinity => Ok(ValResult::Infinity),
            ValResult::Finite(g) => Ok(ValResult::Finite(g.project(level)?)),
        }
    }

    /// True iff the value lies in Γ_j ∪ {∞}.
    pub fn in_subgroup(&self, level: ConvexLevel) -> Result<bool> {
        match self {
            ValResult::Infinity => Ok(true),
            ValResult::Finite(g) => g.in_subgroup(level),
        }
    }
}

impl fmt::Display for ValResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValResult::Infinity => write!(f, "inf"),
            ValResult::Finite(g) => write!(f, "{g}"),
        }
    }
}
