//! Seeded, replayable sample generators for the checkers and scenarios.
//!
//! Bounds follow the workbench conventions: at most 12 terms per series,
//! exponent heights (numerator and denominator) at most 16. Coefficients are
//! kept small so closure products stay cheap. Identical seeds give identical
//! streams.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exponent::{ConvexLevel, Exponent};
use crate::rational::{rat, Rat};
use crate::series::{Precision, Series};

pub const MAX_TERMS: usize = 12;
pub const MAX_HEIGHT: i64 = 16;

pub struct SampleGen {
    rng: ChaCha8Rng,
}

impl SampleGen {
    pub fn new(seed: u64) -> Self {
        SampleGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero rational with numerator and denominator bounded by the height.
    pub fn rational(&mut self, height: i64) -> Rat {
        loop {
            let n = self.rng.random_range(-height..=height);
            if n != 0 {
                let d = self.rng.random_range(1..=height);
                return rat(n, d);
            }
        }
    }

    /// Small coefficient: nonzero, height ≤ 9/4.
    pub fn coeff(&mut self) -> Rat {
        loop {
            let n = self.rng.random_range(-9i64..=9);
            if n != 0 {
                let d = self.rng.random_range(1..=4i64);
                return rat(n, d);
            }
        }
    }

    /// Rational with zero allowed.
    fn rational_or_zero(&mut self, height: i64) -> Rat {
        if self.rng.random_range(0..4) == 0 {
            Rat::from_integer(0.into())
        } else {
            self.rational(height)
        }
    }

    pub fn exponent(&mut self, depth: usize) -> Exponent {
        self.exponent_with_height(depth, MAX_HEIGHT)
    }

    pub fn exponent_with_height(&mut self, depth: usize, height: i64) -> Exponent {
        Exponent::new((0..depth).map(|_| self.rational_or_zero(height)).collect())
    }

    /// Exponent inside Γ_j: the first j coordinates vanish.
    pub fn exponent_in_gamma(&mut self, depth: usize, level: ConvexLevel) -> Exponent {
        let j = level.index();
        let mut coords = vec![Rat::from_integer(0.into()); depth];
        for c in coords.iter_mut().skip(j) {
            *c = self.rational_or_zero(MAX_HEIGHT);
        }
        Exponent::new(coords)
    }

    /// Random series: up to `max_terms` terms, random precision policy
    /// (mostly exact, sometimes bounded above the support).
    pub fn series(&mut self, depth: usize, max_terms: usize) -> Series {
        self.series_with_height(depth, max_terms, MAX_HEIGHT)
    }

    /// Random series with a tighter exponent-height bound. Keeps the
    /// geometric-expansion workload of inversion-heavy suites small: the
    /// expansion length grows with the reciprocal of the unit part's value.
    pub fn series_with_height(&mut self, depth: usize, max_terms: usize, height: i64) -> Series {
        let n = self.rng.random_range(0..=max_terms);
        let pairs: Vec<(Exponent, Rat)> = (0..n)
            .map(|_| (self.exponent_with_height(depth, height), self.coeff()))
            .collect();
        let prec = if self.rng.random_range(0..4) == 0 {
            // a bound strictly above every generated exponent keeps all terms
            let mut bound = Exponent::zero(depth);
            for (g, _) in &pairs {
                if g.compare(&bound).unwrap() != std::cmp::Ordering::Less {
                    bound = g.clone();
                }
            }
            let bump = Exponent::unit(depth, 0).scale(height + 1).unwrap();
            Precision::Bound(bound.checked_add(&bump).unwrap())
        } else {
            Precision::Exact
        };
        Series::from_terms(depth, pairs, prec).expect("generated terms share the depth")
    }

    /// Exact series with all support in Γ_j.
    pub fn series_in_gamma(&mut self, depth: usize, level: ConvexLevel, max_terms: usize) -> Series {
        let n = self.rng.random_range(0..=max_terms);
        let pairs = (0..n)
            .map(|_| (self.exponent_in_gamma(depth, level), self.coeff()))
            .collect();
        Series::from_terms(depth, pairs, Precision::Exact).expect("depth is uniform")
    }

    /// Puiseux-style depth-1 sample: exponents k/n for a random n ≤ n_max,
    /// k bounded; exact, or bounded above zero so floors stay defined.
    pub fn psf_series(&mut self, n_max: usize, max_terms: usize) -> Series {
        let n = self.rng.random_range(1..=n_max) as i64;
        let count = self.rng.random_range(0..=max_terms);
        let pairs: Vec<(Exponent, Rat)> = (0..count)
            .map(|_| {
                let k = self.rng.random_range(-(2 * MAX_HEIGHT)..=2 * MAX_HEIGHT);
                (Exponent::new(vec![rat(k, n)]), self.coeff())
            })
            .collect();
        let prec = if self.rng.random_range(0..3) == 0 {
            let p = self.rng.random_range(1..=8i64);
            Precision::Bound(Exponent::new(vec![rat(p, 1)]))
        } else {
            Precision::Exact
        };
        Series::from_terms(1, pairs, prec).expect("depth-1 terms")
    }

    /// Integer-part ring sample: negative monomials, integers, and depth-2
    /// sums and products of those generators.
    pub fn integer_part_element(&mut self, depth: usize) -> Series {
        let gen = |s: &mut Self| -> Series {
            match s.rng.random_range(0..3) {
                0 => {
                    let mut g = s.exponent(depth);
                    if !g.is_negative() {
                        g = match g.sign() {
                            std::cmp::Ordering::Equal => Exponent::unit(depth, 0).negate(),
                            _ => g.negate(),
                        };
                    }
                    Series::monomial(g, s.coeff())
                }
                1 => Series::int(depth, s.rng.random_range(-9..=9)),
                _ => {
                    let g = s.negative_exponent(depth);
                    Series::monomial(g, s.coeff())
                }
            }
        };
        let a = gen(self);
        let b = gen(self);
        match self.rng.random_range(0..3) {
            0 => a.add(&b).unwrap(),
            1 => a.mul(&b).unwrap(),
            _ => a,
        }
    }

    /// Purely negative complement sample: element of Q[G^{<0}], no constant.
    pub fn neg_ring_element(&mut self, depth: usize) -> Series {
        let n = self.rng.random_range(1..=4);
        let mut acc = Series::zero(depth);
        for _ in 0..n {
            let g = self.negative_exponent(depth);
            acc = acc.add(&Series::monomial(g, self.coeff())).unwrap();
        }
        if self.rng.random_range(0..3) == 0 {
            let g = self.negative_exponent(depth);
            acc = acc.mul(&Series::monomial(g, self.coeff())).unwrap();
        }
        acc
    }

    pub fn negative_exponent(&mut self, depth: usize) -> Exponent {
        let g = self.exponent(depth);
        match g.sign() {
            std::cmp::Ordering::Less => g,
            std::cmp::Ordering::Greater => g.negate(),
            std::cmp::Ordering::Equal => Exponent::unit(depth, 0).negate(),
        }
    }

    /// Positive sampled bound in Γ_j (for density targets). Needs a proper
    /// subgroup: j < depth, since Γ_depth has no positive elements.
    pub fn positive_exponent_in_gamma(&mut self, depth: usize, level: ConvexLevel) -> Exponent {
        assert!(
            level.index() < depth,
            "no positive elements in the trivial subgroup"
        );
        let g = self.exponent_in_gamma(depth, level);
        match g.sign() {
            std::cmp::Ordering::Greater => g,
            std::cmp::Ordering::Less => g.negate(),
            std::cmp::Ordering::Equal => {
                let mut coords = vec![Rat::from_integer(0.into()); depth];
                coords[level.index()] = Rat::from_integer(1.into());
                Exponent::new(coords)
            }
        }
    }

    pub fn int_in_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }
}
