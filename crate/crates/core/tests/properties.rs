//! Property-based invariants for the kernel: group order, ring axioms mod
//! precision, valuation laws, ordering compatibility, floors, and parser
//! round trips.

use std::cmp::Ordering;

use proptest::prelude::*;

use hahnfield::error::Error;
use hahnfield::eval;
use hahnfield::exponent::{ConvexLevel, Exponent, ValResult};
use hahnfield::order;
use hahnfield::parse::{parse, Expr};
use hahnfield::rational::{rat, rat_i, Rat};
use hahnfield::series::{Precision, Series};
use hahnfield::valuation::{
    coarsen, compose_check, residue, residue_constant, ultrametric_holds, val, val_at_least,
};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-16i64..=16, 1i64..=16).prop_map(|(n, d)| rat(n, d))
}

fn exponent(depth: usize) -> impl Strategy<Value = Exponent> {
    prop::collection::vec(rat_strategy(), depth).prop_map(Exponent::new)
}

fn exponent_any() -> impl Strategy<Value = (usize, Exponent)> {
    (1usize..=3).prop_flat_map(|d| exponent(d).prop_map(move |g| (d, g)))
}

/// Truncates both to their common precision and compares the known parts.
fn equal_mod_common(a: &Series, b: &Series) -> bool {
    let prec = a.prec().min(b.prec()).unwrap();
    match prec.bound() {
        None => a == b,
        Some(p) => {
            let ta = a.truncate(p).unwrap();
            let tb = b.truncate(p).unwrap();
            ta.terms() == tb.terms()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // --- value group -------------------------------------------------------

    #[test]
    fn order_compatible_with_addition((d, a) in exponent_any(), bc in prop::collection::vec(rat_strategy(), 6)) {
        let b = Exponent::new(bc[..d].to_vec());
        let c = Exponent::new(bc[3..3 + d].to_vec());
        let ord = a.compare(&b).unwrap();
        let shifted = a.checked_add(&c).unwrap().compare(&b.checked_add(&c).unwrap()).unwrap();
        prop_assert_eq!(ord, shifted);
    }

    #[test]
    fn convex_subgroups_have_no_outside_points_between((d, c) in exponent_any(), j in 0usize..=3, raw in prop::collection::vec(rat_strategy(), 6)) {
        let j = j.min(d);
        let level = ConvexLevel(j);
        // a, b inside Γ_j
        let zero_prefix = |tail: &[Rat]| {
            let mut coords = vec![Rat::from_integer(0.into()); j];
            coords.extend_from_slice(&tail[..d - j]);
            Exponent::new(coords)
        };
        let a = zero_prefix(&raw[..]);
        let b = zero_prefix(&raw[3..]);
        let (lo, hi) = if a.compare(&b).unwrap() == Ordering::Greater { (b, a) } else { (a, b) };
        if !c.in_subgroup(level).unwrap() {
            // anything strictly outside the subgroup cannot sit between
            let between = lo.compare(&c).unwrap() != Ordering::Greater
                && c.compare(&hi).unwrap() != Ordering::Greater;
            prop_assert!(!between);
        }
    }

    #[test]
    fn projection_is_an_order_preserving_homomorphism((d, a) in exponent_any(), raw in prop::collection::vec(rat_strategy(), 3), j in 0usize..=3) {
        let j = j.min(d);
        let level = ConvexLevel(j);
        let b = Exponent::new(raw[..d].to_vec());
        let pa = a.project(level).unwrap();
        let pb = b.project(level).unwrap();
        prop_assert_eq!(
            a.checked_add(&b).unwrap().project(level).unwrap(),
            pa.checked_add(&pb).unwrap()
        );
        // kernel is exactly the subgroup
        prop_assert_eq!(pa.is_zero(), a.in_subgroup(level).unwrap());
        // quotient order preservation
        if a.is_positive() && !a.in_subgroup(level).unwrap() {
            prop_assert!(a.project(level).unwrap().is_positive());
        }
    }

    // --- series ring axioms -------------------------------------------------

    #[test]
    fn multiplication_commutes(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 6);
        let b = g.series(d, 6);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn distributivity_mod_precision(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 5);
        let b = g.series(d, 5);
        let c = g.series(d, 5);
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(equal_mod_common(&lhs, &rhs));
    }

    #[test]
    fn inversion_multiplies_back(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        // a coarse exponent grid keeps the expansion length bounded
        let a = g.series_with_height(d, 4, 4);
        let target = eval::default_prec(d);
        match a.invert(Some(&target)) {
            Ok(inv) => {
                let product = a.mul(&inv).unwrap();
                let diff = product.sub(&Series::one(d)).unwrap();
                prop_assert!(diff.no_known_terms(), "a = {}, product = {}", a, product);
            }
            Err(Error::DivisionByZero | Error::IndeterminateLeading) => {}
            Err(Error::NonArchimedeanExpansion { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected inversion error: {e}"),
        }
    }

    #[test]
    fn truncation_is_a_density_witness(d in 1usize..=3, seed in any::<u64>(), raw in prop::collection::vec(rat_strategy(), 3)) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 6);
        let pi = Exponent::new(raw[..d].to_vec());
        let whole_known = match a.prec().bound() {
            None => true,
            Some(b) => b.compare(&pi).unwrap() != Ordering::Less,
        };
        if whole_known {
            let b = a.truncate(&pi).unwrap();
            prop_assert!(val_at_least(&a.sub(&b).unwrap(), &pi).unwrap());
        }
    }

    #[test]
    fn widen_and_truncate_reproduces(d in 1usize..=3, seed in any::<u64>(), raw in prop::collection::vec(rat_strategy(), 6), op in 0u8..3) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let ma = strip_prec(&g.series_with_height(d, 5, 6));
        let mb = strip_prec(&g.series_with_height(d, 5, 6));
        let pa = Exponent::new(raw[..d].to_vec());
        let pb = Exponent::new(raw[3..3 + d].to_vec());
        let bump = Exponent::unit(d, 0).scale(8).unwrap();
        let low = |m: &Series, p: &Exponent| m.truncate(p).unwrap();
        let high = |m: &Series, p: &Exponent| m.truncate(&p.checked_add(&bump).unwrap()).unwrap();
        let pair = match op {
            0 => Some((
                low(&ma, &pa).add(&low(&mb, &pb)).unwrap(),
                high(&ma, &pa).add(&high(&mb, &pb)).unwrap(),
            )),
            1 => Some((
                low(&ma, &pa).mul(&low(&mb, &pb)).unwrap(),
                high(&ma, &pa).mul(&high(&mb, &pb)).unwrap(),
            )),
            _ => {
                // inversion needs a known leading term at both precisions
                match (low(&ma, &pa).invert(None), high(&ma, &pa).invert(None)) {
                    (Ok(lo), Ok(hi)) => Some((lo, hi)),
                    _ => None,
                }
            }
        };
        if let Some((lo, hi)) = pair {
            match lo.prec().bound() {
                Some(p) => prop_assert_eq!(lo.clone(), hi.truncate(p).unwrap(), "hi = {}", hi),
                None => prop_assert_eq!(lo.clone(), hi),
            }
        }
    }

    // --- valuation ----------------------------------------------------------

    #[test]
    fn valuation_laws(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 6);
        let b = g.series(d, 6);
        if let (Ok(va), Ok(vb)) = (val(&a), val(&b)) {
            prop_assert!(ultrametric_holds(&a, &b).unwrap());
            let vab = val(&a.mul(&b).unwrap()).unwrap();
            prop_assert_eq!(vab, va.checked_add(&vb).unwrap());
        }
    }

    #[test]
    fn composition_identity(d in 1usize..=3, j in 0usize..=3, seed in any::<u64>()) {
        let j = j.min(d);
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 6);
        if val(&a).map(|v| !v.is_infinity()).unwrap_or(false) {
            prop_assert!(compose_check(&a, ConvexLevel(j)).unwrap());
            // coarse values are additive
            let b = g.series(d, 6);
            if val(&b).map(|v| !v.is_infinity()).unwrap_or(false) {
                let ca = coarsen(&a, ConvexLevel(j)).unwrap().value;
                let cb = coarsen(&b, ConvexLevel(j)).unwrap().value;
                let cab = coarsen(&a.mul(&b).unwrap(), ConvexLevel(j)).unwrap().value;
                prop_assert_eq!(cab, ca.checked_add(&cb).unwrap());
            }
        }
    }

    #[test]
    fn residue_is_a_ring_homomorphism(d in 1usize..=3, j in 0usize..=3, seed in any::<u64>()) {
        let j = j.min(d);
        let level = ConvexLevel(j);
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = into_coarse_ring(g.series(d, 5), level);
        let b = into_coarse_ring(g.series(d, 5), level);
        if let (Some(a), Some(b)) = (a, b) {
            let ra = residue(&a, level).unwrap();
            let rb = residue(&b, level).unwrap();
            let sum = residue(&a.add(&b).unwrap(), level).unwrap();
            prop_assert!(equal_mod_common(&sum, &ra.add(&rb).unwrap()));
            let prod = residue(&a.mul(&b).unwrap(), level).unwrap();
            prop_assert!(equal_mod_common(&prod, &ra.mul(&rb).unwrap()));
        }
    }

    #[test]
    fn immediate_extension_witness(d in 1usize..=3, seed in any::<u64>(), raw in prop::collection::vec(rat_strategy(), 3)) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = strip_prec(&g.series(d, 6));
        if let Ok(ValResult::Finite(va)) = val(&a) {
            // positive gap bound above the value
            let mut bump = Exponent::new(raw[..d].to_vec());
            if !bump.is_positive() {
                bump = Exponent::unit(d, d - 1);
            }
            let pi = va.checked_add(&bump).unwrap();
            let b = a.truncate(&pi).unwrap();
            prop_assert_eq!(val(&b).unwrap(), ValResult::Finite(va.clone()));
            if va.is_zero() {
                prop_assert_eq!(residue_constant(&a).unwrap(), residue_constant(&b).unwrap());
            }
        }
    }

    // --- lifting ---------------------------------------------------------------

    #[test]
    fn newton_step_doubles_the_residual_value(q in 2i64..=4, seed in any::<u64>()) {
        // one exact Newton step on X^q − (1 + ε) from z = 1: the residual
        // value at least doubles
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let mut eps = g.series_with_height(1, 3, 4);
        eps = strip_prec(&eps);
        if let Ok(ValResult::Finite(v)) = val(&eps) {
            if v.is_positive() {
                let u = Series::one(1).add(&eps).unwrap();
                let f = hahnfield::hensel::Poly::new(vec![
                    u.neg(),
                    Series::zero(1),
                    Series::one(1),
                ]).unwrap();
                let f = if q > 2 {
                    let mut coeffs = vec![Series::zero(1); q as usize + 1];
                    coeffs[0] = u.neg();
                    coeffs[q as usize] = Series::one(1);
                    hahnfield::hensel::Poly::new(coeffs).unwrap()
                } else {
                    f
                };
                let z0 = Series::one(1);
                let f_z0 = f.eval(&z0).unwrap();
                let v0 = match val(&f_z0) {
                    Ok(ValResult::Finite(v0)) => v0,
                    _ => return Ok(()),
                };
                // f'(1) = q is a constant, so the first step stays exact
                let fp_z0 = f.derivative().eval(&z0).unwrap();
                let z1 = z0.sub(&f_z0.mul(&fp_z0.invert(None).unwrap()).unwrap()).unwrap();
                let f_z1 = f.eval(&z1).unwrap();
                let doubled = v0.scale(2).unwrap();
                prop_assert!(
                    val_at_least(&f_z1, &doubled).unwrap(),
                    "residual did not double: v0 = {}, f(z1) = {}", v0, f_z1
                );
            }
        }
    }

    // --- ordering and floors -------------------------------------------------

    #[test]
    fn order_valuation_compatibility(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let x = g.series(d, 5);
        let y = g.series(d, 5);
        let positive = |s: &Series| matches!(order::sign(s), Ok(order::Sign::Positive));
        if positive(&x) && positive(&y) && order::compare(&x, &y).map(|o| o != Ordering::Greater).unwrap_or(false) {
            // 0 < x ≤ y forces vx ≥ vy
            let vx = val(&x).unwrap();
            let vy = val(&y).unwrap();
            prop_assert!(vx.compare(&vy).unwrap() != Ordering::Less);
        }
    }

    #[test]
    fn floor_window_and_idempotence(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let a = g.series(d, 6);
        if let Ok(f) = order::floor(&a) {
            let r = f.to_series();
            let one = Series::one(d);
            prop_assert!(order::compare(&r, &a).unwrap() != Ordering::Greater);
            prop_assert!(order::compare(&a, &r.add(&one).unwrap()).unwrap() == Ordering::Less);
            // floor is idempotent on its image
            let again = order::floor(&r).unwrap();
            prop_assert_eq!(again.to_series(), r);
        }
    }

    // --- parser ---------------------------------------------------------------

    #[test]
    fn series_text_replays_through_eval(d in 1usize..=3, seed in any::<u64>()) {
        let mut g = hahnfield::sample::SampleGen::new(seed);
        let s = g.series(d, 6);
        let text = s.to_string();
        let replayed = eval::eval_text(&text, Some(d), None);
        prop_assert!(replayed.is_ok(), "{text:?} failed: {replayed:?}");
        match replayed.unwrap() {
            eval::Value::Series(r) => prop_assert_eq!(r, s, "through {}", text),
            other => prop_assert!(false, "unexpected value {other:?}"),
        }
    }

    #[test]
    fn parse_print_round_trip(e in expr_strategy()) {
        let printed = e.to_string();
        let reparsed = parse(&printed);
        prop_assert!(reparsed.is_ok(), "failed to reparse {printed:?}: {reparsed:?}");
        prop_assert_eq!(reparsed.unwrap(), e, "through {}", printed);
    }

    #[test]
    fn parser_is_total_on_arbitrary_input(s in "[ -~]{0,80}") {
        // never panics: either an expression or a positioned error
        let _ = parse(&s);
    }
}

fn strip_prec(a: &Series) -> Series {
    Series::from_terms(
        a.depth(),
        a.terms()
            .iter()
            .map(|t| (t.exponent.clone(), t.coeff.clone()))
            .collect(),
        Precision::Exact,
    )
    .unwrap()
}

/// Shifts a series into the coarse valuation ring at the level, when its
/// value is determinate.
fn into_coarse_ring(a: Series, level: ConvexLevel) -> Option<Series> {
    match val(&a) {
        Ok(ValResult::Infinity) => Some(a),
        Ok(ValResult::Finite(g)) => {
            let coarse = g.project(level).unwrap();
            if coarse.is_negative() {
                let lift = coarse.lift_to(a.depth()).unwrap().negate();
                Some(a.mul_monomial(&lift, &rat_i(1)).unwrap())
            } else {
                Some(a)
            }
        }
        Err(_) => None,
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=20).prop_map(|n| Expr::Num(rat_i(n))),
        (1usize..=3)
            .prop_flat_map(|d| prop::collection::vec((-9i64..=9, 1i64..=4), d))
            .prop_map(|cs| Expr::Monomial(Exponent::new(
                cs.into_iter().map(|(n, d)| rat(n, d)).collect()
            ))),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), -3i64..=3).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (1u32..=4, inner.clone()).prop_map(|(q, a)| Expr::Root(q, Box::new(a))),
            inner.clone().prop_map(|a| Expr::Floor(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Val(Box::new(a))),
            (0usize..=2, inner.clone()).prop_map(|(j, a)| Expr::Res(j, Box::new(a))),
            (0usize..=2, inner.clone()).prop_map(|(j, a)| Expr::Coarsen(j, Box::new(a))),
            (inner.clone(), prop::collection::vec((-9i64..=9, 1i64..=4), 1..=2))
                .prop_map(|(a, cs)| Expr::Truncate(
                    Box::new(a),
                    Exponent::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
                )),
            (inner, prop::collection::vec((-9i64..=9, 1i64..=4), 1..=2))
                .prop_map(|(a, cs)| Expr::WithPrec(
                    Box::new(a),
                    Exponent::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
                )),
        ]
    })
}
