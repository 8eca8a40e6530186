//! Deterministic evaluation of parsed expressions.
//!
//! Division and q-th roots of exact inputs need a precision horizon; the
//! context supplies the default (componentwise 8 unless overridden), and a
//! `mod t^π` annotation overrides it for its subtree before truncating the
//! result. Domain errors carry the expression path they occurred under.

use crate::error::{Error, Result};
use crate::exponent::{ConvexLevel, Exponent, ValResult};
use crate::order;
use crate::parse::Expr;
use crate::series::Series;
use crate::valuation;

pub const DEFAULT_PREC_COORD: i64 = 8;

#[derive(Debug, Clone)]
pub struct EvalContext {
    pub depth: usize,
    pub prec: Exponent,
}

impl EvalContext {
    pub fn new(depth: usize) -> Self {
        EvalContext {
            depth,
            prec: default_prec(depth),
        }
    }

    pub fn with_prec(depth: usize, prec: Exponent) -> Self {
        EvalContext { depth, prec }
    }
}

/// The componentwise default horizon t^[8,...,8].
pub fn default_prec(depth: usize) -> Exponent {
    Exponent::new(
        (0..depth)
            .map(|_| crate::rational::rat_i(DEFAULT_PREC_COORD))
            .collect(),
    )
}

/// Evaluation result: a series, or a value-group element.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Series(Series),
    Val(ValResult),
}

impl Value {
    pub fn into_series(self, path: &str) -> Result<Series> {
        match self {
            Value::Series(s) => Ok(s),
            Value::Val(_) => Err(Error::Type(format!(
                "{path} needs a series operand, found a value-group element"
            ))),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Series(s) => write!(f, "{s}"),
            Value::Val(v) => write!(f, "{v}"),
        }
    }
}

/// All monomial/bound depths appearing in an expression. Empty when the
/// expression is purely rational.
pub fn exponent_depths(e: &Expr) -> Vec<usize> {
    let mut depths = Vec::new();
    collect_depths(e, &mut depths);
    depths.sort_unstable();
    depths.dedup();
    depths
}

fn collect_depths(e: &Expr, out: &mut Vec<usize>) {
    match e {
        Expr::Monomial(g) => out.push(g.depth()),
        Expr::Truncate(x, b) | Expr::WithPrec(x, b) => {
            out.push(b.depth());
            collect_depths(x, out);
        }
        Expr::Neg(x)
        | Expr::Pow(x, _)
        | Expr::Root(_, x)
        | Expr::Floor(x)
        | Expr::Val(x)
        | Expr::Res(_, x)
        | Expr::Coarsen(_, x) => collect_depths(x, out),
        Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
            collect_depths(l, out);
            collect_depths(r, out);
        }
        Expr::Num(_) | Expr::X => {}
    }
}

/// Infers the uniform depth of an expression, against an optional requested
/// depth. Purely rational expressions default to the requested depth or 1.
pub fn infer_depth(e: &Expr, requested: Option<usize>) -> Result<usize> {
    let depths = exponent_depths(e);
    match (depths.as_slice(), requested) {
        ([], req) => Ok(req.unwrap_or(1)),
        ([d], None) => Ok(*d),
        ([d], Some(req)) if *d == req => Ok(*d),
        ([d], Some(req)) => Err(Error::DepthMismatch {
            expected: req,
            found: *d,
        }),
        (many, _) => Err(Error::DepthMismatch {
            expected: many[0],
            found: many[1],
        }),
    }
}

pub fn eval(e: &Expr, ctx: &EvalContext) -> Result<Value> {
    match e {
        Expr::Num(q) => Ok(Value::Series(Series::constant(ctx.depth, q.clone()))),
        Expr::Monomial(g) => {
            if g.depth() != ctx.depth {
                return Err(Error::DepthMismatch {
                    expected: ctx.depth,
                    found: g.depth(),
                });
            }
            Ok(Value::Series(Series::monomial(
                g.clone(),
                crate::rational::rat_i(1),
            )))
        }
        Expr::X => Err(Error::Type(
            "the indeterminate X is only meaningful in a polynomial".into(),
        )),
        Expr::Neg(x) => {
            let s = eval(x, ctx)?.into_series("negation")?;
            Ok(Value::Series(s.neg()))
        }
        Expr::Add(l, r) => binary(l, r, ctx, "sum", |a, b, _| a.add(b)),
        Expr::Sub(l, r) => binary(l, r, ctx, "difference", |a, b, _| a.sub(b)),
        Expr::Mul(l, r) => binary(l, r, ctx, "product", |a, b, _| a.mul(b)),
        Expr::Div(l, r) => binary(l, r, ctx, "quotient", |a, b, prec| {
            a.div(b, Some(prec))
        }),
        Expr::Pow(b, n) => {
            let s = eval(b, ctx)?.into_series("power")?;
            s.pow_i(*n, Some(&ctx.prec))
                .map(Value::Series)
                .map_err(|e| e.in_path("power"))
        }
        Expr::Root(q, x) => {
            let s = eval(x, ctx)?.into_series("root")?;
            crate::hensel::unit_root(&s, *q, &ctx.prec)
                .map(Value::Series)
                .map_err(|e| e.in_path(&format!("root({q}, ·)")))
        }
        Expr::Floor(x) => {
            let s = eval(x, ctx)?.into_series("floor")?;
            order::floor(&s)
                .map(|f| Value::Series(f.to_series()))
                .map_err(|e| e.in_path("floor"))
        }
        Expr::Val(x) => {
            let s = eval(x, ctx)?.into_series("val")?;
            valuation::val(&s)
                .map(Value::Val)
                .map_err(|e| e.in_path("val"))
        }
        Expr::Res(j, x) => {
            let s = eval(x, ctx)?.into_series("res")?;
            valuation::residue(&s, ConvexLevel(*j))
                .map(Value::Series)
                .map_err(|e| e.in_path(&format!("res({j}, ·)")))
        }
        Expr::Coarsen(j, x) => {
            let s = eval(x, ctx)?.into_series("coarsen")?;
            valuation::coarsen(&s, ConvexLevel(*j))
                .map(|cv| Value::Val(cv.value))
                .map_err(|e| e.in_path(&format!("coarsen({j}, ·)")))
        }
        Expr::Truncate(x, bound) => {
            let s = eval(x, ctx)?.into_series("truncate")?;
            s.truncate(bound)
                .map(Value::Series)
                .map_err(|e| e.in_path("truncate"))
        }
        Expr::WithPrec(x, bound) => {
            let sub = EvalContext {
                depth: ctx.depth,
                prec: bound.clone(),
            };
            let s = eval(x, &sub)?.into_series("mod")?;
            s.truncate(bound)
                .map(Value::Series)
                .map_err(|e| e.in_path("mod"))
        }
    }
}

fn binary<F>(l: &Expr, r: &Expr, ctx: &EvalContext, name: &str, op: F) -> Result<Value>
where
    F: Fn(&Series, &Series, &Exponent) -> Result<Series>,
{
    let a = eval(l, ctx)?.into_series(name)?;
    let b = eval(r, ctx)?.into_series(name)?;
    op(&a, &b, &ctx.prec)
        .map(Value::Series)
        .map_err(|e| e.in_path(name))
}

/// Parses and evaluates in one step (CLI entry point).
pub fn eval_text(text: &str, depth: Option<usize>, prec: Option<Exponent>) -> Result<Value> {
    let e = crate::parse::parse(text)?;
    let d = infer_depth(&e, depth)?;
    let prec = match prec {
        Some(p) => {
            if p.depth() == 1 && d != 1 {
                // a scalar horizon applies componentwise
                let q = p.coords()[0].clone();
                Exponent::new(vec![q; d])
            } else if p.depth() != d {
                return Err(Error::DepthMismatch {
                    expected: d,
                    found: p.depth(),
                });
            } else {
                p
            }
        }
        None => default_prec(d),
    };
    eval(&e, &EvalContext::with_prec(d, prec))
}

/// Evaluates a polynomial expression in X with series coefficients.
pub fn eval_poly(e: &Expr, ctx: &EvalContext) -> Result<Vec<Series>> {
    match e {
        Expr::X => Ok(vec![Series::zero(ctx.depth), Series::one(ctx.depth)]),
        Expr::Num(_) | Expr::Monomial(_) => {
            let v = eval(e, ctx)?.into_series("polynomial coefficient")?;
            Ok(vec![v])
        }
        Expr::Neg(x) => Ok(eval_poly(x, ctx)?.iter().map(Series::neg).collect()),
        Expr::Add(l, r) => poly_zip(eval_poly(l, ctx)?, eval_poly(r, ctx)?, false),
        Expr::Sub(l, r) => poly_zip(eval_poly(l, ctx)?, eval_poly(r, ctx)?, true),
        Expr::Mul(l, r) => {
            let a = eval_poly(l, ctx)?;
            let b = eval_poly(r, ctx)?;
            let mut out = vec![Series::zero(ctx.depth); a.len() + b.len() - 1];
            for (i, ca) in a.iter().enumerate() {
                for (j, cb) in b.iter().enumerate() {
                    out[i + j] = out[i + j].add(&ca.mul(cb)?)?;
                }
            }
            Ok(out)
        }
        Expr::Div(l, r) => {
            let a = eval_poly(l, ctx)?;
            let b = eval_poly(r, ctx)?;
            if b.len() != 1 {
                return Err(Error::Type("polynomial division needs an X-free divisor".into()));
            }
            let inv = b[0].invert(Some(&ctx.prec))?;
            a.iter().map(|c| c.mul(&inv)).collect()
        }
        Expr::Pow(b, n) => {
            if *n < 0 {
                // negative powers only make sense for X-free bases; the
                // series evaluator handles those (and reports X otherwise)
                let v = eval(e, ctx)?.into_series("polynomial coefficient")?;
                return Ok(vec![v]);
            }
            let base = eval_poly(b, ctx)?;
            let mut acc = vec![Series::one(ctx.depth)];
            for _ in 0..*n {
                let mut out = vec![Series::zero(ctx.depth); acc.len() + base.len() - 1];
                for (i, ca) in acc.iter().enumerate() {
                    for (j, cb) in base.iter().enumerate() {
                        out[i + j] = out[i + j].add(&ca.mul(cb)?)?;
                    }
                }
                acc = out;
            }
            Ok(acc)
        }
        Expr::WithPrec(x, bound) => {
            let sub = EvalContext {
                depth: ctx.depth,
                prec: bound.clone(),
            };
            eval_poly(x, &sub)?
                .into_iter()
                .map(|c| c.truncate(bound))
                .collect()
        }
        other => {
            let v = eval(other, ctx)?.into_series("polynomial coefficient")?;
            Ok(vec![v])
        }
    }
}

fn poly_zip(a: Vec<Series>, b: Vec<Series>, subtract: bool) -> Result<Vec<Series>> {
    let depth = a
        .first()
        .or(b.first())
        .map(Series::depth)
        .unwrap_or(1);
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let zero = Series::zero(depth);
        let ca = a.get(i).unwrap_or(&zero);
        let cb = b.get(i).unwrap_or(&zero);
        out.push(if subtract { ca.sub(cb)? } else { ca.add(cb)? });
    }
    Ok(out)
}

/// Parses a polynomial in X (series coefficients, degree-indexed).
pub fn parse_poly_text(
    text: &str,
    depth: Option<usize>,
    prec: Option<Exponent>,
) -> Result<crate::hensel::Poly> {
    let e = crate::parse::parse(text)?;
    let d = infer_depth(&e, depth)?;
    let prec = prec.unwrap_or_else(|| default_prec(d));
    let coeffs = eval_poly(&e, &EvalContext::with_prec(d, prec))?;
    crate::hensel::Poly::new(coeffs)
}
