//! Expression grammar for the workbench.
//!
//! Precedence, loosest to tightest: `mod` precision annotation; `+`/`-`;
//! `*`/`/`; unary `-`; `^` with an integer exponent. Monomials are written
//! `t^q` (depth 1, parenthesised when fractional or negative) or `t^[q1,...,qd]`.
//! Functions: root(q, e), floor(e), val(e), res(j, e), coarsen(j, e),
//! truncate(e, t^π). Polynomials additionally use the indeterminate X.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rat),
    Monomial(Exponent),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Root(u32, Box<Expr>),
    Floor(Box<Expr>),
    Val(Box<Expr>),
    Res(usize, Box<Expr>),
    Coarsen(usize, Box<Expr>),
    Truncate(Box<Expr>, Exponent),
    WithPrec(Box<Expr>, Exponent),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l, col: co });
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '+' => push(Tok::Plus),
            '-' => push(Tok::Minus),
            '*' => push(Tok::Star),
            '/' => push(Tok::Slash),
            '^' => push(Tok::Caret),
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            '[' => push(Tok::LBracket),
            ']' => push(Tok::RBracket),
            ',' => push(Tok::Comma),
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().expect("digits form an integer")),
                    line: l,
                    col: co,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: l,
                    col: co,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
        chars.next();
        col += 1;
    }
    Ok(out)
}

const MAX_NESTING: usize = 256;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn enter(&mut self) -> Result<()> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.nesting -= 1;
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let e = self.parse_sum()?;
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "mod" {
                self.next();
                let bound = self.parse_prec_monomial()?;
                return Ok(Expr::WithPrec(Box::new(e), bound));
            }
        }
        Ok(e)
    }

    fn parse_sum(&mut self) -> Result<Expr> {
        let mut acc = self.parse_product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.parse_product()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.parse_product()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<Expr> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    acc = Expr::Div(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            self.enter()?;
            let inner = self.parse_unary();
            self.leave();
            return Ok(Expr::Neg(Box::new(inner?)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            // monomials consume their own caret in parse_atom; a caret here
            // is an integer power of a general base
            self.next();
            let n = self.parse_signed_int("integer power")?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn parse_signed_int(&mut self, what: &str) -> Result<i64> {
        let neg = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => {
                let v: i64 = n
                    .try_into()
                    .map_err(|_| self.err(format!("{what} out of range")))?;
                Ok(if neg { -v } else { v })
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn parse_unsigned_int(&mut self, what: &str) -> Result<u64> {
        match self.next() {
            Some(Tok::Int(n)) => n
                .try_into()
                .map_err(|_| self.err(format!("{what} out of range"))),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    /// A rational with optional sign: `p`, `-p`, `p/q`, `-p/q`.
    fn parse_rational(&mut self) -> Result<Rat> {
        let neg = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            true
        } else {
            false
        };
        let numer = match self.next() {
            Some(Tok::Int(n)) => n,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.err("expected a rational"));
            }
        };
        let denom = if matches!(self.peek(), Some(Tok::Slash)) {
            self.next();
            match self.next() {
                Some(Tok::Int(d)) => d,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.err("expected a denominator"));
                }
            }
        } else {
            BigInt::from(1)
        };
        if denom == BigInt::from(0) {
            return Err(self.err("zero denominator"));
        }
        let q = Rat::new(numer, denom);
        Ok(if neg { -q } else { q })
    }

    /// The exponent after `t^`: an integer, a parenthesised rational, or a
    /// bracketed vector.
    fn parse_texp(&mut self) -> Result<Exponent> {
        match self.peek() {
            Some(Tok::LBracket) => {
                self.next();
                let mut coords = vec![self.parse_rational()?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.next();
                    coords.push(self.parse_rational()?);
                }
                self.expect(Tok::RBracket, "]")?;
                Ok(Exponent::new(coords))
            }
            Some(Tok::LParen) => {
                self.next();
                let q = self.parse_rational()?;
                self.expect(Tok::RParen, ")")?;
                Ok(Exponent::new(vec![q]))
            }
            Some(Tok::Minus) | Some(Tok::Int(_)) => {
                let n = self.parse_signed_int("exponent")?;
                Ok(Exponent::new(vec![Rat::from_integer(n.into())]))
            }
            _ => Err(self.err("expected an exponent after t^")),
        }
    }

    /// A precision monomial `t^π` (used by `mod` and truncate).
    fn parse_prec_monomial(&mut self) -> Result<Exponent> {
        match self.next() {
            Some(Tok::Ident(name)) if name == "t" => {}
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.err("expected a monomial t^..."));
            }
        }
        self.expect(Tok::Caret, "^")?;
        self.parse_texp()
    }

    fn parse_call_arg(&mut self) -> Result<Expr> {
        self.enter()?;
        let e = self.parse_expr();
        self.leave();
        e
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.next();
                Ok(Expr::Num(Rat::from_integer(n)))
            }
            Some(Tok::LParen) => {
                self.next();
                self.enter()?;
                let e = self.parse_expr();
                self.leave();
                let e = e?;
                self.expect(Tok::RParen, ")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "t" => {
                    self.next();
                    if matches!(self.peek(), Some(Tok::Caret)) {
                        self.next();
                        Ok(Expr::Monomial(self.parse_texp()?))
                    } else {
                        Ok(Expr::Monomial(Exponent::new(vec![Rat::from_integer(
                            1.into(),
                        )])))
                    }
                }
                "X" => {
                    self.next();
                    Ok(Expr::X)
                }
                "root" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let q = self.parse_unsigned_int("root index")? as u32;
                    self.expect(Tok::Comma, ",")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Root(q, Box::new(e)))
                }
                "floor" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Floor(Box::new(e)))
                }
                "val" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Val(Box::new(e)))
                }
                "res" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let j = self.parse_unsigned_int("level")? as usize;
                    self.expect(Tok::Comma, ",")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Res(j, Box::new(e)))
                }
                "coarsen" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let j = self.parse_unsigned_int("level")? as usize;
                    self.expect(Tok::Comma, ",")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Coarsen(j, Box::new(e)))
                }
                "truncate" => {
                    self.next();
                    self.expect(Tok::LParen, "(")?;
                    let e = self.parse_call_arg()?;
                    self.expect(Tok::Comma, ",")?;
                    let bound = self.parse_prec_monomial()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Truncate(Box::new(e), bound))
                }
                other => Err(self.err(format!("unknown name {other:?}"))),
            },
            _ => Err(self.err("expected an expression")),
        }
    }
}

/// Parses an expression, requiring the whole input to be consumed.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser { toks, pos: 0, nesting: 0 };
    let e = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses an exponent written either as `t^...`, as a bare bracket vector
/// `[q1,...,qd]`, or as a bare rational (depth 1).
pub fn parse_exponent(text: &str) -> Result<Exponent> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, nesting: 0 };
    let g = match p.peek() {
        Some(Tok::Ident(name)) if name == "t" => p.parse_prec_monomial()?,
        Some(Tok::LBracket) => p.parse_texp()?,
        _ => {
            let q = p.parse_rational()?;
            Exponent::new(vec![q])
        }
    };
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

fn prec_of(e: &Expr) -> u8 {
    match e {
        Expr::WithPrec(..) => 0,
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn print_prec(e: &Expr, min: u8, out: &mut String) {
    let p = prec_of(e);
    let parens = p < min;
    if parens {
        out.push('(');
    }
    match e {
        Expr::Num(q) => out.push_str(&crate::rational::fmt_rat(q)),
        Expr::Monomial(g) => {
            out.push_str("t^");
            if g.depth() == 1 {
                let s = crate::rational::fmt_rat(&g.coords()[0]);
                if s.contains('/') || s.starts_with('-') {
                    out.push('(');
                    out.push_str(&s);
                    out.push(')');
                } else {
                    out.push_str(&s);
                }
            } else {
                out.push_str(&g.to_string());
            }
        }
        Expr::X => out.push('X'),
        Expr::Neg(x) => {
            out.push('-');
            print_prec(x, 3, out);
        }
        Expr::Add(l, r) => {
            print_prec(l, 1, out);
            out.push_str(" + ");
            print_prec(r, 2, out);
        }
        Expr::Sub(l, r) => {
            print_prec(l, 1, out);
            out.push_str(" - ");
            print_prec(r, 2, out);
        }
        Expr::Mul(l, r) => {
            print_prec(l, 2, out);
            out.push('*');
            print_prec(r, 3, out);
        }
        Expr::Div(l, r) => {
            print_prec(l, 2, out);
            out.push('/');
            print_prec(r, 3, out);
        }
        Expr::Pow(b, n) => {
            out.push('(');
            print_prec(b, 0, out);
            out.push_str(&format!(")^{n}"));
        }
        Expr::Root(q, x) => {
            out.push_str(&format!("root({q}, "));
            print_prec(x, 0, out);
            out.push(')');
        }
        Expr::Floor(x) => {
            out.push_str("floor(");
            print_prec(x, 0, out);
            out.push(')');
        }
        Expr::Val(x) => {
            out.push_str("val(");
            print_prec(x, 0, out);
            out.push(')');
        }
        Expr::Res(j, x) => {
            out.push_str(&format!("res({j}, "));
            print_prec(x, 0, out);
            out.push(')');
        }
        Expr::Coarsen(j, x) => {
            out.push_str(&format!("coarsen({j}, "));
            print_prec(x, 0, out);
            out.push(')');
        }
        Expr::Truncate(x, bound) => {
            out.push_str("truncate(");
            print_prec(x, 0, out);
            out.push_str(&format!(", t^{bound}"));
            out.push(')');
        }
        Expr::WithPrec(x, bound) => {
            print_prec(x, 1, out);
            out.push_str(&format!(" mod t^{bound}"));
        }
    }
    if parens {
        out.push(')');
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        print_prec(self, 0, &mut s);
        write!(f, "{s}")
    }
}
