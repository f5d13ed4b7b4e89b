//! Expression language for objects on the line.
//!
//! ```text
//! expr := atom | name '(' expr {',' arg} ')'
//! atom := kc(r,r) | ko(r,r) | kco(r,r) | koc(r,r) | dirac(r) | zero
//! ```
//!
//! Calls are `conv` and `sum` (two or more operands), `dual`, `antipodal`,
//! `inverse`, `shift(e, int)` and `translate(e, rat)`.

use std::fmt;

use starconv::interval::TableFn;
use starconv::{Closure, Error, Generator, Interval, Rat, Sheaf1};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Closure, Rat, Rat),
    Dirac(Rat),
    Zero,
    Conv(Vec<Expr>),
    Sum(Vec<Expr>),
    Dual(Box<Expr>),
    Antipodal(Box<Expr>),
    Inverse(Box<Expr>),
    Shift(Box<Expr>, i64),
    Translate(Box<Expr>, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Number(&'a str),
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "'{s}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((i, Tok::LParen)),
            b')' => out.push((i, Tok::RParen)),
            b',' => out.push((i, Tok::Comma)),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(&src[start..i])));
                continue;
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                    i += 1;
                }
                out.push((start, Tok::Number(&src[start..i])));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ParseError { offset: i, message: format!("unexpected character '{ch}'") });
            }
        }
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

fn parse_rat(s: &str, offset: usize) -> Result<Rat, ParseError> {
    let err = |m: &str| ParseError { offset, message: format!("{m}: '{s}'") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
        || den.is_empty()
        || !den.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err("malformed rational"));
    }
    let n: i128 = num.parse().map_err(|_| err("rational out of range"))?;
    let d: i128 = den.parse().map_err(|_| err("rational out of range"))?;
    if d == 0 {
        return Err(err("zero denominator"));
    }
    if n.unsigned_abs() > 1 << 60 || d > 1 << 60 {
        return Err(err("rational out of range"));
    }
    Ok(Rat::new(n, d))
}

/// A rational written `p`, `-p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rat, ParseError> {
    parse_rat(s, 0)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> (usize, Tok<'a>) {
        self.toks[self.pos]
    }

    fn next(&mut self) -> (usize, Tok<'a>) {
        let t = self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok<'static>) -> Result<usize, ParseError> {
        let (at, t) = self.next();
        if t == want {
            Ok(at)
        } else {
            Err(ParseError { offset: at, message: format!("expected {want}, found {t}") })
        }
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        match self.next() {
            (at, Tok::Number(s)) => parse_rat(s, at),
            (at, t) => Err(ParseError { offset: at, message: format!("expected a rational, found {t}") }),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.next() {
            (at, Tok::Number(s)) => {
                s.parse().map_err(|_| ParseError { offset: at, message: format!("expected an integer, found '{s}'") })
            }
            (at, t) => Err(ParseError { offset: at, message: format!("expected an integer, found {t}") }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (at, t) = self.next();
        let name = match t {
            Tok::Ident(name) => name,
            t => return Err(ParseError { offset: at, message: format!("expected an expression, found {t}") }),
        };
        if name == "zero" {
            return Ok(Expr::Zero);
        }
        let closure = match name {
            "kc" => Some(Closure::CC),
            "ko" => Some(Closure::OO),
            "kco" => Some(Closure::CO),
            "koc" => Some(Closure::OC),
            _ => None,
        };
        self.expect(Tok::LParen)?;
        let e = if let Some(c) = closure {
            let lo = self.rat()?;
            self.expect(Tok::Comma)?;
            let hi = self.rat()?;
            Expr::Const(c, lo, hi)
        } else {
            match name {
                "dirac" => Expr::Dirac(self.rat()?),
                "conv" | "sum" => {
                    let mut args = vec![self.expr()?];
                    while self.peek().1 == Tok::Comma {
                        self.next();
                        args.push(self.expr()?);
                    }
                    if args.len() < 2 {
                        return Err(ParseError { offset: at, message: format!("{name} takes at least two operands") });
                    }
                    if name == "conv" {
                        Expr::Conv(args)
                    } else {
                        Expr::Sum(args)
                    }
                }
                "dual" => Expr::Dual(Box::new(self.expr()?)),
                "antipodal" => Expr::Antipodal(Box::new(self.expr()?)),
                "inverse" => Expr::Inverse(Box::new(self.expr()?)),
                "shift" => {
                    let e = self.expr()?;
                    self.expect(Tok::Comma)?;
                    Expr::Shift(Box::new(e), self.int()?)
                }
                "translate" => {
                    let e = self.expr()?;
                    self.expect(Tok::Comma)?;
                    Expr::Translate(Box::new(e), self.rat()?)
                }
                _ => return Err(ParseError { offset: at, message: format!("unknown name '{name}'") }),
            }
        };
        self.expect(Tok::RParen)?;
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    match p.next() {
        (_, Tok::End) => Ok(e),
        (at, t) => Err(ParseError { offset: at, message: format!("unexpected {t} after expression") }),
    }
}

impl Expr {
    /// Evaluates with `table` as the generator convolution rule.
    pub fn eval(&self, table: TableFn) -> Result<Sheaf1, Error> {
        Ok(match self {
            Expr::Const(c, lo, hi) => Sheaf1::constant(Interval::new(*lo, *hi, *c)?),
            Expr::Dirac(x) => Sheaf1::dirac(*x),
            Expr::Zero => Sheaf1::zero(),
            Expr::Conv(args) => {
                let mut acc = args[0].eval(table)?;
                for a in &args[1..] {
                    acc = acc.convolve_with(&a.eval(table)?, table);
                }
                acc
            }
            Expr::Sum(args) => {
                let mut acc = Sheaf1::zero();
                for a in args {
                    acc = acc.sum(&a.eval(table)?);
                }
                acc
            }
            Expr::Dual(e) => e.eval(table)?.dual(),
            Expr::Antipodal(e) => e.eval(table)?.antipodal(),
            Expr::Inverse(e) => e.eval(table)?.inverse_with(table)?,
            Expr::Shift(e, k) => e.eval(table)?.shift(*k),
            Expr::Translate(e, x) => e.eval(table)?.translate(*x),
        })
    }

    /// An expression evaluating to `f`: one summand per copy of each
    /// generator, in canonical order.
    pub fn of_sheaf(f: &Sheaf1) -> Expr {
        let mut parts: Vec<Expr> = Vec::new();
        for g in f.generators() {
            for _ in 0..g.mult {
                parts.push(Expr::of_generator(g));
            }
        }
        match parts.len() {
            0 => Expr::Zero,
            1 => parts.pop().expect("one part"),
            _ => Expr::Sum(parts),
        }
    }

    fn of_generator(g: &Generator) -> Expr {
        let i = g.interval;
        let base = if i.is_point() { Expr::Dirac(i.lo()) } else { Expr::Const(i.closure(), i.lo(), i.hi()) };
        if g.shift == 0 {
            base
        } else {
            Expr::Shift(Box::new(base), g.shift)
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, args: &[Expr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c, lo, hi) => {
                let name = match c {
                    Closure::CC => "kc",
                    Closure::OO => "ko",
                    Closure::CO => "kco",
                    Closure::OC => "koc",
                };
                write!(f, "{name}({lo},{hi})")
            }
            Expr::Dirac(x) => write!(f, "dirac({x})"),
            Expr::Zero => f.write_str("zero"),
            Expr::Conv(args) => write_list(f, "conv", args),
            Expr::Sum(args) => write_list(f, "sum", args),
            Expr::Dual(e) => write!(f, "dual({e})"),
            Expr::Antipodal(e) => write!(f, "antipodal({e})"),
            Expr::Inverse(e) => write!(f, "inverse({e})"),
            Expr::Shift(e, k) => write!(f, "shift({e},{k})"),
            Expr::Translate(e, x) => write!(f, "translate({e},{x})"),
        }
    }
}
