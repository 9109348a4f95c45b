//! Expression syntax: integer literals, `p/q` via division, the identifiers
//! `a1 a3 c4 c6 Delta q x y`, the operators `+ - * / ^`, parentheses, and the
//! function forms `fstar qstar hstar tstar delta O`.
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, unary `-`, `^`. The
//! exponent operator is right associative and its exponent may be negated,
//! so `Delta^-2` parses.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ident {
    A1,
    A3,
    C4,
    C6,
    Delta,
    Q,
    /// Coordinates on the curve; they appear in function-field output.
    X,
    Y,
}

impl Ident {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "a1" => Ident::A1,
            "a3" => Ident::A3,
            "c4" => Ident::C4,
            "c6" => Ident::C6,
            "Delta" => Ident::Delta,
            "q" => Ident::Q,
            "x" => Ident::X,
            "y" => Ident::Y,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Ident::A1 => "a1",
            Ident::A3 => "a3",
            Ident::C4 => "c4",
            Ident::C6 => "c6",
            Ident::Delta => "Delta",
            Ident::Q => "q",
            Ident::X => "x",
            Ident::Y => "y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Fstar,
    Qstar,
    Hstar,
    Tstar,
    Delta,
    /// `O(q^N)`: truncation marker.
    BigO,
}

impl Func {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "fstar" => Func::Fstar,
            "qstar" => Func::Qstar,
            "hstar" => Func::Hstar,
            "tstar" => Func::Tstar,
            "delta" => Func::Delta,
            "O" => Func::BigO,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Fstar => "fstar",
            Func::Qstar => "qstar",
            Func::Hstar => "hstar",
            Func::Tstar => "tstar",
            Func::Delta => "delta",
            Func::BigO => "O",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(Ident),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorKind {
    UnknownIdentifier(String),
    MalformedLiteral(String),
    UnbalancedParens,
    UnexpectedChar(char),
    Unexpected(String),
    UnexpectedEnd,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier '{s}'"),
            ErrorKind::MalformedLiteral(s) => write!(f, "malformed literal '{s}'"),
            ErrorKind::UnbalancedParens => write!(f, "unbalanced parentheses"),
            ErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ErrorKind::Unexpected(s) => write!(f, "unexpected '{s}'"),
            ErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(Ident),
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(i) => write!(f, "{}", i.name()),
            Tok::Func(g) => write!(f, "{}", g.name()),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(kind: ErrorKind, p: Pos) -> ParseError {
    ParseError { kind, line: p.line, column: p.column }
}

fn lex(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let here = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let word = |i: &mut usize| {
            while *i < chars.len() && (chars[*i].is_ascii_alphanumeric() || chars[*i] == '_' || chars[*i] == '.') {
                *i += 1;
            }
        };
        let tok = if c.is_ascii_digit() {
            word(&mut i);
            let s: String = chars[start..i].iter().collect();
            if !s.chars().all(|d| d.is_ascii_digit()) {
                return Err(err(ErrorKind::MalformedLiteral(s), here));
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            word(&mut i);
            let s: String = chars[start..i].iter().collect();
            match (Ident::from_name(&s), Func::from_name(&s)) {
                (Some(id), _) => Tok::Ident(id),
                (_, Some(f)) => Tok::Func(f),
                _ => return Err(err(ErrorKind::UnknownIdentifier(s), here)),
            }
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => return Err(err(ErrorKind::UnexpectedChar(c), here)),
            }
        };
        col += i - start;
        out.push((tok, here));
    }
    Ok((out, Pos { line, column: col }))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
    i: usize,
    open: Vec<Pos>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.i) {
            None if !self.open.is_empty() => err(ErrorKind::UnbalancedParens, *self.open.last().expect("open")),
            None => err(ErrorKind::UnexpectedEnd, self.end),
            Some((Tok::RParen, p)) if self.open.is_empty() => err(ErrorKind::UnbalancedParens, *p),
            Some((t, p)) => err(ErrorKind::Unexpected(t.to_string()), *p),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.i += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.i += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn parenthesized(&mut self) -> Result<Expr, ParseError> {
        let p = self.pos();
        if !self.eat(&Tok::LParen) {
            return Err(self.unexpected());
        }
        self.open.push(p);
        let e = self.sum()?;
        if !self.eat(&Tok::RParen) {
            return Err(self.unexpected());
        }
        self.open.pop();
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let e = match self.peek().cloned() {
            Some(Tok::Int(n)) => Expr::Int(n),
            Some(Tok::Ident(id)) => Expr::Var(id),
            Some(Tok::Func(f)) => {
                self.i += 1;
                return Ok(Expr::Call(f, Box::new(self.parenthesized()?)));
            }
            Some(Tok::LParen) => return self.parenthesized(),
            _ => return Err(self.unexpected()),
        };
        self.i += 1;
        Ok(e)
    }
}

fn parser(text: &str) -> Result<Parser, ParseError> {
    let (toks, end) = lex(text)?;
    Ok(Parser { toks, end, i: 0, open: Vec::new() })
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = parser(text)?;
    let e = p.sum()?;
    if p.i < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// A comma-separated list of expressions, as in `--curve a1,0,a3,0,0`.
pub fn parse_list(text: &str) -> Result<Vec<Expr>, ParseError> {
    let mut p = parser(text)?;
    let mut out = vec![p.sum()?];
    while p.eat(&Tok::Comma) {
        out.push(p.sum()?);
    }
    if p.i < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(id) => write!(f, "{}", id.name()),
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, 3)
            }
            Expr::Bin(op, l, r) => {
                let (sym, lp) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                };
                l.write_at(f, lp)?;
                write!(f, "{sym}")?;
                r.write_at(f, lp + 1)
            }
            Expr::Pow(b, e) => {
                b.write_at(f, 5)?;
                write!(f, "^")?;
                e.write_at(f, 3)
            }
            Expr::Call(g, x) => {
                write!(f, "{}(", g.name())?;
                x.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse("-a1^2").unwrap().to_string(), "-a1^2");
        assert!(matches!(parse("-a1^2").unwrap(), Expr::Neg(_)));
        assert!(matches!(parse("2^3^2").unwrap(), Expr::Pow(_, ref e) if matches!(**e, Expr::Pow(..))));
        assert_eq!(parse("(a1 + a3)*c4").unwrap().to_string(), "(a1 + a3)*c4");
        assert_eq!(parse("a1 - (a3 - c4)").unwrap().to_string(), "a1 - (a3 - c4)");
        assert_eq!(parse("(a1^2)^3").unwrap().to_string(), "(a1^2)^3");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("c4^^2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse("a1 +\n  b7").unwrap_err();
        assert_eq!((e.line, e.column, e.kind.clone()), (2, 3, ErrorKind::UnknownIdentifier("b7".into())));
        assert_eq!(parse("(a1 + a3").unwrap_err().kind, ErrorKind::UnbalancedParens);
        assert_eq!(parse("a1)").unwrap_err().column, 3);
        assert!(matches!(parse("12x").unwrap_err().kind, ErrorKind::MalformedLiteral(_)));
        assert_eq!(parse("").unwrap_err().kind, ErrorKind::UnexpectedEnd);
    }
}
