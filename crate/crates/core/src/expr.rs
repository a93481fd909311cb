//! Expression syntax: lexer, parser, renderer and evaluation against a
//! presentation.
//!
//! Names may end in `+` or `-` (`b+`, `b1m`); such a sign belongs to the
//! name when it is directly followed by whitespace, `)`, `,`, `*`, `^`,
//! `;`, `=` or the end of input.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::presentation::{BracketKind, Presentation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Scalar),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Inv(Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Acomm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(Scalar),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    Colon,
    Semi,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Arrow => f.write_str("`->`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn sign_suffix_ends(next: Option<char>) -> bool {
    match next {
        None => true,
        Some(c) => c.is_whitespace() || matches!(c, ')' | ',' | '*' | '^' | ';' | '='),
    }
}

/// Tokenizes one logical line; `line` and `col0` locate its first char.
pub fn lex(src: &str, line: usize, col0: usize) -> std::result::Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, msg: String| SyntaxError {
        line,
        col: col0 + i,
        msg,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if is_ident_start(c) {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            if i < chars.len()
                && (chars[i] == '+' || chars[i] == '-')
                && sign_suffix_ends(chars.get(i + 1).copied())
            {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse::<Scalar>()
                .map_err(|e| err(start, format!("bad number: {e}")))?;
            Tok::Num(n)
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' if chars.get(i) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                _ => return Err(err(start, format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token {
            tok,
            line,
            col: col0 + start,
        });
    }
    Ok(out)
}

/// Cursor over a token slice; statement parsers build on it.
pub struct TokenStream<'a> {
    toks: &'a [Token],
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl<'a> TokenStream<'a> {
    pub fn new(toks: &'a [Token], end_line: usize, end_col: usize) -> Self {
        TokenStream {
            toks,
            pos: 0,
            end_line,
            end_col,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.end_line, self.end_col),
        };
        SyntaxError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(t) => t.to_string(),
            None => "end of line".into(),
        }
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok) -> std::result::Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, found {}", self.describe_next())))
        }
    }

    pub fn ident(&mut self) -> std::result::Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.error(format!("expected a name, found {}", self.describe_next()))),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn integer(&mut self) -> std::result::Result<i64, SyntaxError> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let v: i64 = n
                    .numer()
                    .try_into()
                    .map_err(|_| self.error("integer out of range"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error(format!("expected an integer, found {}", self.describe_next()))),
        }
    }

    pub fn expr(&mut self) -> std::result::Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, SyntaxError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let n = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, SyntaxError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n.clone()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let f = name.as_str();
                if matches!(f, "inv" | "comm" | "acomm") && self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let a = self.operand()?;
                    let out = if f == "inv" {
                        Expr::Inv(Box::new(a))
                    } else {
                        self.expect(&Tok::Comma)?;
                        let b = self.operand()?;
                        if f == "comm" {
                            Expr::Comm(Box::new(a), Box::new(b))
                        } else {
                            Expr::Acomm(Box::new(a), Box::new(b))
                        }
                    };
                    self.expect(&Tok::RParen)?;
                    Ok(out)
                } else {
                    Ok(Expr::Sym(name.clone()))
                }
            }
            _ => Err(self.error(format!(
                "expected an expression, found {}",
                self.describe_next()
            ))),
        }
    }

    fn operand(&mut self) -> std::result::Result<Expr, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Comma) | Some(Tok::RParen) | None) {
            return Err(self.error("empty operand"));
        }
        self.expr()
    }
}

/// Parses a whole string as one expression.
pub fn parse_expr(src: &str) -> std::result::Result<Expr, SyntaxError> {
    let toks = lex(src, 1, 1)?;
    let mut ts = TokenStream::new(&toks, 1, src.chars().count() + 1);
    let e = ts.expr()?;
    if !ts.at_end() {
        return Err(ts.error(format!("unexpected {}", ts.describe_next())));
    }
    Ok(e)
}

impl Expr {
    pub fn sym(s: &str) -> Expr {
        Expr::Sym(s.to_string())
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(n) if n.is_negative() || !n.is_integer() => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(n) => write!(f, "{n}")?,
            Expr::Sym(s) => f.write_str(s)?,
            Expr::Add(a, b) => {
                a.write(f, 1)?;
                f.write_str(" + ")?;
                b.write(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(" - ")?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str("*")?;
                b.write(f, 3)?;
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expr::Pow(a, n) => {
                a.write(f, 5)?;
                write!(f, "^{n}")?;
            }
            Expr::Inv(a) => {
                f.write_str("inv(")?;
                a.write(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Comm(a, b) | Expr::Acomm(a, b) => {
                f.write_str(if matches!(self, Expr::Comm(..)) {
                    "comm("
                } else {
                    "acomm("
                })?;
                a.write(f, 0)?;
                f.write_str(", ")?;
                b.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Symbol names in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Inv(a) => a.collect_symbols(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Comm(a, b)
            | Expr::Acomm(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Sym(_) => false,
            Expr::Inv(_) => true,
            Expr::Pow(a, n) => *n < 0 || a.has_inverse(),
            Expr::Neg(a) => a.has_inverse(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Comm(a, b)
            | Expr::Acomm(a, b) => a.has_inverse() || b.has_inverse(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Evaluates `e` in `p`, resolving symbols through `sym`. `inv` and negative
/// powers accept only monomials in localized generators.
pub fn eval(
    p: &Presentation,
    e: &Expr,
    sym: &mut dyn FnMut(&str) -> Result<Element>,
) -> Result<Element> {
    Ok(match e {
        Expr::Num(n) => p.constant(n.clone()),
        Expr::Sym(s) => sym(s)?,
        Expr::Add(a, b) => &eval(p, a, sym)? + &eval(p, b, sym)?,
        Expr::Sub(a, b) => &eval(p, a, sym)? - &eval(p, b, sym)?,
        Expr::Neg(a) => -&eval(p, a, sym)?,
        Expr::Mul(a, b) => {
            let x = eval(p, a, sym)?;
            let y = eval(p, b, sym)?;
            p.mul(&x, &y)?
        }
        Expr::Pow(a, n) => {
            let x = eval(p, a, sym)?;
            let base = if *n < 0 { invert(p, a, &x)? } else { x };
            p.pow(&base, n.unsigned_abs() as u32)?
        }
        Expr::Inv(a) => {
            let x = eval(p, a, sym)?;
            invert(p, a, &x)?
        }
        Expr::Comm(a, b) => {
            let x = eval(p, a, sym)?;
            let y = eval(p, b, sym)?;
            p.bracket(&x, &y, BracketKind::Comm)?
        }
        Expr::Acomm(a, b) => {
            let x = eval(p, a, sym)?;
            let y = eval(p, b, sym)?;
            p.bracket(&x, &y, BracketKind::Acomm)?
        }
    })
}

fn invert(p: &Presentation, src: &Expr, x: &Element) -> Result<Element> {
    if let Some(inv) = p.invert_monomial(x) {
        return Ok(inv);
    }
    if let Some((m, _)) = x.as_term() {
        for (i, &e) in m.0.iter().enumerate() {
            if e != 0 && !p.generators()[i].invertible {
                return Err(Error::NegativePowerOfNonInvertible(
                    p.generators()[i].name.clone(),
                ));
            }
        }
    }
    Err(Error::NotInvertible(src.to_string()))
}

/// Normal form of an expression over the generators of `p`.
pub fn normal_form(p: &Presentation, e: &Expr) -> Result<Element> {
    eval(p, e, &mut |s| p.gen(s))
}

/// Normal form of `e` with every symbol replaced by its image.
pub fn substitute(p: &Presentation, images: &HashMap<String, Element>, e: &Expr) -> Result<Element> {
    let r = eval(p, e, &mut |s| {
        images
            .get(s)
            .cloned()
            .ok_or_else(|| Error::MissingImage(s.to_string()))
    });
    match r {
        Err(Error::NotInvertible(s)) | Err(Error::NegativePowerOfNonInvertible(s)) => {
            Err(Error::UnregisteredInverse(s))
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_names() {
        let e = parse_expr("b- * b+ + 2*k").unwrap();
        assert_eq!(e.symbols(), vec!["b-", "b+", "k"]);
        let e = parse_expr("b+^2*(b1m-x)").unwrap();
        assert_eq!(e.symbols(), vec!["b+", "b1m", "x"]);
        let e = parse_expr("a+b").unwrap();
        assert!(matches!(e, Expr::Add(..)));
    }

    #[test]
    fn rational_literals_and_render() {
        let e = parse_expr("1/2*inv(b+)*(z + 2*k - 1)").unwrap();
        assert_eq!(e.to_string(), "1/2*inv(b+)*(z + 2*k - 1)");
        let e = parse_expr("-(a*b) - -c^-2").unwrap();
        assert_eq!(e.to_string(), "-(a*b) - -c^-2");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn empty_operand_is_located() {
        let err = parse_expr("comm(x,)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
        assert!(err.msg.contains("empty operand"));
    }
}
