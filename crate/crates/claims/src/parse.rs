use std::collections::HashSet;

use ospfield_core::builtins;
use ospfield_core::centralizer::Mode;
use ospfield_core::expr::{lex, Expr, SyntaxError, Tok, Token, TokenStream};
use thiserror::Error;

use crate::ast::{Script, Statement, Step, Stmt};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{line}:{col}: unknown builtin `{name}`")]
    UnknownBuiltin {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: `{name}` used before it is defined")]
    UseBeforeDefine {
        line: usize,
        col: usize,
        name: String,
    },
}

/// Joins `\` continuations and strips `#` comments; yields the tokens of
/// each logical line with its first physical line number.
fn logical_lines(text: &str) -> Result<Vec<(usize, Vec<Token>, usize, usize)>, SyntaxError> {
    let mut out = Vec::new();
    let mut cur: Option<(usize, Vec<Token>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let (body, cont) = match body.trim_end().strip_suffix('\\') {
            Some(b) => (b, true),
            None => (body, false),
        };
        let toks = lex(body, line, 1)?;
        let entry = cur.get_or_insert_with(|| (line, Vec::new()));
        entry.1.extend(toks);
        if !cont {
            let (start, toks) = cur.take().unwrap();
            if !toks.is_empty() {
                out.push((start, toks, line, body.chars().count() + 1));
            }
        }
    }
    if let Some((start, toks)) = cur {
        if !toks.is_empty() {
            let end = toks.last().map_or((start, 1), |t| (t.line, t.col + 1));
            out.push((start, toks, end.0, end.1));
        }
    }
    Ok(out)
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => s.clone(),
        Tok::Num(n) => n.to_string(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Comma => ",".into(),
        Tok::Eq => "=".into(),
        Tok::Colon => ":".into(),
        Tok::Semi => ";".into(),
        Tok::Arrow => "->".into(),
    }
}

struct Parser<'a> {
    ts: TokenStream<'a>,
    toks: &'a [Token],
}

impl<'a> Parser<'a> {
    fn pos(&self) -> (usize, usize) {
        let e = self.ts.error("");
        (e.line, e.col)
    }

    /// Raw builtin spelling: tokens up to the keyword `stop` or end of line.
    fn builtin(&mut self, stop: &[&str]) -> Result<(String, usize, usize), SyntaxError> {
        let (line, col) = self.pos();
        let mut s = String::new();
        let mut depth = 0i32;
        while let Some(t) = self.ts.peek() {
            if depth == 0 {
                if let Tok::Ident(k) = t {
                    if stop.contains(&k.as_str()) && !s.is_empty() {
                        break;
                    }
                }
            }
            match t {
                Tok::LParen => depth += 1,
                Tok::RParen => depth -= 1,
                _ => {}
            }
            s.push_str(&tok_text(t));
            self.ts.next();
        }
        if s.is_empty() {
            return Err(self.ts.error("expected an algebra name"));
        }
        Ok((s, line, col))
    }

    fn label(&mut self) -> Option<String> {
        match (self.ts.peek(), self.ts.peek_at(1)) {
            (Some(Tok::Ident(l)), Some(Tok::Colon)) => {
                let l = l.clone();
                self.ts.next();
                self.ts.next();
                Some(l)
            }
            _ => None,
        }
    }

    fn recipe(&mut self) -> Result<Vec<Step>, SyntaxError> {
        let mut steps = Vec::new();
        if !self.ts.keyword("via") {
            return Ok(steps);
        }
        loop {
            let step = if self.ts.keyword("lmul") {
                Step::LMul(self.ts.expr()?)
            } else if self.ts.keyword("rmul") {
                Step::RMul(self.ts.expr()?)
            } else if self.ts.keyword("use") {
                Step::Use(self.ts.ident()?)
            } else if self.ts.keyword("cancel") {
                Step::Cancel
            } else {
                return Err(self
                    .ts
                    .error("expected a recipe step (lmul, rmul, use, cancel)"));
            };
            steps.push(step);
            if !self.ts.eat(&Tok::Semi) {
                return Ok(steps);
            }
        }
    }

    fn pair(&mut self) -> Result<(Expr, Expr), SyntaxError> {
        let a = self.ts.expr()?;
        self.ts.expect(&Tok::Comma)?;
        Ok((a, self.ts.expr()?))
    }

    fn param(&mut self, name: &str) -> Result<(), SyntaxError> {
        if !self.ts.keyword(name) {
            return Err(self.ts.error(format!("expected `{name}=`")));
        }
        self.ts.expect(&Tok::Eq)
    }

    fn natural(&mut self) -> Result<u64, SyntaxError> {
        let v = self.ts.integer()?;
        u64::try_from(v).map_err(|_| self.ts.error("expected a nonnegative integer"))
    }

    fn maps(&mut self) -> Result<Vec<(String, Expr)>, SyntaxError> {
        let mut v = Vec::new();
        loop {
            let g = self.ts.ident()?;
            self.ts.expect(&Tok::Arrow)?;
            v.push((g, self.ts.expr()?));
            if !self.ts.eat(&Tok::Comma) {
                return Ok(v);
            }
        }
    }

    fn statement(&mut self) -> Result<(Stmt, Option<(String, usize, usize)>), SyntaxError> {
        let kw = self.ts.ident()?;
        let mut builtin_ref = None;
        let stmt = match kw.as_str() {
            "algebra" | "lie" => {
                let name = self.ts.ident()?;
                self.ts.expect(&Tok::Eq)?;
                let (b, l, c) = self.builtin(&[])?;
                builtin_ref = Some((b.clone(), l, c));
                if kw == "algebra" {
                    Stmt::Algebra { name, builtin: b }
                } else {
                    builtin_ref = None;
                    Stmt::Lie { name, builtin: b }
                }
            }
            "let" => {
                let name = self.ts.ident()?;
                self.ts.expect(&Tok::Eq)?;
                Stmt::Let {
                    name,
                    expr: self.ts.expr()?,
                }
            }
            "assert_zero" => {
                let label = self.label();
                let expr = self.ts.expr()?;
                Stmt::AssertZero {
                    label,
                    expr,
                    recipe: self.recipe()?,
                }
            }
            "assert_eq" | "assert_commute" | "assert_anticommute" => {
                let label = self.label();
                let (a, b) = self.pair()?;
                let recipe = self.recipe()?;
                match kw.as_str() {
                    "assert_eq" => Stmt::AssertEq {
                        label,
                        lhs: a,
                        rhs: b,
                        recipe,
                    },
                    "assert_commute" => Stmt::AssertCommute {
                        label,
                        a,
                        b,
                        recipe,
                    },
                    _ => Stmt::AssertAnticommute {
                        label,
                        a,
                        b,
                        recipe,
                    },
                }
            }
            "assert_central" => {
                let expr = self.ts.expr()?;
                let mut among = Vec::new();
                if self.ts.keyword("in") {
                    self.ts.expect(&Tok::LParen)?;
                    loop {
                        among.push(self.ts.expr()?);
                        if !self.ts.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.ts.expect(&Tok::RParen)?;
                }
                Stmt::AssertCentral { expr, among }
            }
            "sigma_normal" => {
                let name = self.ts.ident()?;
                self.ts.expect(&Tok::Colon)?;
                let conj = self.maps()?;
                let mut inverse = Vec::new();
                if self.ts.eat(&Tok::Semi) {
                    if !self.ts.keyword("inverse") {
                        return Err(self.ts.error("expected `inverse`"));
                    }
                    inverse = self.maps()?;
                }
                Stmt::SigmaNormal {
                    name,
                    conj,
                    inverse,
                }
            }
            "adjoin_inverse" => Stmt::AdjoinInverse {
                name: self.ts.ident()?,
            },
            "represent" => {
                self.param("target")?;
                let (target, l, c) = self.builtin(&["gens"])?;
                builtin_ref = Some((target.clone(), l, c));
                self.param("gens")?;
                self.ts.expect(&Tok::LParen)?;
                let mut gens = Vec::new();
                loop {
                    gens.push(self.ts.expr()?);
                    if !self.ts.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.ts.expect(&Tok::RParen)?;
                let mut relations = Vec::new();
                let mut witnesses = Vec::new();
                loop {
                    if self.ts.keyword("rel") {
                        let a = self.ts.ident()?;
                        self.ts.expect(&Tok::Comma)?;
                        let b = self.ts.ident()?;
                        relations.push((a, b, self.recipe()?));
                    } else if self.ts.keyword("witness") {
                        let g = self.ts.ident()?;
                        self.ts.expect(&Tok::Eq)?;
                        let e = self.ts.expr()?;
                        witnesses.push((g, e, self.recipe()?));
                    } else {
                        break;
                    }
                }
                Stmt::Represent {
                    target,
                    gens,
                    relations,
                    witnesses,
                }
            }
            "center_dim" => {
                self.param("d")?;
                let degree = self.natural()? as u32;
                self.param("expect")?;
                let expect = self.natural()? as usize;
                let mode = if self.ts.keyword("super") {
                    Mode::Supercommute
                } else {
                    Mode::Commute
                };
                Stmt::CenterDim {
                    degree,
                    expect,
                    mode,
                }
            }
            "compare_table" => {
                self.param("dictionary")?;
                self.ts.expect(&Tok::LParen)?;
                let mut dictionary = Vec::new();
                loop {
                    let n = self.ts.ident()?;
                    self.ts.expect(&Tok::Eq)?;
                    dictionary.push((n, self.ts.expr()?));
                    if !self.ts.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.ts.expect(&Tok::RParen)?;
                self.param("golden")?;
                let (golden, _, _) = self.builtin(&[])?;
                Stmt::CompareTable { dictionary, golden }
            }
            "assert_jacobi" => Stmt::AssertJacobi,
            "assert_closed" => {
                self.ts.expect(&Tok::LParen)?;
                let mut basis = vec![self.ts.ident()?];
                while self.ts.eat(&Tok::Comma) {
                    basis.push(self.ts.ident()?);
                }
                self.ts.expect(&Tok::RParen)?;
                Stmt::AssertClosed { basis }
            }
            "assert_confluent" => {
                self.param("d")?;
                Stmt::AssertConfluent {
                    degree: self.natural()? as usize,
                }
            }
            other => {
                return Err(SyntaxError {
                    line: self.toks[0].line,
                    col: self.toks[0].col,
                    msg: format!("unknown statement `{other}`"),
                })
            }
        };
        if !self.ts.at_end() {
            return Err(self.ts.error("unexpected trailing input"));
        }
        Ok((stmt, builtin_ref))
    }
}

/// Parses a claim script and checks builtin names and definition order.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut script = Script::default();
    let mut scope = Scope::default();
    for (line, toks, end_line, end_col) in logical_lines(text)? {
        let mut p = Parser {
            ts: TokenStream::new(&toks, end_line, end_col),
            toks: &toks,
        };
        let (stmt, builtin_ref) = p.statement()?;
        if let Some((name, l, c)) = builtin_ref {
            if builtins::generator_names(&name).is_err() {
                return Err(ParseError::UnknownBuiltin {
                    line: l,
                    col: c,
                    name,
                });
            }
        }
        scope.check(&stmt, &toks)?;
        script.statements.push(Statement { line, stmt });
    }
    Ok(script)
}

#[derive(Default)]
struct Scope {
    /// `None` until an `algebra` statement.
    names: Option<HashSet<String>>,
}

fn locate(toks: &[Token], name: &str) -> (usize, usize) {
    toks.iter()
        .find(|t| matches!(&t.tok, Tok::Ident(s) if s == name))
        .map_or((toks[0].line, toks[0].col), |t| (t.line, t.col))
}

impl Scope {
    fn need(&self, toks: &[Token], exprs: &[&Expr]) -> Result<(), ParseError> {
        for e in exprs {
            for s in e.symbols() {
                let ok = self.names.as_ref().is_some_and(|n| n.contains(&s));
                if !ok {
                    let (line, col) = locate(toks, &s);
                    return Err(ParseError::UseBeforeDefine { line, col, name: s });
                }
            }
        }
        Ok(())
    }

    fn need_name(&self, toks: &[Token], s: &str) -> Result<(), ParseError> {
        if self.names.as_ref().is_some_and(|n| n.contains(s)) {
            Ok(())
        } else {
            let (line, col) = locate(toks, s);
            Err(ParseError::UseBeforeDefine {
                line,
                col,
                name: s.to_string(),
            })
        }
    }

    fn steps<'e>(steps: &'e [Step], out: &mut Vec<&'e Expr>) {
        for s in steps {
            if let Step::LMul(e) | Step::RMul(e) = s {
                out.push(e);
            }
        }
    }

    fn check(&mut self, stmt: &Stmt, toks: &[Token]) -> Result<(), ParseError> {
        let mut exprs: Vec<&Expr> = Vec::new();
        match stmt {
            Stmt::Algebra { builtin, .. } => {
                let gens = builtins::generator_names(builtin).unwrap_or_default();
                self.names = Some(gens.into_iter().collect());
                return Ok(());
            }
            Stmt::Let { name, expr } => {
                self.need(toks, &[expr])?;
                if let Some(n) = self.names.as_mut() {
                    n.insert(name.clone());
                }
                return Ok(());
            }
            Stmt::AssertZero { expr, recipe, .. } => {
                exprs.push(expr);
                Self::steps(recipe, &mut exprs);
            }
            Stmt::AssertEq {
                lhs: a,
                rhs: b,
                recipe,
                ..
            }
            | Stmt::AssertCommute { a, b, recipe, .. }
            | Stmt::AssertAnticommute { a, b, recipe, .. } => {
                exprs.push(a);
                exprs.push(b);
                Self::steps(recipe, &mut exprs);
            }
            Stmt::AssertCentral { expr, among } => {
                exprs.push(expr);
                exprs.extend(among);
            }
            Stmt::SigmaNormal {
                name,
                conj,
                inverse,
            } => {
                self.need_name(toks, name)?;
                for (g, e) in conj.iter().chain(inverse) {
                    self.need_name(toks, g)?;
                    exprs.push(e);
                }
            }
            Stmt::AdjoinInverse { name } => self.need_name(toks, name)?,
            Stmt::Represent {
                gens,
                relations,
                witnesses,
                ..
            } => {
                exprs.extend(gens);
                for (_, _, r) in relations {
                    Self::steps(r, &mut exprs);
                }
                for (g, e, r) in witnesses {
                    self.need_name(toks, g)?;
                    exprs.push(e);
                    Self::steps(r, &mut exprs);
                }
            }
            Stmt::CenterDim { .. } | Stmt::AssertConfluent { .. } => {
                if self.names.is_none() {
                    return Err(ParseError::UseBeforeDefine {
                        line: toks[0].line,
                        col: toks[0].col,
                        name: "algebra".into(),
                    });
                }
            }
            Stmt::Lie { .. }
            | Stmt::CompareTable { .. }
            | Stmt::AssertJacobi
            | Stmt::AssertClosed { .. } => {}
        }
        self.need(toks, &exprs)
    }
}
