//! PBW-type presentations and the straightening engine.
//!
//! A presentation orders its generators `g_0 < g_1 < ... < g_{n-1}` and
//! carries, for every pair `hi > lo`, a rule `g_hi g_lo -> q g_lo g_hi + tail`.
//! Normal forms are exponent vectors in generator order. Localized
//! generators extend their exponent range to the integers; the rules
//! for words mixing a generator and an inverse are stored as
//! [`LetterRule`]s.

use std::collections::HashMap;
use std::fmt;

use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u32) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub name: String,
    pub parity: Parity,
    pub position: usize,
    pub invertible: bool,
}

/// `g_hi g_lo -> q g_lo g_hi + tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub hi: usize,
    pub lo: usize,
    pub q: Scalar,
    pub tail: Element,
}

/// A generator or the inverse of a localized generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    fn step(self) -> i32 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// `x y -> swap * y x + sum(c * word)` for a descending letter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterRule {
    pub swap: Scalar,
    pub tail: Vec<(Scalar, Word)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketKind {
    Comm,
    Acomm,
    Super,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    gens: Vec<GeneratorInfo>,
    index: HashMap<String, usize>,
    rules: Vec<RewriteRule>,
    /// Odd generators `g` with `g g -> square[g]`.
    squares: Vec<Option<Element>>,
    letter_rules: HashMap<(Letter, Letter), LetterRule>,
    budget: u64,
    validated: bool,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
            && self.rules == other.rules
            && self.squares == other.squares
            && self.letter_rules == other.letter_rules
    }
}

/// Incremental construction of a [`Presentation`]; every generator pair
/// needs a rule before [`PresentationBuilder::build`] succeeds.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    name: String,
    gens: Vec<(String, Parity)>,
    rules: HashMap<(usize, usize), (Scalar, Element)>,
    squares: HashMap<usize, Element>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder {
            name: name.into(),
            gens: Vec::new(),
            rules: HashMap::new(),
            squares: HashMap::new(),
        }
    }

    pub fn generator(mut self, name: impl Into<String>, parity: Parity) -> Self {
        self.gens.push((name.into(), parity));
        self
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Element `c * prod g^e` over the generators declared so far, padded
    /// to the final generator count at build time.
    pub fn word(&self, c: Scalar, factors: &[(&str, i32)]) -> Result<Element> {
        let mut exps = vec![0; self.gens.len()];
        for (name, e) in factors {
            exps[self.position(name)?] += e;
        }
        Ok(Element::term(Monomial(exps), c))
    }

    /// Sets the relation `a b = q b a + tail` for `a != b`, orienting it
    /// along the generator order.
    pub fn relation(mut self, a: &str, b: &str, q: Scalar, tail: Element) -> Result<Self> {
        let (ia, ib) = (self.position(a)?, self.position(b)?);
        if ia == ib {
            return Err(Error::InvalidPresentation(format!("self-relation on `{a}`")));
        }
        if ia > ib {
            self.rules.insert((ia, ib), (q, tail));
        } else {
            // a b = q b a + T  <=>  b a = q^{-1} a b - q^{-1} T
            let qi = q
                .recip()
                .ok_or_else(|| Error::InvalidPresentation(format!("zero q on ({a}, {b})")))?;
            let t = tail.scale(&-qi.clone());
            self.rules.insert((ib, ia), (qi, t));
        }
        Ok(self)
    }

    /// `a b - b a = tail`.
    pub fn commutator(self, a: &str, b: &str, tail: Element) -> Result<Self> {
        self.relation(a, b, Scalar::one(), tail)
    }

    /// `a b + b a = tail`.
    pub fn anticommutator(self, a: &str, b: &str, tail: Element) -> Result<Self> {
        self.relation(a, b, -Scalar::one(), tail)
    }

    /// `g g -> tail` for an odd generator.
    pub fn square(mut self, g: &str, tail: Element) -> Result<Self> {
        let i = self.position(g)?;
        self.squares.insert(i, tail);
        Ok(self)
    }

    /// Declares every pair without a rule to commute.
    pub fn commute_rest(mut self) -> Self {
        let n = self.gens.len();
        for hi in 0..n {
            for lo in 0..hi {
                self.rules
                    .entry((hi, lo))
                    .or_insert_with(|| (Scalar::one(), Element::zero()));
            }
        }
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let n = self.gens.len();
        let mut index = HashMap::new();
        let mut gens = Vec::with_capacity(n);
        for (i, (name, parity)) in self.gens.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{name}`")));
            }
            gens.push(GeneratorInfo {
                name: name.clone(),
                parity: *parity,
                position: i,
                invertible: false,
            });
        }
        let pad = |e: &Element| -> Element {
            let mut out = Element::zero();
            for (m, c) in e.terms() {
                let mut v = m.0.clone();
                v.resize(n, 0);
                out.add_term(Monomial(v), c.clone());
            }
            out
        };
        let mut rules = Vec::new();
        let mut letter_rules = HashMap::new();
        for hi in 0..n {
            for lo in 0..hi {
                let (q, tail) = self.rules.get(&(hi, lo)).ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "no rule for pair ({}, {})",
                        gens[hi].name, gens[lo].name
                    ))
                })?;
                if q.is_zero() {
                    return Err(Error::InvalidPresentation(format!(
                        "zero q on ({}, {})",
                        gens[hi].name, gens[lo].name
                    )));
                }
                let tail = pad(tail);
                for (m, _) in tail.terms() {
                    if m.degree() > 2 || m.0.iter().any(|&e| e < 0) {
                        return Err(Error::InvalidPresentation(format!(
                            "tail of ({}, {}) is not below the word in the reduction order",
                            gens[hi].name, gens[lo].name
                        )));
                    }
                }
                letter_rules.insert(
                    (Letter::pos(hi), Letter::pos(lo)),
                    LetterRule {
                        swap: q.clone(),
                        tail: element_words(&tail),
                    },
                );
                rules.push(RewriteRule {
                    hi,
                    lo,
                    q: q.clone(),
                    tail,
                });
            }
        }
        let mut squares = vec![None; n];
        for (i, t) in self.squares {
            if gens[i].parity != Parity::Odd {
                return Err(Error::InvalidPresentation(format!(
                    "square rule on even generator `{}`",
                    gens[i].name
                )));
            }
            let t = pad(&t);
            if t.degree().unwrap_or(0) > 1 {
                return Err(Error::InvalidPresentation(format!(
                    "square tail of `{}` must have degree at most 1",
                    gens[i].name
                )));
            }
            squares[i] = Some(t);
        }
        Ok(Presentation {
            name: self.name,
            gens,
            index,
            rules,
            squares,
            letter_rules,
            budget: DEFAULT_BUDGET,
            validated: false,
        })
    }
}

/// Letters of a normal monomial, in order.
pub fn monomial_word(m: &Monomial) -> Word {
    let mut w = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        let l = if e < 0 { Letter::neg(i) } else { Letter::pos(i) };
        for _ in 0..e.unsigned_abs() {
            w.push(l);
        }
    }
    w
}

pub fn element_words(e: &Element) -> Vec<(Scalar, Word)> {
    e.terms().map(|(m, c)| (c.clone(), monomial_word(m))).collect()
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, hi: usize, lo: usize) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.hi == hi && r.lo == lo)
    }

    pub fn square_rule(&self, g: usize) -> Option<&Element> {
        self.squares.get(g).and_then(Option::as_ref)
    }

    pub fn has_square_rules(&self) -> bool {
        self.squares.iter().any(Option::is_some)
    }

    pub fn letter_rule(&self, x: Letter, y: Letter) -> Option<&LetterRule> {
        self.letter_rules.get(&(x, y))
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub(crate) fn mark_validated(&mut self) {
        self.validated = true;
    }

    pub fn is_localized(&self) -> bool {
        self.gens.iter().any(|g| g.invertible)
    }

    pub fn odd_mask(&self) -> Vec<bool> {
        self.gens.iter().map(|g| g.parity == Parity::Odd).collect()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(Element::generator(self.len(), self.position(name)?))
    }

    pub fn one(&self) -> Element {
        Element::one(self.len())
    }

    pub fn constant(&self, c: Scalar) -> Element {
        Element::constant(self.len(), c)
    }

    /// Normal form of `c * prod g^e` where factors may come in any order.
    pub fn word(&self, c: Scalar, factors: &[(&str, i32)]) -> Result<Element> {
        let mut w = Vec::new();
        for (name, e) in factors {
            let i = self.position(name)?;
            let l = if *e < 0 { Letter::neg(i) } else { Letter::pos(i) };
            for _ in 0..e.unsigned_abs() {
                w.push(l);
            }
        }
        Ok(self.normal_word(&w)?.scale(&c))
    }

    /// Normal form of a word of letters.
    pub fn normal_word(&self, w: &[Letter]) -> Result<Element> {
        let mut s = Straightener::new(self);
        s.word(&self.one(), w)
    }

    pub fn normal_words(&self, ws: &[(Scalar, Word)]) -> Result<Element> {
        let mut s = Straightener::new(self);
        let one = self.one();
        let mut out = Element::zero();
        for (c, w) in ws {
            out.add_scaled(&s.word(&one, w)?, c);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Straightener::new(self).mul(a, b)
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&Element]) -> Result<Element> {
        let mut s = Straightener::new(self);
        let mut acc = self.one();
        for f in factors {
            acc = s.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Element, n: u32) -> Result<Element> {
        let mut s = Straightener::new(self);
        let mut acc = self.one();
        for _ in 0..n {
            acc = s.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn bracket(&self, a: &Element, b: &Element, kind: BracketKind) -> Result<Element> {
        let sign = match kind {
            BracketKind::Comm => -Scalar::one(),
            BracketKind::Acomm => Scalar::one(),
            BracketKind::Super => {
                let odd = self.odd_mask();
                let pa = a.parity(&odd);
                let pb = b.parity(&odd);
                match (a.is_zero(), b.is_zero(), pa, pb) {
                    (true, _, _, _) | (_, true, _, _) => return Ok(Element::zero()),
                    (_, _, Some(1), Some(1)) => Scalar::one(),
                    (_, _, Some(_), Some(_)) => -Scalar::one(),
                    _ => return Err(Error::NonHomogeneousOperand),
                }
            }
        };
        let mut s = Straightener::new(self);
        let mut out = s.mul(a, b)?;
        out.add_scaled(&s.mul(b, a)?, &sign);
        Ok(out)
    }

    pub fn comm(&self, a: &Element, b: &Element) -> Result<Element> {
        self.bracket(a, b, BracketKind::Comm)
    }

    pub fn acomm(&self, a: &Element, b: &Element) -> Result<Element> {
        self.bracket(a, b, BracketKind::Acomm)
    }

    /// Inverse of `c * m` when every generator with nonzero exponent in
    /// `m` is localized.
    pub fn invert_monomial(&self, e: &Element) -> Option<Element> {
        let (m, c) = e.as_term()?;
        let ci = c.recip()?;
        let mut w = Vec::new();
        for (i, &x) in m.0.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            if !self.gens[i].invertible {
                return None;
            }
            let l = if x > 0 { Letter::neg(i) } else { Letter::pos(i) };
            for _ in 0..x.unsigned_abs() {
                w.push(l);
            }
        }
        self.normal_word(&w).ok().map(|e| e.scale(&ci))
    }

    /// Homomorphic image of `e` under generator images; negative exponents
    /// need an image inverse.
    pub fn substitute_element(
        &self,
        target: &Presentation,
        e: &Element,
        images: &[Element],
        inverse_images: &[Option<Element>],
    ) -> Result<Element> {
        let mut s = Straightener::new(target);
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let mut acc = target.one();
            for (i, &x) in m.0.iter().enumerate() {
                let f = if x < 0 {
                    inverse_images
                        .get(i)
                        .and_then(Option::as_ref)
                        .ok_or_else(|| Error::UnregisteredInverse(self.gens[i].name.clone()))?
                } else {
                    &images[i]
                };
                for _ in 0..x.unsigned_abs() {
                    acc = s.mul(&acc, f)?;
                }
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    pub fn render(&self, e: &Element) -> String {
        render_with(e, |i| self.gens[i].name.as_str())
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        render_monomial_with(m, |i| self.gens[i].name.as_str())
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let n = &self.gens[l.gen].name;
                if l.inv {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Word-level rewrite of the pair at `i`, `i+1`, if reducible.
    pub(crate) fn rewrite_pair(&self, x: Letter, y: Letter) -> Option<Vec<(Scalar, Word)>> {
        if x.gen > y.gen {
            let r = self.letter_rule(x, y)?;
            let mut out = Vec::new();
            if !r.swap.is_zero() {
                out.push((r.swap.clone(), vec![y, x]));
            }
            out.extend(r.tail.iter().cloned());
            Some(out)
        } else if x.gen == y.gen && x.inv != y.inv {
            Some(vec![(Scalar::one(), Vec::new())])
        } else if x.gen == y.gen && !x.inv && !y.inv {
            self.square_rule(x.gen).map(element_words)
        } else {
            None
        }
    }

    pub(crate) fn set_invertible(&mut self, g: usize) {
        self.gens[g].invertible = true;
    }

    pub(crate) fn insert_letter_rule(&mut self, x: Letter, y: Letter, r: LetterRule) {
        self.letter_rules.insert((x, y), r);
    }
}

pub fn render_monomial_with<'a>(m: &Monomial, name: impl Fn(usize) -> &'a str) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                name(i).to_string()
            } else {
                format!("{}^{}", name(i), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `-1*b+*b- + 2*k`: graded order, coefficients always printed.
pub fn render_with<'a>(e: &Element, name: impl Fn(usize) -> &'a str + Copy) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.sorted_terms().into_iter().enumerate() {
        let shown = if idx == 0 {
            c.clone()
        } else if c.is_negative() {
            out.push_str(" - ");
            c.abs()
        } else {
            out.push_str(" + ");
            c.clone()
        };
        if m.is_one() {
            out.push_str(&shown.to_string());
        } else {
            out.push_str(&format!("{}*{}", shown, render_monomial_with(m, name)));
        }
    }
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "presentation {}", self.name)?;
        let names: Vec<_> = self
            .gens
            .iter()
            .map(|g| {
                let mut s = g.name.clone();
                if g.parity == Parity::Odd {
                    s.push_str(" (odd)");
                }
                if g.invertible {
                    s.push_str(" (inv)");
                }
                s
            })
            .collect();
        writeln!(f, "generators: {}", names.join(" < "))?;
        for r in &self.rules {
            writeln!(
                f,
                "{}*{} -> {}",
                self.gens[r.hi].name,
                self.gens[r.lo].name,
                render_rule_rhs(self, r)
            )?;
        }
        for (i, s) in self.squares.iter().enumerate() {
            if let Some(t) = s {
                writeln!(f, "{0}*{0} -> {1}", self.gens[i].name, self.render(t))?;
            }
        }
        Ok(())
    }
}

fn render_rule_rhs(p: &Presentation, r: &RewriteRule) -> String {
    let mut e = r.tail.clone();
    let mut m = vec![0; p.len()];
    m[r.lo] = 1;
    m[r.hi] = 1;
    e.add_term(Monomial(m), r.q.clone());
    p.render(&e)
}

/// Memoizing rewriter for one computation; counts rule applications
/// against the presentation's budget.
pub struct Straightener<'a> {
    p: &'a Presentation,
    memo: HashMap<(Monomial, Letter), Element>,
    steps: u64,
}

impl<'a> Straightener<'a> {
    pub fn new(p: &'a Presentation) -> Self {
        Straightener {
            p,
            memo: HashMap::new(),
            steps: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.p.budget {
            Err(Error::ReductionBudgetExceeded(self.p.budget))
        } else {
            Ok(())
        }
    }

    pub fn mul(&mut self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in b.terms() {
            let w = monomial_word(m);
            out.add_scaled(&self.word(a, &w)?, c);
        }
        Ok(out)
    }

    /// `a * w` for a word `w`.
    pub fn word(&mut self, a: &Element, w: &[Letter]) -> Result<Element> {
        let mut acc = a.clone();
        for &l in w {
            acc = self.elem_letter(&acc, l)?;
        }
        Ok(acc)
    }

    fn elem_letter(&mut self, a: &Element, y: Letter) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let r = self.mono_letter(m, y)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn mono_letter(&mut self, m: &Monomial, y: Letter) -> Result<Element> {
        let p = self.p;
        let Some(gy) = p.gens.get(y.gen) else {
            return Err(Error::UnknownGenerator(format!("#{}", y.gen)));
        };
        if y.inv && !gy.invertible {
            return Err(Error::NegativePowerOfNonInvertible(gy.name.clone()));
        }
        let last = m.0.iter().rposition(|&e| e != 0);
        match last {
            None => {
                let mut v = m.0.clone();
                v[y.gen] += y.step();
                return Ok(Element::monomial(Monomial(v)));
            }
            Some(j) if j < y.gen => {
                let mut v = m.0.clone();
                v[y.gen] += y.step();
                return Ok(Element::monomial(Monomial(v)));
            }
            Some(j) if j == y.gen => {
                let e = m.0[j];
                let new = e + y.step();
                if let (Some(sq), false) = (p.square_rule(j), y.inv) {
                    if new >= 2 {
                        self.tick()?;
                        let mut v = m.0.clone();
                        v[j] = new - 2;
                        let base = Element::monomial(Monomial(v));
                        return self.mul(&base, sq);
                    }
                }
                let mut v = m.0.clone();
                v[j] = new;
                return Ok(Element::monomial(Monomial(v)));
            }
            _ => {}
        }
        let key = (m.clone(), y);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let j = last.unwrap();
        let x = if m.0[j] < 0 {
            Letter::neg(j)
        } else {
            Letter::pos(j)
        };
        let mut rest = m.0.clone();
        rest[j] -= x.step();
        let rest = Monomial(rest);
        let rule = p.letter_rule(x, y).ok_or_else(|| {
            let nx = p.render_word(&[x]);
            let ny = p.render_word(&[y]);
            Error::UnregisteredInverse(format!("no rule for {nx}*{ny}"))
        })?;
        self.tick()?;
        let swap = rule.swap.clone();
        let tail = rule.tail.clone();
        let mut out = Element::zero();
        if !swap.is_zero() {
            let ry = self.mono_letter(&rest, y)?;
            let ryx = self.elem_letter(&ry, x)?;
            out.add_scaled(&ryx, &swap);
        }
        let rest_e = Element::monomial(rest);
        for (c, w) in &tail {
            let t = self.word(&rest_e, w)?;
            out.add_scaled(&t, c);
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp12() -> Presentation {
        let b = PresentationBuilder::new("osp12")
            .generator("b+", Parity::Odd)
            .generator("k", Parity::Even)
            .generator("b-", Parity::Odd);
        let bp = b.word(Scalar::one(), &[("b+", 1)]).unwrap();
        let bm = b.word(Scalar::one(), &[("b-", 1)]).unwrap();
        let k2 = b.word(Scalar::from_int(2), &[("k", 1)]).unwrap();
        b.commutator("k", "b+", bp)
            .unwrap()
            .commutator("k", "b-", -&bm)
            .unwrap()
            .anticommutator("b-", "b+", k2)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn eq8_straightening() {
        let p = osp12();
        let e = p.word(Scalar::one(), &[("b-", 1), ("b+", 1)]).unwrap();
        assert_eq!(p.render(&e), "-1*b+*b- + 2*k");
        let sq = p.word(Scalar::one(), &[("b+", 2)]).unwrap();
        assert_eq!(p.render(&sq), "1*b+^2");
    }

    #[test]
    fn k_past_b_plus_squared() {
        // k b+ b+ - b+ b+ k = 2 (b+)^2
        let p = osp12();
        let a = p.word(Scalar::one(), &[("k", 1), ("b+", 2)]).unwrap();
        let b = p.word(Scalar::one(), &[("b+", 2), ("k", 1)]).unwrap();
        assert_eq!(p.render(&(&a - &b)), "2*b+^2");
    }

    #[test]
    fn incomplete_rules_rejected() {
        let r = PresentationBuilder::new("x")
            .generator("a", Parity::Even)
            .generator("b", Parity::Even)
            .build();
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn negative_power_rejected() {
        let p = osp12();
        let r = p.word(Scalar::one(), &[("k", -1)]);
        assert_eq!(r, Err(Error::NegativePowerOfNonInvertible("k".into())));
        assert!(matches!(p.gen("q"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn budget_guard() {
        let p = osp12().with_budget(3);
        let r = p.word(Scalar::one(), &[("b-", 3), ("b+", 3)]);
        assert_eq!(r, Err(Error::ReductionBudgetExceeded(3)));
    }

    #[test]
    fn super_bracket_dispatch() {
        let p = osp12();
        let bp = p.gen("b+").unwrap();
        let bm = p.gen("b-").unwrap();
        let k = p.gen("k").unwrap();
        let two_k = k.scale(&Scalar::from_int(2));
        assert_eq!(p.bracket(&bm, &bp, BracketKind::Super).unwrap(), two_k);
        assert_eq!(p.bracket(&k, &bp, BracketKind::Super).unwrap(), bp);
        let mixed = &bp + &k;
        assert_eq!(
            p.bracket(&mixed, &bp, BracketKind::Super),
            Err(Error::NonHomogeneousOperand)
        );
    }
}
