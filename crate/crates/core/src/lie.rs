//! Lie superalgebras given by structure constants.

use std::collections::{BTreeMap, HashMap};

use crate::confluence;
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr, SyntaxError};
use crate::presentation::{Parity, Presentation, PresentationBuilder};
use crate::scalar::Scalar;

/// Sparse linear combination of basis indices.
pub type LieVec = BTreeMap<usize, Scalar>;

fn vec_add_scaled(acc: &mut LieVec, v: &LieVec, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        let e = acc.entry(*i).or_default();
        *e += &(x * c);
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

fn unit(i: usize) -> LieVec {
    LieVec::from([(i, Scalar::one())])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    name: String,
    basis: Vec<(String, Parity)>,
    index: HashMap<String, usize>,
    constants: Vec<Vec<LieVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub antisymmetry: Vec<(usize, usize)>,
    pub parity: Vec<(usize, usize)>,
    pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.is_empty() && self.parity.is_empty() && self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub pair: (String, String),
    /// Bracket of the pair, rendered over the ambient basis.
    pub bracket: String,
    pub escaping: String,
}

/// Every pair `i <= j` whose bracket leaves the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub witnesses: Vec<ClosureWitness>,
}

impl LieSuperAlgebra {
    /// Abelian algebra on the given basis; brackets are added with
    /// [`LieSuperAlgebra::set_bracket`].
    pub fn new(name: impl Into<String>, basis: Vec<(String, Parity)>) -> Self {
        let n = basis.len();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.clone(), i))
            .collect();
        LieSuperAlgebra {
            name: name.into(),
            basis,
            index,
            constants: vec![vec![LieVec::new(); n]; n],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(String, Parity)] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].1
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn constant(&self, i: usize, j: usize) -> &LieVec {
        &self.constants[i][j]
    }

    /// Sets `[x_i, x_j}` and its super-antisymmetric partner.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: LieVec) {
        let sign = -Scalar::sign(self.parity(i).bit() * self.parity(j).bit());
        let mut w = LieVec::new();
        vec_add_scaled(&mut w, &v, &sign);
        self.constants[i][j] = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if i != j {
            self.constants[j][i] = w;
        }
    }

    /// Overwrites a single entry without touching its partner.
    pub fn set_constant_raw(&mut self, i: usize, j: usize, v: LieVec) {
        self.constants[i][j] = v;
    }

    pub fn set_bracket_by_name(&mut self, a: &str, b: &str, v: &[(i64, &str)]) -> Result<()> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        let mut w = LieVec::new();
        for (c, n) in v {
            vec_add_scaled(&mut w, &unit(self.index(n)?), &Scalar::from_int(*c));
        }
        self.set_bracket(i, j, w);
        Ok(())
    }

    pub fn bracket(&self, u: &LieVec, v: &LieVec) -> LieVec {
        let mut out = LieVec::new();
        for (i, a) in u {
            for (j, b) in v {
                vec_add_scaled(&mut out, &self.constants[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn render_vec(&self, v: &LieVec) -> String {
        render_lie_vec(v, |i| self.basis[i].0.as_str())
    }

    /// Antisymmetry, parity and graded Jacobi over all ordered triples.
    pub fn validate_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let p = |i: usize| self.parity(i).bit();
        let mut antisymmetry = Vec::new();
        let mut parity = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut s = self.constants[i][j].clone();
                vec_add_scaled(&mut s, &self.constants[j][i], &Scalar::sign(p(i) * p(j)));
                if !s.is_empty() && i <= j {
                    antisymmetry.push((i, j));
                }
                if self.constants[i][j].keys().any(|&l| p(l) != (p(i) + p(j)) % 2) {
                    parity.push((i, j));
                }
            }
        }
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let mut acc = LieVec::new();
                    let t1 = self.bracket(&x, &self.constants[j][k]);
                    let t2 = self.bracket(&y, &self.constants[k][i]);
                    let t3 = self.bracket(&z, &self.constants[i][j]);
                    vec_add_scaled(&mut acc, &t1, &Scalar::sign(p(i) * p(k)));
                    vec_add_scaled(&mut acc, &t2, &Scalar::sign(p(j) * p(i)));
                    vec_add_scaled(&mut acc, &t3, &Scalar::sign(p(k) * p(j)));
                    if !acc.is_empty() {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        JacobiReport {
            antisymmetry,
            parity,
            violations,
        }
    }

    /// Restricted table on `names`, if their span is bracket-closed.
    pub fn subalgebra(
        &self,
        name: impl Into<String>,
        names: &[&str],
    ) -> Result<std::result::Result<LieSuperAlgebra, ClosureFailure>> {
        let idx: Vec<usize> = names.iter().map(|s| self.index(s)).collect::<Result<_>>()?;
        let mut sub = LieSuperAlgebra::new(
            name,
            idx.iter().map(|&i| self.basis[i].clone()).collect(),
        );
        let mut witnesses = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                let v = &self.constants[i][j];
                let mut w = LieVec::new();
                for (l, c) in v {
                    match idx.iter().position(|&x| x == *l) {
                        Some(pos) => {
                            w.insert(pos, c.clone());
                        }
                        None => {
                            if a <= b {
                                witnesses.push(ClosureWitness {
                                    pair: (self.basis[i].0.clone(), self.basis[j].0.clone()),
                                    bracket: self.render_vec(v),
                                    escaping: self.basis[*l].0.clone(),
                                });
                            }
                            break;
                        }
                    }
                }
                sub.constants[a][b] = w;
            }
        }
        if witnesses.is_empty() {
            Ok(Ok(sub))
        } else {
            Ok(Err(ClosureFailure { witnesses }))
        }
    }

    /// Deterministic bracket table: every pair `i <= j` (diagonal only for
    /// odd elements), sorted by positions.
    pub fn table(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if i == j && self.parity(i) == Parity::Even {
                    continue;
                }
                out.push(TableEntry {
                    anti: self.parity(i) == Parity::Odd && self.parity(j) == Parity::Odd,
                    left: self.basis[i].0.clone(),
                    right: self.basis[j].0.clone(),
                    value: self.constants[i][j]
                        .iter()
                        .map(|(l, c)| (self.basis[*l].0.clone(), c.clone()))
                        .collect(),
                });
            }
        }
        out
    }

    pub fn render_table(&self) -> String {
        self.table().iter().map(|e| format!("{e}\n")).collect()
    }

    /// Enveloping presentation on `order`. Basis elements left out of
    /// `order` must be eliminable as `c = (2/mu) g^2` with `[g,g} = mu c`;
    /// odd generators whose square stays inside `order` get a square rule.
    pub fn enveloping(&self, name: impl Into<String>, order: &[&str]) -> Result<Presentation> {
        let report = self.validate_jacobi();
        if !report.passed() {
            return Err(Error::JacobiFailed(
                report.violations.len() + report.antisymmetry.len() + report.parity.len(),
            ));
        }
        confluence::validate(self.enveloping_unchecked(name, order)?, 3)
    }

    /// [`enveloping`](Self::enveloping) without the Jacobi and overlap checks.
    pub fn enveloping_unchecked(&self, name: impl Into<String>, order: &[&str]) -> Result<Presentation> {
        let pos: Vec<usize> = order.iter().map(|s| self.index(s)).collect::<Result<_>>()?;
        let n = pos.len();
        let slot = |l: usize| pos.iter().position(|&x| x == l);
        let mut elim: HashMap<usize, Element> = HashMap::new();
        let mut squares: Vec<(usize, Element)> = Vec::new();
        for (gi, &g) in pos.iter().enumerate() {
            if self.parity(g) != Parity::Odd {
                continue;
            }
            let v = &self.constants[g][g];
            if v.keys().all(|&l| slot(l).is_some()) {
                let mut t = Element::zero();
                for (l, c) in v {
                    t.add_term(Monomial::generator(n, slot(*l).unwrap()), c * &Scalar::from_frac(1, 2));
                }
                squares.push((gi, t));
            } else if v.len() == 1 {
                let (l, mu) = v.iter().next().unwrap();
                let mut m = vec![0; n];
                m[gi] = 2;
                let c = Scalar::from_int(2) / mu.clone();
                elim.entry(*l).or_insert_with(|| Element::term(Monomial(m), c));
            } else {
                return Err(Error::InvalidPresentation(format!(
                    "square of `{}` is not a multiple of one basis element",
                    self.basis[g].0
                )));
            }
        }
        for l in 0..self.dim() {
            if slot(l).is_none() && !elim.contains_key(&l) {
                return Err(Error::InvalidPresentation(format!(
                    "`{}` is neither a generator nor a square of one",
                    self.basis[l].0
                )));
            }
        }
        let lift = |v: &LieVec| -> Element {
            let mut out = Element::zero();
            for (l, c) in v {
                match slot(*l) {
                    Some(s) => out.add_term(Monomial::generator(n, s), c.clone()),
                    None => out.add_scaled(&elim[l], c),
                }
            }
            out
        };
        let mut b = PresentationBuilder::new(name);
        for &g in &pos {
            b = b.generator(self.basis[g].0.clone(), self.parity(g));
        }
        for hi in 0..n {
            for lo in 0..hi {
                let (gh, gl) = (pos[hi], pos[lo]);
                let sign = Scalar::sign(self.parity(gh).bit() * self.parity(gl).bit());
                let tail = lift(&self.constants[gh][gl]);
                b = b.relation(order[hi], order[lo], sign, tail)?;
            }
        }
        for (gi, t) in squares {
            b = b.square(order[gi], t)?;
        }
        b.build()
    }
}

pub fn render_lie_vec<'a>(v: &LieVec, name: impl Fn(usize) -> &'a str) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (l, c)) in v.iter().enumerate() {
        let shown = if idx == 0 {
            c.clone()
        } else if c.is_negative() {
            out.push_str(" - ");
            c.abs()
        } else {
            out.push_str(" + ");
            c.clone()
        };
        out.push_str(&format!("{}*{}", shown, name(*l)));
    }
    out
}

pub(crate) fn osp_names(n: usize) -> impl Fn(&str, usize, usize) -> String {
    move |kind: &str, i: usize, j: usize| {
        if n == 1 {
            match kind {
                "b+" => "b+".into(),
                "b-" => "b-".into(),
                "c+" => "c+".into(),
                "c-" => "c-".into(),
                _ => "k".into(),
            }
        } else if n == 2 {
            match kind {
                "b+" => format!("b{i}p"),
                "b-" => format!("b{i}m"),
                "c+" => format!("c{i}p"),
                "c-" => format!("c{i}m"),
                "k" => format!("k{i}"),
                "a+" => "ap".into(),
                "a-" => "am".into(),
                "s" => "s".into(),
                _ => "t".into(),
            }
        } else {
            match kind {
                "b+" => format!("b{i}p"),
                "b-" => format!("b{i}m"),
                "c+" => format!("c{i}p"),
                "c-" => format!("c{i}m"),
                "k" => format!("k{i}"),
                "a+" => format!("a{i}{j}p"),
                "a-" => format!("a{i}{j}m"),
                "s" => format!("s{i}{j}"),
                _ => format!("t{i}{j}"),
            }
        }
    }
}

/// osp(1,2n) from the parabose relations. Basis order: `b_i^+`, `b_i^-`,
/// `c_i^+`, `c_i^-`, `a_ij^+`, `a_ij^-`, `s_ij`, `t_ij`, `k_i`.
pub fn build_osp(n: usize) -> Result<LieSuperAlgebra> {
    if n == 0 {
        return Err(Error::InvalidParameters("osp(1,2n) needs n >= 1".into()));
    }
    let name = osp_names(n);
    // odd generator (i, sign) with i in 1..=n and sign = +1 / -1
    let odd: Vec<(usize, i64)> = (1..=n)
        .map(|i| (i, 1))
        .chain((1..=n).map(|i| (i, -1)))
        .collect();
    let mut basis: Vec<(String, Parity)> = odd
        .iter()
        .map(|&(i, s)| (name(if s > 0 { "b+" } else { "b-" }, i, 0), Parity::Odd))
        .collect();
    // even basis element for each unordered pair of odd generators
    let mut even_of: HashMap<((usize, i64), (usize, i64)), usize> = HashMap::new();
    let mut push_even = |basis: &mut Vec<(String, Parity)>, label: String, pairs: Vec<((usize, i64), (usize, i64))>| {
        let idx = basis.len();
        basis.push((label, Parity::Even));
        for (x, y) in pairs {
            even_of.insert((x, y), idx);
            even_of.insert((y, x), idx);
        }
    };
    for s in [1, -1] {
        for i in 1..=n {
            let kind = if s > 0 { "c+" } else { "c-" };
            push_even(&mut basis, name(kind, i, 0), vec![((i, s), (i, s))]);
        }
    }
    for s in [1, -1] {
        for i in 1..=n {
            for j in i + 1..=n {
                let kind = if s > 0 { "a+" } else { "a-" };
                push_even(&mut basis, name(kind, i, j), vec![((i, s), (j, s))]);
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            push_even(&mut basis, name("s", i, j), vec![((i, -1), (j, 1))]);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            push_even(&mut basis, name("t", i, j), vec![((i, 1), (j, -1))]);
        }
    }
    for i in 1..=n {
        push_even(&mut basis, name("k", i, 0), vec![((i, -1), (i, 1))]);
    }
    let odd_idx = |x: (usize, i64)| odd.iter().position(|&o| o == x).unwrap();
    let mut l = LieSuperAlgebra::new(format!("osp(1,{})", 2 * n), basis);
    let half = Scalar::from_frac(1, 2);
    // E(x,y) = 1/2 {b_x, b_y}
    let pairs: Vec<_> = {
        let mut v: Vec<_> = even_of.iter().map(|(&(x, y), &e)| (e, x, y)).collect();
        v.sort();
        v.dedup_by_key(|t| t.0);
        v
    };
    for &x in &odd {
        for &y in &odd {
            let e = even_of[&(x, y)];
            l.constants[odd_idx(x)][odd_idx(y)] = LieVec::from([(e, Scalar::from_int(2))]);
        }
    }
    let eo = |e: usize, z: (usize, i64), x: (usize, i64), y: (usize, i64)| -> LieVec {
        // [E(x,y), b_z] = 1/2 ((eps - xi) d_jl b_y + (eps - eta) d_kl b_x)
        let mut v = LieVec::new();
        let _ = e;
        if x.0 == z.0 {
            vec_add_scaled(&mut v, &unit(odd_idx(y)), &(Scalar::from_int(z.1 - x.1) * half.clone()));
        }
        if y.0 == z.0 {
            vec_add_scaled(&mut v, &unit(odd_idx(x)), &(Scalar::from_int(z.1 - y.1) * half.clone()));
        }
        v
    };
    for &(e, x, y) in &pairs {
        for &z in &odd {
            let v = eo(e, z, x, y);
            let mut w = LieVec::new();
            vec_add_scaled(&mut w, &v, &-Scalar::one());
            l.constants[e][odd_idx(z)] = v;
            l.constants[odd_idx(z)][e] = w;
        }
    }
    for &(e1, x, y) in &pairs {
        for &(e2, z, w) in &pairs {
            // [E(i,j), E(k,l)] = 1/4 [{b_i,b_j},{b_k,b_l}], each {.,.} = 2 E
            let mut v = LieVec::new();
            let terms = [
                (z.1 - y.1, y.0 == z.0, x, w),
                (z.1 - x.1, x.0 == z.0, y, w),
                (w.1 - y.1, y.0 == w.0, x, z),
                (w.1 - x.1, x.0 == w.0, y, z),
            ];
            for (c, hit, a, b) in terms {
                if hit && c != 0 {
                    let idx = even_of[&(a, b)];
                    vec_add_scaled(&mut v, &unit(idx), &(Scalar::from_int(c) * half.clone()));
                }
            }
            l.constants[e1][e2] = v;
        }
    }
    Ok(l)
}

/// The superalgebra f: odd `u`, `w`, even central `z`, `t` with
/// `{u,u} = z`, `{w,w} = t`.
pub fn build_f() -> LieSuperAlgebra {
    let mut l = LieSuperAlgebra::new(
        "f",
        vec![
            ("u".into(), Parity::Odd),
            ("w".into(), Parity::Odd),
            ("z".into(), Parity::Even),
            ("t".into(), Parity::Even),
        ],
    );
    l.set_bracket_by_name("u", "u", &[(1, "z")]).unwrap();
    l.set_bracket_by_name("w", "w", &[(1, "t")]).unwrap();
    l
}

/// `[x,y] = expr` or `{x,y} = expr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub anti: bool,
    pub left: String,
    pub right: String,
    pub value: Vec<(String, Scalar)>,
}

impl std::fmt::Display for TableEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (o, c) = if self.anti { ('{', '}') } else { ('[', ']') };
        let v: LieVec = self
            .value
            .iter()
            .enumerate()
            .map(|(i, (_, s))| (i, s.clone()))
            .collect();
        let names: Vec<&str> = self.value.iter().map(|(n, _)| n.as_str()).collect();
        write!(
            f,
            "{o}{},{}{c} = {}",
            self.left,
            self.right,
            render_lie_vec(&v, |i| names[i])
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("table line {line}: {msg}")]
pub struct TableSyntaxError {
    pub line: usize,
    pub msg: String,
}

fn constant(e: &Expr) -> Option<Scalar> {
    match e {
        Expr::Num(n) => Some(n.clone()),
        Expr::Neg(a) => constant(a).map(|x| -x),
        Expr::Mul(a, b) => Some(constant(a)? * constant(b)?),
        Expr::Add(a, b) => Some(constant(a)? + constant(b)?),
        Expr::Sub(a, b) => Some(constant(a)? - constant(b)?),
        _ => None,
    }
}

/// Linear combination of names from an expression using only `+ - *`,
/// numbers and symbols.
pub fn linear_combination(e: &Expr) -> std::result::Result<Vec<(String, Scalar)>, String> {
    fn go(e: &Expr, c: &Scalar, out: &mut Vec<(String, Scalar)>) -> std::result::Result<(), String> {
        match e {
            Expr::Sym(s) => {
                match out.iter_mut().find(|(n, _)| n == s) {
                    Some((_, v)) => *v += c,
                    None => out.push((s.clone(), c.clone())),
                }
                Ok(())
            }
            Expr::Num(n) if n.is_zero() => Ok(()),
            Expr::Add(a, b) => {
                go(a, c, out)?;
                go(b, c, out)
            }
            Expr::Sub(a, b) => {
                go(a, c, out)?;
                go(b, &-c, out)
            }
            Expr::Neg(a) => go(a, &-c, out),
            Expr::Mul(a, b) => match (constant(a), constant(b)) {
                (Some(n), _) => go(b, &(c * &n), out),
                (_, Some(n)) => go(a, &(c * &n), out),
                _ => Err(format!("`{e}` is not linear")),
            },
            _ => Err(format!("`{e}` is not a linear combination of names")),
        }
    }
    let mut out = Vec::new();
    go(e, &Scalar::one(), &mut out)?;
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

/// Parses table text: one entry per line, `#` comments.
pub fn parse_table(text: &str) -> std::result::Result<Vec<TableEntry>, TableSyntaxError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| TableSyntaxError { line: ln + 1, msg };
        let anti = match line.chars().next() {
            Some('[') => false,
            Some('{') => true,
            _ => return Err(err("expected `[` or `{`".into())),
        };
        let close = if anti { '}' } else { ']' };
        let end = line
            .find(close)
            .ok_or_else(|| err(format!("missing `{close}`")))?;
        let inner = &line[1..end];
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| err("expected `x,y`".into()))?;
        let rest = line[end + 1..].trim();
        let rhs = rest
            .strip_prefix('=')
            .ok_or_else(|| err("expected `=`".into()))?;
        let e = parse_expr(rhs).map_err(|e: SyntaxError| err(e.msg))?;
        let value = linear_combination(&e).map_err(err)?;
        out.push(TableEntry {
            anti,
            left: a.trim().to_string(),
            right: b.trim().to_string(),
            value,
        });
    }
    Ok(out)
}

/// New names as linear combinations of the basis of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    pub entries: Vec<(String, Vec<(String, Scalar)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDiff {
    pub entry: TableEntry,
    pub recomputed: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub checked: usize,
    pub diffs: Vec<TableDiff>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

impl Dictionary {
    /// Identity entries for names of `l` not otherwise bound.
    fn image(&self, l: &LieSuperAlgebra, name: &str) -> Result<LieVec> {
        if let Some((_, comb)) = self.entries.iter().find(|(n, _)| n == name) {
            let mut v = LieVec::new();
            for (b, c) in comb {
                vec_add_scaled(&mut v, &unit(l.index(b)?), c);
            }
            Ok(v)
        } else {
            Ok(unit(l.index(name)?))
        }
    }

    fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// Recomputes every expected entry under the renaming and reports
/// mismatches, rendering recomputed values in the new names when they lie
/// in the span of the renaming.
pub fn compare_table(
    l: &LieSuperAlgebra,
    dict: &Dictionary,
    expected: &[TableEntry],
) -> Result<DiffReport> {
    let mut diffs = Vec::new();
    for e in expected {
        let x = dict.image(l, &e.left)?;
        let y = dict.image(l, &e.right)?;
        let got = l.bracket(&x, &y);
        let mut want = LieVec::new();
        for (n, c) in &e.value {
            vec_add_scaled(&mut want, &dict.image(l, n)?, c);
        }
        let parity_of = |v: &LieVec| v.keys().next().map(|&i| l.parity(i).bit());
        let anti_ok = match (parity_of(&x), parity_of(&y)) {
            (Some(a), Some(b)) => e.anti == (a == 1 && b == 1),
            _ => true,
        };
        if got != want || !anti_ok {
            let recomputed = express(l, dict, &got)
                .unwrap_or_else(|| l.render_vec(&got));
            diffs.push(TableDiff {
                entry: e.clone(),
                recomputed,
            });
        }
    }
    Ok(DiffReport {
        checked: expected.len(),
        diffs,
    })
}

fn express(l: &LieSuperAlgebra, dict: &Dictionary, v: &LieVec) -> Option<String> {
    let names = dict.names();
    coordinates(l, dict, v).map(|c| render_lie_vec(&c, |i| names[i]))
}

/// Coordinates of `v` over the dictionary images, by exact elimination.
fn coordinates(l: &LieSuperAlgebra, dict: &Dictionary, v: &LieVec) -> Option<LieVec> {
    let names = dict.names();
    let cols: Vec<LieVec> = names.iter().map(|n| dict.image(l, n).ok()).collect::<Option<_>>()?;
    let rows = l.dim();
    let m = cols.len();
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c.get(&r).cloned().unwrap_or_default()).collect();
            row.push(v.get(&r).cloned().unwrap_or_default());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..=m {
                    let d = &a[r][k] * &f;
                    a[i][k] = &a[i][k] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut coords = LieVec::new();
    for (i, &c) in pivots.iter().enumerate() {
        if !a[i][m].is_zero() {
            coords.insert(c, a[i][m].clone());
        }
    }
    Some(coords)
}

/// The algebra spanned by the dictionary images, with the dictionary names
/// as basis. Images must be homogeneous, independent and closed.
pub fn transport(l: &LieSuperAlgebra, dict: &Dictionary, name: &str) -> Result<LieSuperAlgebra> {
    let names = dict.names();
    let images: Vec<LieVec> = names.iter().map(|n| dict.image(l, n)).collect::<Result<_>>()?;
    let mut basis = Vec::new();
    for (n, v) in names.iter().zip(&images) {
        let mut ps = v.keys().map(|&i| l.parity(i));
        let p = ps
            .next()
            .ok_or_else(|| Error::InvalidParameters(format!("`{n}` maps to zero")))?;
        if ps.any(|q| q != p) {
            return Err(Error::NonHomogeneousOperand);
        }
        basis.push((n.to_string(), p));
    }
    for (i, v) in images.iter().enumerate() {
        let c = coordinates(l, dict, v);
        if c != Some(LieVec::from([(i, Scalar::one())])) {
            return Err(Error::InvalidParameters(format!("`{}` is not independent", names[i])));
        }
    }
    let mut out = LieSuperAlgebra::new(name, basis);
    for i in 0..images.len() {
        for j in i..images.len() {
            let b = l.bracket(&images[i], &images[j]);
            let c = coordinates(l, dict, &b).ok_or_else(|| {
                Error::InvalidParameters(format!("[{}, {}] leaves the span", names[i], names[j]))
            })?;
            out.set_bracket(i, j, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp12_basic_brackets() {
        let l = build_osp(1).unwrap();
        assert_eq!(l.dim(), 5);
        let (bp, bm, k) = (l.index("b+").unwrap(), l.index("b-").unwrap(), l.index("k").unwrap());
        assert_eq!(l.render_vec(l.constant(bm, bp)), "2*k");
        assert_eq!(l.render_vec(l.constant(k, bp)), "1*b+");
        assert_eq!(l.render_vec(l.constant(k, bm)), "-1*b-");
        assert!(l.validate_jacobi().passed());
    }

    #[test]
    fn table_roundtrip() {
        let l = build_osp(1).unwrap();
        let text = l.render_table();
        let parsed = parse_table(&text).unwrap();
        assert_eq!(parsed, l.table());
    }
}
