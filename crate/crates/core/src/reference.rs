//! Model algebras (Weyl, fermionic, mixed and braided) and relation graphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::confluence;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::frac::{self, CertificateReport, FracExpr, RepresentationCertificate};
use crate::lie::{build_f, LieSuperAlgebra};
use crate::localization::adjoin_inverse_generator;
use crate::presentation::{Parity, Presentation, PresentationBuilder};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A1,
    Afermi,
    Mixed { r: usize, s: usize, t: usize },
    Hat { r: usize, s: usize, t: usize },
    S3,
    S4,
    F,
    Sl2,
}

/// Algebra with generators in `order`; `weyl` pairs satisfy `ab - ba = 1`,
/// `fermi` pairs `ab + ba = 1`, `anti` pairs `ab = -ba`; the rest commute.
pub fn quadratic(
    name: &str,
    order: &[&str],
    weyl: &[(&str, &str)],
    fermi: &[(&str, &str)],
    anti: &[(&str, &str)],
) -> Result<Presentation> {
    let mut b = PresentationBuilder::new(name);
    for g in order {
        b = b.generator(*g, Parity::Even);
    }
    let n = order.len();
    let one = Element::one(n);
    for (a, c) in weyl {
        b = b.commutator(a, c, one.clone())?;
    }
    for (a, c) in fermi {
        b = b.anticommutator(a, c, one.clone())?;
    }
    for (a, c) in anti {
        b = b.anticommutator(a, c, Element::zero())?;
    }
    confluence::validate(b.commute_rest().build()?, 3)
}

pub fn build(f: Family) -> Result<Presentation> {
    match f {
        Family::A1 => quadratic("A1", &["x", "y"], &[("x", "y")], &[], &[]),
        Family::Afermi => quadratic("Afermi", &["u", "v"], &[], &[("u", "v")], &[]),
        Family::Mixed { r, s, t } => {
            let names = family_names(r, s, t, "v");
            let order: Vec<&str> = names.iter().map(String::as_str).collect();
            let weyl: Vec<(String, String)> = (1..=r).map(|i| (format!("x{i}"), format!("y{i}"))).collect();
            let fermi: Vec<(String, String)> = (1..=s).map(|i| (format!("u{i}"), format!("v{i}"))).collect();
            quadratic(
                &format!("A({r},{s},{t})"),
                &order,
                &pairs(&weyl),
                &pairs(&fermi),
                &[],
            )
        }
        Family::Hat { r, s, t } => {
            let names = family_names(r, s, t, "w");
            let order: Vec<&str> = names.iter().map(String::as_str).collect();
            let weyl: Vec<(String, String)> = (1..=r).map(|i| (format!("x{i}"), format!("y{i}"))).collect();
            let anti: Vec<(String, String)> = (1..=s).map(|i| (format!("u{i}"), format!("w{i}"))).collect();
            quadratic(
                &format!("hatA({r},{s},{t})"),
                &order,
                &pairs(&weyl),
                &[],
                &pairs(&anti),
            )
        }
        Family::S3 => quadratic("S3", &["x", "y", "z"], &[("x", "y")], &[], &[("x", "z"), ("y", "z")]),
        Family::S4 => quadratic(
            "S4",
            &["x1", "x2", "y1", "y2"],
            &[("x1", "y1"), ("x2", "y2")],
            &[],
            &[("x1", "y2"), ("x1", "x2"), ("x2", "y1"), ("y1", "y2")],
        ),
        Family::F => build_f().enveloping("f", &["u", "w", "z", "t"]),
        Family::Sl2 => sl2().enveloping("sl2", &["e", "k", "f"]),
    }
}

fn pairs(v: &[(String, String)]) -> Vec<(&str, &str)> {
    v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

pub fn family_names(r: usize, s: usize, t: usize, second: &str) -> Vec<String> {
    let mut v = Vec::new();
    v.extend((1..=r).map(|i| format!("x{i}")));
    v.extend((1..=r).map(|i| format!("y{i}")));
    v.extend((1..=s).map(|i| format!("u{i}")));
    v.extend((1..=s).map(|i| format!("{second}{i}")));
    v.extend((1..=t).map(|i| format!("z{i}")));
    v
}

/// sl(2) with `[k,e] = 2e`, `[k,f] = -2f`, `[e,f] = k`.
pub fn sl2() -> LieSuperAlgebra {
    let mut l = LieSuperAlgebra::new(
        "sl2",
        ["e", "k", "f"].iter().map(|s| (s.to_string(), Parity::Even)).collect(),
    );
    l.set_bracket_by_name("k", "e", &[(2, "e")]).unwrap();
    l.set_bracket_by_name("k", "f", &[(-2, "f")]).unwrap();
    l.set_bracket_by_name("e", "f", &[(1, "k")]).unwrap();
    l
}

/// Subalgebra of U(osp(1,2)) on `b+ < k < z` with `z = 2 b+ b- - 2k + 1`.
pub fn osp12z() -> Result<Presentation> {
    let b = PresentationBuilder::new("osp12z")
        .generator("b+", Parity::Odd)
        .generator("k", Parity::Even)
        .generator("z", Parity::Even);
    let bp = b.word(Scalar::one(), &[("b+", 1)])?;
    let b = b
        .commutator("k", "b+", bp)?
        .anticommutator("z", "b+", Element::zero())?
        .commute_rest();
    confluence::validate(b.build()?, 3)
}

/// Presentations drawn for the three subsuperalgebras of osp(1,4).
pub fn illustration(which: &str) -> Result<Presentation> {
    match which {
        "n+" => quadratic("illus-n+", &["tp", "ap", "y", "b1p"], &[("tp", "ap")], &[], &[("y", "b1p")]),
        "b+" => quadratic(
            "illus-b+",
            &["k2p", "ap", "k1p", "b1p", "yp", "tpp"],
            &[("k2p", "ap"), ("k1p", "b1p"), ("yp", "tpp")],
            &[],
            &[("k1p", "tpp"), ("k1p", "yp"), ("yp", "b1p"), ("b1p", "tpp")],
        ),
        "p+" => quadratic(
            "illus-p+",
            &["u1", "v1", "k1pp", "w1", "u2", "v2", "z2"],
            &[("u1", "v1"), ("k1pp", "w1"), ("u2", "v2")],
            &[],
            &[("z2", "u2"), ("z2", "v2")],
        ),
        other => Err(Error::InvalidParameters(format!("no illustration `{other}`"))),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationGraph {
    pub name: String,
    pub vertices: Vec<String>,
    /// `(a, b)` with `ab - ba = 1`.
    pub directed: Vec<(String, String)>,
    /// `(a, b)` with `ab = -ba`.
    pub dotted: Vec<(String, String)>,
    /// Pairs with other tails: `(lo, hi, q, tail)`.
    pub annotated: Vec<(String, String, Scalar, String)>,
}

pub fn graph(p: &Presentation) -> Result<RelationGraph> {
    let names: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    let mut g = RelationGraph {
        name: p.name().to_string(),
        vertices: names.clone(),
        ..Default::default()
    };
    let mut rules: Vec<_> = p.rules().iter().collect();
    rules.sort_by_key(|r| (r.lo, r.hi));
    let one = Scalar::one();
    let minus = -Scalar::one();
    for r in rules {
        let (lo, hi) = (names[r.lo].clone(), names[r.hi].clone());
        let tail = r.tail.as_scalar();
        match (&r.q, tail) {
            (q, Some(c)) if *q == one && c.is_zero() => {}
            (q, Some(c)) if *q == one && c == minus => g.directed.push((lo, hi)),
            (q, Some(c)) if *q == one && c == one => g.directed.push((hi, lo)),
            (q, Some(c)) if *q == minus && c.is_zero() => g.dotted.push((lo, hi)),
            (q, _) if *q == one || *q == minus => {
                g.annotated.push((lo, hi, q.clone(), p.render(&r.tail)));
            }
            _ => return Err(Error::UnclassifiablePair(hi, lo)),
        }
    }
    Ok(g)
}

impl RelationGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", self.name);
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (a, b) in &self.directed {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
        }
        for (a, b) in &self.dotted {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\" [dir=none, style=dotted];");
        }
        for (a, b, q, tail) in &self.annotated {
            let style = if q.is_negative() { ", style=dotted" } else { "" };
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\" [dir=none{style}, label=\"{tail}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// `w = 2uv - 1` in the fermionic algebra: anticommutation with `u` and
/// `v`, and the certificate recovering `v = 1/2 inv(u) (w + 1)`.
pub fn fermionic_change_of_variables() -> Result<CertificateReport> {
    let a = build(Family::Afermi)?;
    let src = adjoin_inverse_generator(&a, "u", 3)?;
    let parse = |s: &str| expr::parse_expr(s).expect("fixed expression");
    let w = expr::normal_form(&src, &parse("2*u*v - 1"))?;
    let mut images = HashMap::new();
    images.insert("w".to_string(), w.clone());
    images.insert("u".to_string(), src.gen("u")?);
    images.insert("v".to_string(), src.gen("v")?);
    let target = build(Family::Hat { r: 0, s: 1, t: 0 })?;
    let mut cert = RepresentationCertificate {
        target,
        images: vec![FracExpr::atom(src.gen("u")?), FracExpr::atom(w)],
        relation_recipes: HashMap::new(),
        witnesses: Vec::new(),
    };
    for (g, e) in [("u", "u"), ("v", "1/2*u^-1*(w + 1)")] {
        let v = expr::substitute(&src, &images, &parse(e))?;
        cert.witnesses.push((g.to_string(), FracExpr::atom(v), Vec::new()));
    }
    let mut report = frac::represent(&src, &cert, &HashMap::new())?;
    for (label, e) in [("acomm(w, u)", "acomm(w, u)"), ("acomm(w, v)", "acomm(w, v)")] {
        let r = expr::substitute(&src, &images, &parse(e))?;
        report.relations.push(frac::CertificateItem {
            label: label.to_string(),
            outcome: Ok(if r.is_zero() {
                frac::Outcome::Pass
            } else {
                frac::Outcome::Fail(src.render(&r))
            }),
        });
    }
    Ok(report)
}

/// Checks the relations of `target` on images in `host` localized at
/// `invert` (relations only).
pub fn embedding_witness(
    host: &Presentation,
    invert: &[&str],
    images: &[(&str, Expr)],
    target: &Presentation,
) -> Result<CertificateReport> {
    let mut h = host.clone();
    for g in invert {
        h = adjoin_inverse_generator(&h, g, 3)?;
    }
    let mut ims = Vec::new();
    for g in target.generators() {
        let (_, e) = images
            .iter()
            .find(|(n, _)| *n == g.name)
            .ok_or_else(|| Error::MissingImage(g.name.clone()))?;
        ims.push(FracExpr::atom(expr::normal_form(&h, e)?));
    }
    let cert = RepresentationCertificate {
        target: target.clone(),
        images: ims,
        relation_recipes: HashMap::new(),
        witnesses: Vec::new(),
    };
    frac::represent(&h, &cert, &HashMap::new())
}
