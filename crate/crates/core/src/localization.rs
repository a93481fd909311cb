//! Localization at generators: σ-normal witnesses and derived inverse rules.

use crate::confluence;
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::presentation::{element_words, Letter, LetterRule, Presentation};
use crate::scalar::Scalar;

/// `e * g = conj(g) * e` for every generator `g`; `conj_inv` is the inverse
/// automorphism on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaNormalWitness {
    pub e: Element,
    pub conj: Vec<Element>,
    pub conj_inv: Vec<Element>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaReport {
    /// `e*g - conj(g)*e` for generators where it is nonzero.
    pub residuals: Vec<(String, Element)>,
    /// Generators where `conj(conj_inv(g))` or `conj_inv(conj(g))` is not `g`.
    pub inverse_failures: Vec<String>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty() && self.inverse_failures.is_empty()
    }

    pub fn render(&self, p: &Presentation) -> String {
        let mut parts: Vec<String> = self
            .residuals
            .iter()
            .map(|(g, r)| format!("{g}: {}", p.render(r)))
            .collect();
        for g in &self.inverse_failures {
            parts.push(format!("{g}: conjugation tables are not mutually inverse"));
        }
        parts.join("; ")
    }
}

fn apply_map(p: &Presentation, images: &[Element], e: &Element) -> Result<Element> {
    let inverses: Vec<Option<Element>> = images.iter().map(|x| p.invert_monomial(x)).collect();
    p.substitute_element(p, e, images, &inverses)
}

pub fn verify_sigma_normal(p: &Presentation, w: &SigmaNormalWitness) -> Result<SigmaReport> {
    let mut report = SigmaReport::default();
    if w.conj.len() != p.len() || w.conj_inv.len() != p.len() {
        return Err(Error::SigmaNormalityFailed(
            "conjugation table does not cover every generator".into(),
        ));
    }
    for (i, g) in p.generators().iter().enumerate() {
        let gen = Element::generator(p.len(), i);
        let lhs = p.mul(&w.e, &gen)?;
        let rhs = p.mul(&w.conj[i], &w.e)?;
        let r = &lhs - &rhs;
        if !r.is_zero() {
            report.residuals.push((g.name.clone(), r));
        }
        let there = apply_map(p, &w.conj, &w.conj_inv[i]);
        let back = apply_map(p, &w.conj_inv, &w.conj[i]);
        if there.as_ref() != Ok(&gen) || back.as_ref() != Ok(&gen) {
            report.inverse_failures.push(g.name.clone());
        }
    }
    Ok(report)
}

fn single_generator(e: &Element) -> Option<usize> {
    let (m, c) = e.as_term()?;
    if !c.is_one() {
        return None;
    }
    let mut nz = m.0.iter().enumerate().filter(|(_, &x)| x != 0);
    let (i, &x) = nz.next()?;
    (x == 1 && nz.next().is_none()).then_some(i)
}

fn check_adjoinable(p: &Presentation, g: usize) -> Result<()> {
    let info = &p.generators()[g];
    if info.invertible {
        return Err(Error::InvalidPresentation(format!(
            "`{}` is already invertible",
            info.name
        )));
    }
    if p.square_rule(g).is_some() {
        return Err(Error::Unsupported(format!(
            "cannot localize `{}`: it has a square rule",
            info.name
        )));
    }
    Ok(())
}

fn words_times(pre: &[Letter], e: &Element, post: &[Letter], c: &Scalar) -> Vec<(Scalar, Vec<Letter>)> {
    element_words(e)
        .into_iter()
        .map(|(k, w)| {
            let mut v = pre.to_vec();
            v.extend(w);
            v.extend_from_slice(post);
            (&k * c, v)
        })
        .collect()
}

/// Makes generator `name` invertible using inverse rules derived from the
/// rule table, then re-runs the overlap check up to `max_degree`.
pub fn adjoin_inverse_generator(p: &Presentation, name: &str, max_degree: usize) -> Result<Presentation> {
    let e = p.position(name)?;
    check_adjoinable(p, e)?;
    let mut out = p.clone();
    out.set_invertible(e);
    let ei = Letter::neg(e);
    for g in 0..p.len() {
        if g == e {
            continue;
        }
        let (hi, lo) = if g > e { (g, e) } else { (e, g) };
        let r = p.rule(hi, lo).expect("complete rule table");
        let qi = r.q.recip().expect("nonzero q");
        let neg_qi = -qi.clone();
        let tail_is_zero = r.tail.is_zero();
        if g > e {
            // g e^-1 -> q^-1 e^-1 g - q^-1 e^-1 T e^-1
            out.insert_letter_rule(
                Letter::pos(g),
                ei,
                LetterRule {
                    swap: Scalar::zero(),
                    tail: std::iter::once((qi.clone(), vec![ei, Letter::pos(g)]))
                        .chain(words_times(&[ei], &r.tail, &[ei], &neg_qi))
                        .collect(),
                },
            );
        } else {
            // e^-1 g -> q^-1 g e^-1 - q^-1 e^-1 T e^-1
            out.insert_letter_rule(
                ei,
                Letter::pos(g),
                LetterRule {
                    swap: qi.clone(),
                    tail: words_times(&[ei], &r.tail, &[ei], &neg_qi),
                },
            );
        }
        if p.generators()[g].invertible {
            if !tail_is_zero {
                return Err(Error::Unsupported(format!(
                    "inverse rule for ({}, {}) needs a zero tail",
                    p.generators()[hi].name,
                    p.generators()[lo].name
                )));
            }
            out.insert_letter_rule(
                Letter::neg(hi),
                Letter::neg(lo),
                LetterRule {
                    swap: r.q.clone(),
                    tail: Vec::new(),
                },
            );
        }
    }
    confluence::validate(out, max_degree)
}

/// Makes generator `w.e` invertible with rules `g e^-1 -> e^-1 conj(g)`
/// (`g > e`) and `e^-1 g -> conj_inv(g) e^-1` (`g < e`) after checking
/// the witness.
pub fn adjoin_inverse_witness(
    p: &Presentation,
    w: &SigmaNormalWitness,
    max_degree: usize,
) -> Result<Presentation> {
    let e = single_generator(&w.e).ok_or_else(|| {
        Error::Unsupported("only generators are localized; use a clearing recipe".into())
    })?;
    check_adjoinable(p, e)?;
    let report = verify_sigma_normal(p, w)?;
    if !report.passed() {
        return Err(Error::SigmaNormalityFailed(report.render(p)));
    }
    let mut out = p.clone();
    out.set_invertible(e);
    let ei = Letter::neg(e);
    let one = Scalar::one();
    for g in 0..p.len() {
        if g == e {
            continue;
        }
        if g > e {
            out.insert_letter_rule(
                Letter::pos(g),
                ei,
                LetterRule {
                    swap: Scalar::zero(),
                    tail: words_times(&[ei], &w.conj[g], &[], &one),
                },
            );
        } else {
            out.insert_letter_rule(
                ei,
                Letter::pos(g),
                LetterRule {
                    swap: Scalar::zero(),
                    tail: words_times(&[], &w.conj_inv[g], &[ei], &one),
                },
            );
        }
        if p.generators()[g].invertible {
            let name = &p.generators()[g].name;
            let (x, y, img) = if g > e {
                // g^-1 e^-1 = (e g)^-1 = e^-1 conj(g)^-1
                (Letter::neg(g), ei, &w.conj[g])
            } else {
                // e^-1 g^-1 = (g e)^-1 = conj_inv(g)^-1 e^-1
                (ei, Letter::neg(g), &w.conj_inv[g])
            };
            let (_, c) = img
                .as_term()
                .filter(|(m, _)| **m == Monomial::generator(p.len(), g))
                .ok_or_else(|| {
                    Error::Unsupported(format!("conjugate of invertible `{name}` is not a multiple of it"))
                })?;
            out.insert_letter_rule(
                x,
                y,
                LetterRule {
                    swap: c.recip().expect("nonzero"),
                    tail: Vec::new(),
                },
            );
        }
    }
    confluence::validate(out, max_degree)
}
