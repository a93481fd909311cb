//! Expressions with inverse symbols of non-monomial elements, denominator
//! clearing recipes and change-of-generators certificates.
//!
//! A [`FracExpr`] is a sum of terms `c * f_1 * ... * f_r` where every factor
//! is a polynomial atom or the formal inverse of one. Factors are never
//! merged across an inverse, so a recipe can cancel `x * inv(x)` by value.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::presentation::Presentation;
use crate::scalar::Scalar;

const IDENTITY_ROUNDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Atom(Element),
    Inv(Element),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracTerm {
    pub coef: Scalar,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FracExpr {
    pub terms: Vec<FracTerm>,
}

impl FracTerm {
    pub fn has_inverse(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, Factor::Inv(_)))
    }
}

impl FracExpr {
    pub fn zero() -> Self {
        FracExpr::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        if c.is_zero() {
            return FracExpr::zero();
        }
        FracExpr {
            terms: vec![FracTerm {
                coef: c,
                factors: Vec::new(),
            }],
        }
    }

    pub fn atom(e: Element) -> Self {
        if let Some(c) = e.as_scalar() {
            return FracExpr::scalar(c);
        }
        FracExpr {
            terms: vec![FracTerm {
                coef: Scalar::one(),
                factors: vec![Factor::Atom(e)],
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_inverse(&self) -> bool {
        self.terms.iter().any(FracTerm::has_inverse)
    }

    pub fn add(&self, other: &FracExpr) -> FracExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FracExpr { terms }.simplify()
    }

    pub fn scale(&self, c: &Scalar) -> FracExpr {
        FracExpr {
            terms: self
                .terms
                .iter()
                .map(|t| FracTerm {
                    coef: &t.coef * c,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
        .simplify()
    }

    pub fn sub(&self, other: &FracExpr) -> FracExpr {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &FracExpr) -> FracExpr {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(FracTerm {
                    coef: &a.coef * &b.coef,
                    factors,
                });
            }
        }
        FracExpr { terms }.simplify()
    }

    /// Folds scalar atoms, cancels adjacent `x * inv(x)` and `inv(x) * x`,
    /// and combines terms with identical factor lists.
    pub fn simplify(self) -> FracExpr {
        let mut combined: Vec<FracTerm> = Vec::new();
        let mut index: HashMap<Vec<Factor>, usize> = HashMap::new();
        'terms: for t in self.terms {
            let mut coef = t.coef;
            let mut out: Vec<Factor> = Vec::new();
            for f in t.factors {
                let scalar = match &f {
                    Factor::Atom(e) => e.as_scalar(),
                    Factor::Inv(e) => e.as_scalar().map(|c| c.recip().unwrap_or_default()),
                };
                if let Some(c) = scalar {
                    coef = &coef * &c;
                    if coef.is_zero() {
                        continue 'terms;
                    }
                    continue;
                }
                let cancels = match (out.last(), &f) {
                    (Some(Factor::Atom(a)), Factor::Inv(b)) | (Some(Factor::Inv(a)), Factor::Atom(b)) => a == b,
                    _ => false,
                };
                if cancels {
                    out.pop();
                } else {
                    out.push(f);
                }
            }
            if coef.is_zero() {
                continue;
            }
            match index.get(&out) {
                Some(&i) => combined[i].coef = &combined[i].coef + &coef,
                None => {
                    index.insert(out.clone(), combined.len());
                    combined.push(FracTerm { coef, factors: out });
                }
            }
        }
        combined.retain(|t| !t.coef.is_zero());
        FracExpr { terms: combined }
    }

    /// Inverse-free value, if no inverse symbol survives collapsing.
    pub fn to_element(&self, p: &Presentation) -> Result<Option<Element>> {
        let c = collapse(p, self)?;
        Ok(c.rest.is_empty().then_some(c.poly))
    }

    pub fn render(&self, p: &Presentation) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let c = if i == 0 {
                t.coef.clone()
            } else if t.coef.is_negative() {
                out.push_str(" - ");
                t.coef.abs()
            } else {
                out.push_str(" + ");
                t.coef.clone()
            };
            let _ = write!(out, "{c}");
            for f in &t.factors {
                match f {
                    Factor::Atom(e) => {
                        let s = p.render(e);
                        if e.len() > 1 {
                            let _ = write!(out, "*({s})");
                        } else {
                            let _ = write!(out, "*{s}");
                        }
                    }
                    Factor::Inv(e) => {
                        let _ = write!(out, "*inv({})", p.render(e));
                    }
                }
            }
        }
        out
    }
}

/// Polynomial part plus the inverse-carrying terms that did not vanish.
pub struct Collapsed {
    pub poly: Element,
    pub rest: Vec<FracTerm>,
}

fn gaps(p: &Presentation, t: &FracTerm) -> Result<(Vec<Element>, Vec<Element>)> {
    // term = c * G0 inv(E1) G1 inv(E2) ... Gr with polynomial gaps G_i
    let mut gs = vec![p.one()];
    let mut invs = Vec::new();
    for f in &t.factors {
        match f {
            Factor::Atom(e) => {
                let last = gs.last_mut().unwrap();
                *last = p.mul(last, e)?;
            }
            Factor::Inv(e) => {
                invs.push(e.clone());
                gs.push(p.one());
            }
        }
    }
    Ok((gs, invs))
}

/// Multiplies out inverse-free terms and sums inverse terms that share
/// everything but their first (then last) polynomial gap.
pub fn collapse(p: &Presentation, x: &FracExpr) -> Result<Collapsed> {
    let mut poly = Element::zero();
    let mut pending: Vec<(Vec<Element>, Vec<Element>, Scalar)> = Vec::new();
    for t in &x.terms {
        let (gs, invs) = gaps(p, t)?;
        if invs.is_empty() {
            poly.add_scaled(&gs[0], &t.coef);
        } else {
            pending.push((gs, invs, t.coef.clone()));
        }
    }
    for side in [0usize, 1] {
        let mut groups: Vec<((Vec<Element>, Vec<Element>), Element)> = Vec::new();
        for (gs, invs, c) in pending.drain(..) {
            let (free, key_gaps) = if side == 0 {
                (gs[0].clone(), gs[1..].to_vec())
            } else {
                (gs[gs.len() - 1].clone(), gs[..gs.len() - 1].to_vec())
            };
            let key = (key_gaps, invs);
            let scaled = free.scale(&c);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, acc)) => *acc = &*acc + &scaled,
                None => groups.push((key, scaled)),
            }
        }
        for ((key_gaps, invs), acc) in groups {
            if acc.is_zero() {
                continue;
            }
            let gs = if side == 0 {
                std::iter::once(acc).chain(key_gaps).collect()
            } else {
                key_gaps.into_iter().chain(std::iter::once(acc)).collect()
            };
            pending.push((gs, invs, Scalar::one()));
        }
    }
    let rest = pending
        .into_iter()
        .map(|(gs, invs, c)| {
            let mut factors = Vec::new();
            for (i, g) in gs.into_iter().enumerate() {
                if i > 0 {
                    factors.push(Factor::Inv(invs[i - 1].clone()));
                }
                factors.push(Factor::Atom(g));
            }
            FracTerm { coef: c, factors }
        })
        .collect::<Vec<_>>();
    let rest = FracExpr { terms: rest }.simplify().terms;
    Ok(Collapsed { poly, rest })
}

/// A named value: the raw fraction expression and, when inverse symbols
/// cancel out, its polynomial normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub raw: FracExpr,
    pub collapsed: Option<Element>,
}

impl Binding {
    pub fn new(p: &Presentation, raw: FracExpr) -> Result<Self> {
        let collapsed = raw.to_element(p)?;
        Ok(Binding { raw, collapsed })
    }

    pub fn reference(&self) -> FracExpr {
        match &self.collapsed {
            Some(e) => FracExpr::atom(e.clone()),
            None => self.raw.clone(),
        }
    }
}

fn invert_factor(p: &Presentation, f: &Factor) -> Factor {
    match f {
        Factor::Atom(e) => match p.invert_monomial(e) {
            Some(i) => Factor::Atom(i),
            None => Factor::Inv(e.clone()),
        },
        Factor::Inv(e) => Factor::Atom(e.clone()),
    }
}

/// Inverse of a value: monomials in localized generators invert exactly,
/// single terms invert factorwise, other polynomials become `inv(..)`.
pub fn invert(p: &Presentation, x: &FracExpr, collapsed: Option<&Element>, src: &str) -> Result<FracExpr> {
    let collapsed = match collapsed {
        Some(e) => Some(e.clone()),
        None => x.to_element(p)?,
    };
    if let Some(e) = &collapsed {
        if e.is_zero() {
            return Err(Error::NotInvertible(format!("{src} is zero")));
        }
        if let Some(i) = p.invert_monomial(e) {
            return Ok(FracExpr::atom(i));
        }
    }
    if let [t] = x.terms.as_slice() {
        if t.has_inverse() || collapsed.is_none() {
            let coef = t.coef.recip().expect("nonzero coefficient");
            let factors = t.factors.iter().rev().map(|f| invert_factor(p, f)).collect();
            return Ok(FracExpr {
                terms: vec![FracTerm { coef, factors }],
            }
            .simplify());
        }
    }
    match collapsed {
        Some(e) => match e.as_scalar() {
            Some(c) => Ok(FracExpr::scalar(c.recip().expect("nonzero"))),
            None => Ok(FracExpr {
                terms: vec![FracTerm {
                    coef: Scalar::one(),
                    factors: vec![Factor::Inv(e)],
                }],
            }),
        },
        None => Err(Error::NotInvertible(src.to_string())),
    }
}

/// Evaluates an expression into a [`FracExpr`]; names resolve through
/// `lookup`, falling back to generators of `p`.
pub fn eval_frac(
    p: &Presentation,
    e: &Expr,
    lookup: &dyn Fn(&str) -> Option<Binding>,
) -> Result<FracExpr> {
    Ok(match e {
        Expr::Num(n) => FracExpr::scalar(n.clone()),
        Expr::Sym(s) => match lookup(s) {
            Some(b) => b.reference(),
            None => FracExpr::atom(p.gen(s)?),
        },
        Expr::Add(a, b) => eval_frac(p, a, lookup)?.add(&eval_frac(p, b, lookup)?),
        Expr::Sub(a, b) => eval_frac(p, a, lookup)?.sub(&eval_frac(p, b, lookup)?),
        Expr::Neg(a) => eval_frac(p, a, lookup)?.scale(&-Scalar::one()),
        Expr::Mul(a, b) => eval_frac(p, a, lookup)?.mul(&eval_frac(p, b, lookup)?),
        Expr::Pow(a, n) => {
            let x = eval_frac(p, a, lookup)?;
            let base = if *n < 0 { inverse_of(p, a, x, lookup)? } else { x };
            let mut acc = FracExpr::scalar(Scalar::one());
            for _ in 0..n.unsigned_abs() {
                acc = acc.mul(&base);
            }
            acc
        }
        Expr::Inv(a) => {
            let x = eval_frac(p, a, lookup)?;
            inverse_of(p, a, x, lookup)?
        }
        Expr::Comm(a, b) | Expr::Acomm(a, b) => {
            let x = eval_frac(p, a, lookup)?;
            let y = eval_frac(p, b, lookup)?;
            let xy = x.mul(&y);
            let yx = y.mul(&x);
            if matches!(e, Expr::Comm(..)) {
                xy.sub(&yx)
            } else {
                xy.add(&yx)
            }
        }
    })
}

fn inverse_of(
    p: &Presentation,
    src: &Expr,
    x: FracExpr,
    lookup: &dyn Fn(&str) -> Option<Binding>,
) -> Result<FracExpr> {
    let collapsed = match src {
        Expr::Sym(s) => lookup(s).and_then(|b| b.collapsed),
        _ => None,
    };
    let raw = match src {
        Expr::Sym(s) => lookup(s).map(|b| b.raw).unwrap_or(x),
        _ => x,
    };
    invert(p, &raw, collapsed.as_ref(), &src.to_string())
}

/// One step of a clearing recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeStep {
    LMul(FracExpr),
    RMul(FracExpr),
    UseIdentity(String),
    CancelAdjacentInverses,
}

/// A verified identity usable by `UseIdentity`: `lhs` is a single term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: FracTerm,
    pub rhs: FracExpr,
}

impl Identity {
    /// Accepts `lhs = rhs` when `lhs` is a single term.
    pub fn new(lhs: &FracExpr, rhs: &FracExpr) -> Option<Identity> {
        match lhs.terms.as_slice() {
            [t] if !t.factors.is_empty() => Some(Identity {
                lhs: t.clone(),
                rhs: rhs.clone(),
            }),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

fn substitute_identity(x: &FracExpr, id: &Identity) -> (FracExpr, bool) {
    let pat = &id.lhs.factors;
    let inv_c = id.lhs.coef.recip().expect("nonzero");
    let mut changed = false;
    let mut out = FracExpr::zero();
    for t in &x.terms {
        let hit = (0..=t.factors.len().saturating_sub(pat.len()))
            .find(|&i| t.factors.len() >= pat.len() && t.factors[i..i + pat.len()] == pat[..]);
        match hit {
            Some(i) => {
                changed = true;
                let pre = FracExpr {
                    terms: vec![FracTerm {
                        coef: &t.coef * &inv_c,
                        factors: t.factors[..i].to_vec(),
                    }],
                };
                let post = FracExpr {
                    terms: vec![FracTerm {
                        coef: Scalar::one(),
                        factors: t.factors[i + pat.len()..].to_vec(),
                    }],
                };
                out = out.add(&pre.mul(&id.rhs).mul(&post));
            }
            None => {
                out.terms.push(t.clone());
            }
        }
    }
    (out.simplify(), changed)
}

/// Applies the recipe to `lhs - rhs` and checks that the inverse-free
/// remainder normalizes to zero.
pub fn clear_and_verify(
    p: &Presentation,
    lhs: &FracExpr,
    rhs: &FracExpr,
    recipe: &[RecipeStep],
    identities: &HashMap<String, Identity>,
) -> Result<Outcome> {
    let mut d = lhs.sub(rhs);
    for step in recipe {
        match step {
            RecipeStep::LMul(x) | RecipeStep::RMul(x) => {
                if x.is_zero() || x.to_element(p)?.is_some_and(|e| e.is_zero()) {
                    return Err(Error::InvalidParameters(
                        "recipe multiplies by zero".into(),
                    ));
                }
                d = if matches!(step, RecipeStep::LMul(_)) {
                    x.mul(&d)
                } else {
                    d.mul(x)
                };
            }
            RecipeStep::UseIdentity(label) => {
                let id = identities
                    .get(label)
                    .ok_or_else(|| Error::UnknownIdentityReference(label.clone()))?;
                for _ in 0..IDENTITY_ROUNDS {
                    let (next, changed) = substitute_identity(&d, id);
                    d = next;
                    if !changed {
                        break;
                    }
                }
            }
            RecipeStep::CancelAdjacentInverses => {}
        }
        d = d.simplify();
    }
    let c = collapse(p, &d)?;
    if !c.rest.is_empty() {
        let left = FracExpr { terms: c.rest };
        return Err(Error::RecipeDidNotClear(left.render(p)));
    }
    if c.poly.is_zero() {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(p.render(&c.poly)))
    }
}

/// Target generators realized as elements of the source, with recipes per
/// target relation and witnesses recovering source generators.
#[derive(Clone, Debug)]
pub struct RepresentationCertificate {
    pub target: Presentation,
    pub images: Vec<FracExpr>,
    /// Keyed by `(hi, lo)` target generator names; squares use `(g, g)`.
    pub relation_recipes: HashMap<(String, String), Vec<RecipeStep>>,
    pub witnesses: Vec<(String, FracExpr, Vec<RecipeStep>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateItem {
    pub label: String,
    pub outcome: std::result::Result<Outcome, Error>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub relations: Vec<CertificateItem>,
    pub witnesses: Vec<CertificateItem>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.relations
            .iter()
            .chain(&self.witnesses)
            .all(|i| matches!(i.outcome, Ok(Outcome::Pass)))
    }
}

fn image_of(target: &Presentation, images: &[FracExpr], e: &Element, source: &Presentation) -> Result<FracExpr> {
    let mut out = FracExpr::zero();
    for (m, c) in e.terms() {
        let mut acc = FracExpr::scalar(c.clone());
        for (i, &x) in m.0.iter().enumerate() {
            let f = if x < 0 {
                invert(source, &images[i], None, &target.generators()[i].name)?
            } else {
                images[i].clone()
            };
            for _ in 0..x.unsigned_abs() {
                acc = acc.mul(&f);
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Checks every relation of the target on the images and every witness.
pub fn represent(
    source: &Presentation,
    cert: &RepresentationCertificate,
    identities: &HashMap<String, Identity>,
) -> Result<CertificateReport> {
    let t = &cert.target;
    if cert.images.len() != t.len() {
        return Err(Error::InvalidParameters(format!(
            "{} images for {} target generators",
            cert.images.len(),
            t.len()
        )));
    }
    let mut relations = Vec::new();
    let name = |i: usize| t.generators()[i].name.clone();
    let no_steps = Vec::new();
    for r in t.rules() {
        let (h, l) = (&cert.images[r.hi], &cert.images[r.lo]);
        let lhs = h.mul(l);
        let rhs = l.mul(h).scale(&r.q).add(&image_of(t, &cert.images, &r.tail, source)?);
        let key = (name(r.hi), name(r.lo));
        let steps = cert.relation_recipes.get(&key).unwrap_or(&no_steps);
        relations.push(CertificateItem {
            label: format!("{}*{} = {}", key.0, key.1, t.render(&rule_rhs(t, r.hi, r.lo, &r.q, &r.tail))),
            outcome: clear_and_verify(source, &lhs, &rhs, steps, identities),
        });
    }
    for g in 0..t.len() {
        if let Some(sq) = t.square_rule(g) {
            let x = &cert.images[g];
            let key = (name(g), name(g));
            let steps = cert.relation_recipes.get(&key).unwrap_or(&no_steps);
            relations.push(CertificateItem {
                label: format!("{0}*{0} = {1}", key.0, t.render(sq)),
                outcome: clear_and_verify(source, &x.mul(x), &image_of(t, &cert.images, sq, source)?, steps, identities),
            });
        }
    }
    let mut witnesses = Vec::new();
    for (g, expr, steps) in &cert.witnesses {
        let gen = FracExpr::atom(source.gen(g)?);
        witnesses.push(CertificateItem {
            label: g.clone(),
            outcome: clear_and_verify(source, &gen, expr, steps, identities),
        });
    }
    Ok(CertificateReport {
        relations,
        witnesses,
    })
}

fn rule_rhs(p: &Presentation, hi: usize, lo: usize, q: &Scalar, tail: &Element) -> Element {
    let mut m = vec![0; p.len()];
    m[hi] = 1;
    m[lo] = 1;
    let mut e = tail.clone();
    e.add_term(crate::element::Monomial(m), q.clone());
    e
}
