use std::sync::OnceLock;

use proptest::prelude::*;

use ospfield_core::builtins::presentation;
use ospfield_core::expr::{normal_form, parse_expr};
use ospfield_core::localization::adjoin_inverse_generator;
use ospfield_core::{BracketKind, Element, Monomial, Presentation, Scalar};

const NAMES: &[&str] = &["osp12", "sl2", "S3", "U-n+", "A(1,1,1)", "f", "osp12z", "U-b+"];

fn algebras() -> &'static Vec<Presentation> {
    static P: OnceLock<Vec<Presentation>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v: Vec<Presentation> = NAMES.iter().map(|n| presentation(n).unwrap()).collect();
        v.push(adjoin_inverse_generator(&presentation("osp12").unwrap(), "b+", 3).unwrap());
        v
    })
}

fn raw_element() -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    prop::collection::vec((prop::collection::vec(-1i32..2, 7), -3i64..4), 1..4)
}

/// Builds an element of `p`, keeping negative exponents only on invertible
/// generators and exponents at most one on square-rule generators.
fn element(p: &Presentation, raw: &[(Vec<i32>, i64)]) -> Element {
    let mut e = Element::zero();
    for (ex, c) in raw {
        // reversed generator order so products need straightening
        let names: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
        let mut factors = Vec::new();
        for i in (0..p.len()).rev() {
            let mut x = ex[i];
            if x < 0 && !p.generators()[i].invertible {
                x = -x;
            }
            if p.square_rule(i).is_some() {
                x = x.clamp(0, 1);
            }
            factors.push((names[i].as_str(), x));
        }
        let term = p.word(Scalar::one(), &factors).unwrap();
        e = &e + &term.scale(&Scalar::from_int(*c));
    }
    e
}

fn pick(i: usize) -> &'static Presentation {
    let a = algebras();
    &a[i % a.len()]
}

fn homogeneous(p: &Presentation, raw: &[(Vec<i32>, i64)]) -> Element {
    // keep only the parity of the first term
    let odd = p.odd_mask();
    let e = element(p, raw);
    let Some((first, _)) = e.sorted_terms().first().map(|(m, c)| ((*m).clone(), (*c).clone())) else {
        return e;
    };
    let par = first.parity(&odd);
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        if m.parity(&odd) == par {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2500))]

    #[test]
    fn associativity(i in 0usize..9, a in raw_element(), b in raw_element(), c in raw_element()) {
        let p = pick(i);
        let (a, b, c) = (element(p, &a), element(p, &b), element(p, &c));
        let l = p.mul(&p.mul(&a, &b).unwrap(), &c).unwrap();
        let r = p.mul(&a, &p.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn parity_is_additive(i in 0usize..9, a in raw_element(), b in raw_element()) {
        let p = pick(i);
        let odd = p.odd_mask();
        let (a, b) = (homogeneous(p, &a), homogeneous(p, &b));
        let ab = p.mul(&a, &b).unwrap();
        if let (Some(x), Some(y), false) = (a.parity(&odd), b.parity(&odd), ab.is_zero()) {
            prop_assert_eq!(ab.parity(&odd), Some((x + y) % 2));
        }
    }

    #[test]
    fn degree_and_unit(i in 0usize..9, a in raw_element(), b in raw_element()) {
        let p = pick(i);
        let (a, b) = (element(p, &a), element(p, &b));
        let one = Element::one(p.len());
        prop_assert_eq!(&p.mul(&a, &one).unwrap(), &a);
        prop_assert_eq!(&p.mul(&one, &a).unwrap(), &a);
        let ab = p.mul(&a, &b).unwrap();
        if !p.has_square_rules() && !p.is_localized() && !ab.is_zero() {
            prop_assert_eq!(ab.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }

    #[test]
    fn normal_form_round_trip(i in 0usize..9, a in raw_element()) {
        let p = pick(i);
        let a = element(p, &a);
        let text = p.render(&a);
        let back = normal_form(p, &parse_expr(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(p.mul(&back, &Element::one(p.len())).unwrap(), a);
    }

    #[test]
    fn super_bracket_antisymmetry(i in 0usize..9, a in raw_element(), b in raw_element()) {
        let p = pick(i);
        let odd = p.odd_mask();
        let (a, b) = (homogeneous(p, &a), homogeneous(p, &b));
        let ab = p.bracket(&a, &b, BracketKind::Super).unwrap();
        let ba = p.bracket(&b, &a, BracketKind::Super).unwrap();
        let s = Scalar::sign(a.parity(&odd).unwrap_or(0) * b.parity(&odd).unwrap_or(0));
        prop_assert_eq!(&ab + &ba.scale(&s), Element::zero());
    }
}

#[test]
fn monomial_parity_matches_mask() {
    let p = presentation("osp12").unwrap();
    let m = Monomial(vec![1, 0, 1]);
    assert_eq!(m.parity(&p.odd_mask()), 0);
}
