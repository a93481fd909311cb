use std::collections::HashMap;

use ospfield_core::builtins::presentation;
use ospfield_core::expr::{normal_form, parse_expr};
use ospfield_core::frac::{
    clear_and_verify, eval_frac, represent, Binding, FracExpr, Identity, Outcome, RecipeStep,
    RepresentationCertificate,
};
use ospfield_core::localization::{
    adjoin_inverse_generator, adjoin_inverse_witness, verify_sigma_normal, SigmaNormalWitness,
};
use ospfield_core::{Element, Error, Presentation};

fn nf(p: &Presentation, s: &str) -> Element {
    normal_form(p, &parse_expr(s).unwrap()).unwrap()
}

fn osp12_at_bplus() -> Presentation {
    adjoin_inverse_generator(&presentation("osp12").unwrap(), "b+", 3).unwrap()
}

#[test]
fn inverse_rules_behave() {
    let p = osp12_at_bplus();
    assert!(p.is_localized() && p.is_validated());
    assert_eq!(nf(&p, "b+^-1*b+"), Element::one(3));
    assert_eq!(nf(&p, "b+*b+^-1"), Element::one(3));
    // k b+ = b+ (k + 1) gives k b+^-1 = b+^-1 (k - 1)
    assert_eq!(nf(&p, "k*b+^-1"), nf(&p, "b+^-1*k - b+^-1"));
    assert_eq!(nf(&p, "b-*b+^-1*b+"), nf(&p, "b-"));
}

#[test]
fn z_anticommutes_and_y_is_weyl_partner() {
    let p = osp12_at_bplus();
    let z = nf(&p, "2*b+*b- - 2*k + 1");
    let bp = p.gen("b+").unwrap();
    assert!(p.acomm(&z, &bp).unwrap().is_zero());
    assert!(p.comm(&z, &p.gen("k").unwrap()).unwrap().is_zero());
    let y = nf(&p, "b+^-1*k");
    assert_eq!(p.comm(&y, &bp).unwrap(), Element::one(3));
    assert!(p.acomm(&z, &y).unwrap().is_zero());
}

#[test]
fn s3_certificate() {
    let p = osp12_at_bplus();
    let a = |s: &str| FracExpr::atom(nf(&p, s));
    let cert = RepresentationCertificate {
        target: presentation("S3").unwrap(),
        images: vec![a("b+^-1*k"), a("b+"), a("2*b+*b- - 2*k + 1")],
        relation_recipes: HashMap::new(),
        witnesses: vec![
            ("b+".into(), a("b+"), vec![]),
            ("k".into(), a("b+*(b+^-1*k)"), vec![]),
            ("b-".into(), a("1/2*b+^-1*(2*b+*b- - 2*k + 1 + 2*k - 1)"), vec![]),
        ],
    };
    let r = represent(&p, &cert, &HashMap::new()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.relations.len(), 3);

    let mut bad = cert.clone();
    bad.images[2] = a("2*b+*b- - 2*k");
    assert!(!represent(&p, &bad, &HashMap::new()).unwrap().passed());
}

#[test]
fn sigma_witness_route_matches_derived_route() {
    let p = presentation("osp12").unwrap();
    let n = p.len();
    // b+ g = conj(g) b+: conj(k) = k - 1, conj(b-) = -b- + 2 b+^-1... not polynomial, so use osp12z
    let q = presentation("osp12z").unwrap();
    let e = q.gen("b+").unwrap();
    let w = SigmaNormalWitness {
        e: e.clone(),
        conj: vec![e.clone(), nf(&q, "k - 1"), nf(&q, "-z")],
        conj_inv: vec![e, nf(&q, "k + 1"), nf(&q, "-z")],
    };
    assert!(verify_sigma_normal(&q, &w).unwrap().passed());
    let via_witness = adjoin_inverse_witness(&q, &w, 3).unwrap();
    let via_rules = adjoin_inverse_generator(&q, "b+", 3).unwrap();
    for s in ["k*b+^-1", "z*b+^-1", "b+^-1*k*z*b+^-2"] {
        assert_eq!(nf(&via_witness, s), nf(&via_rules, s), "{s}");
    }
    let mut wrong = w.clone();
    wrong.conj[1] = nf(&q, "k + 1");
    assert!(!verify_sigma_normal(&q, &wrong).unwrap().passed());
    assert!(matches!(adjoin_inverse_witness(&q, &wrong, 3), Err(Error::SigmaNormalityFailed(_))));
    assert_eq!(n, 3);
}

#[test]
fn non_generator_and_square_rule_localization_rejected() {
    let q = presentation("osp12z").unwrap();
    let w = SigmaNormalWitness {
        e: nf(&q, "z^2"),
        conj: (0..3).map(|i| Element::generator(3, i)).collect(),
        conj_inv: (0..3).map(|i| Element::generator(3, i)).collect(),
    };
    assert!(matches!(adjoin_inverse_witness(&q, &w, 3), Err(Error::Unsupported(_))));
    let f = presentation("f").unwrap();
    assert!(matches!(adjoin_inverse_generator(&f, "u", 3), Err(Error::Unsupported(_))));
    assert!(matches!(
        nf_err(&presentation("osp12").unwrap(), "b+^-1"),
        Error::NegativePowerOfNonInvertible(_)
    ));
}

fn nf_err(p: &Presentation, s: &str) -> Error {
    normal_form(p, &parse_expr(s).unwrap()).unwrap_err()
}

#[test]
fn clearing_recipe_with_composite_inverse() {
    // m = b2p - ap*b1p^-1 commutes with t but is not a generator, so
    // t*inv(m) = inv(m)*t only clears after multiplying by m.
    let p = adjoin_inverse_generator(&presentation("U-n+").unwrap(), "b1p", 3).unwrap();
    let none = |_: &str| -> Option<Binding> { None };
    let m = eval_frac(&p, &parse_expr("b2p - ap*b1p^-1").unwrap(), &none).unwrap();
    let m = FracExpr::atom(m.to_element(&p).unwrap().unwrap());
    let m_inv = ospfield_core::frac::invert(&p, &m, None, "m").unwrap();
    assert!(m_inv.has_inverse());
    let t = FracExpr::atom(p.gen("t").unwrap());
    let (lhs, rhs) = (t.mul(&m_inv), m_inv.mul(&t));
    let none_ids = HashMap::new();
    let steps = [RecipeStep::LMul(m.clone()), RecipeStep::RMul(m.clone())];
    assert_eq!(clear_and_verify(&p, &lhs, &rhs, &steps, &none_ids).unwrap(), Outcome::Pass);
    assert!(matches!(
        clear_and_verify(&p, &lhs, &rhs, &[], &none_ids),
        Err(Error::RecipeDidNotClear(_))
    ));
    let mut ids = HashMap::new();
    ids.insert("tm".to_string(), Identity::new(&lhs, &rhs).unwrap());
    let out = clear_and_verify(&p, &lhs, &rhs, &[RecipeStep::UseIdentity("tm".into())], &ids).unwrap();
    assert_eq!(out, Outcome::Pass);
    assert!(matches!(
        clear_and_verify(&p, &lhs, &rhs, &[RecipeStep::UseIdentity("nope".into())], &ids),
        Err(Error::UnknownIdentityReference(_))
    ));
    let b1 = FracExpr::atom(p.gen("b1p").unwrap());
    let wrong = [RecipeStep::LMul(m.clone()), RecipeStep::RMul(m)];
    let out = clear_and_verify(&p, &b1.mul(&m_inv), &m_inv.mul(&b1), &wrong, &none_ids).unwrap();
    assert!(matches!(out, Outcome::Fail(_)));
}
