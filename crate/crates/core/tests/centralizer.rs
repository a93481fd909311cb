use std::collections::HashMap;

use ospfield_core::centralizer::{
    center_dimensions, centralizer_basis, is_central, monomial_basis, CentralizerQuery, Mode,
};
use ospfield_core::expr::{normal_form, parse_expr, substitute};
use ospfield_core::lie::build_osp;
use ospfield_core::reference::{build, Family};
use ospfield_core::{Element, Presentation};

fn osp12() -> Presentation {
    build_osp(1).unwrap().enveloping("osp12", &["b+", "k", "b-"]).unwrap()
}

fn osp12_full() -> Presentation {
    build_osp(1).unwrap().enveloping("osp12full", &["b+", "c+", "k", "c-", "b-"]).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn casimirs(p: &Presentation) -> HashMap<String, Element> {
    let mut env: HashMap<String, Element> = p
        .generators()
        .iter()
        .map(|g| (g.name.clone(), p.gen(&g.name).unwrap()))
        .collect();
    for (name, src) in [
        ("e", "1/2*b+^2"),
        ("f", "-1/2*b-^2"),
        ("omega", "4*e*f + k^2 - 2*k"),
        ("theta", "omega - 1/2*(b+*b- - b-*b+)"),
        ("z", "2*b+*b- - 2*k + 1"),
    ] {
        let v = substitute(p, &env, &parse_expr(src).unwrap()).unwrap();
        env.insert(name.to_string(), v);
    }
    env
}

#[test]
fn basis_counts() {
    let p = osp12();
    assert_eq!(monomial_basis(&p, 0).unwrap().len(), 1);
    assert_eq!(monomial_basis(&p, 2).unwrap().len(), 10);
    for d in 0..5 {
        assert_eq!(monomial_basis(&p, d).unwrap().len() as u64, binom(3 + d as u64, d as u64));
    }
    let l = build_osp(2).unwrap();
    let order = [
        "b1p", "b2p", "ap", "t", "k1", "k2", "s", "am", "b1m", "b2m",
    ];
    let names: Vec<&str> = order.to_vec();
    let big = l
        .subalgebra("r", &[
            "b1p", "b2p", "ap", "t", "k1", "k2", "s", "am", "b1m", "b2m", "c1p", "c2p", "c1m", "c2m",
        ])
        .unwrap()
        .unwrap()
        .enveloping("osp14", &names)
        .unwrap();
    assert_eq!(monomial_basis(&big, 1).unwrap().len(), 11);
}

#[test]
fn osp12_center_dimensions() {
    let p = osp12();
    let dims = center_dimensions(&p, 4, Mode::Commute).unwrap();
    assert_eq!(dims, vec![(0, 1), (1, 1), (2, 1), (3, 1), (4, 2)]);
    let p = osp12_full();
    let dims = center_dimensions(&p, 4, Mode::Commute).unwrap();
    assert_eq!(dims, vec![(0, 1), (1, 1), (2, 2), (3, 2), (4, 3)]);
    let b = centralizer_basis(&CentralizerQuery {
        presentation: &p,
        constraints: (0..5).map(|i| Element::generator(5, i)).collect(),
        degree: 2,
        mode: Mode::Commute,
    })
    .unwrap();
    let theta = casimirs(&p)["theta"].clone();
    assert_eq!(b[0], Element::one(5));
    assert_eq!(b[1].scale(&theta.sorted_terms()[0].1.clone()), theta);
}

#[test]
fn center_basis_elements_are_central_and_monotone() {
    let p = osp12_full();
    let gens: Vec<Element> = (0..5).map(|i| Element::generator(5, i)).collect();
    let mut prev: Vec<Element> = Vec::new();
    for d in 0..=4 {
        let q = CentralizerQuery { presentation: &p, constraints: gens.clone(), degree: d, mode: Mode::Commute };
        let b = centralizer_basis(&q).unwrap();
        for e in &b {
            assert!(is_central(&p, e).unwrap().0);
        }
        // every earlier basis element is in the span: leading monomials persist
        for e in &prev {
            assert!(b.contains(e), "{} lost at d={d}", p.render(e));
        }
        prev = b;
    }
}

#[test]
fn casimir_identities() {
    let p = osp12();
    let env = casimirs(&p);
    assert!(is_central(&p, &env["theta"]).unwrap().0);
    let sl2_part = ["e", "f", "k"];
    for g in sl2_part {
        let x = env.get(g).cloned().unwrap_or_else(|| p.gen(g).unwrap());
        assert!(p.comm(&env["omega"], &x).unwrap().is_zero());
    }
    for rel in [
        "omega^2 - (2*theta - 1)*omega + theta*(theta - 2)",
        "z^2 - (4*omega - 2*z + 3)",
        "z^2 - (4*theta + 1)",
    ] {
        let r = substitute(&p, &env, &parse_expr(rel).unwrap()).unwrap();
        assert!(r.is_zero(), "{rel}: {}", p.render(&r));
    }
    let (ok, res) = is_central(&p, &p.gen("b+").unwrap()).unwrap();
    assert!(!ok);
    assert_eq!(res[0].0, "k");
    assert_eq!(p.render(&res[0].1), "-1*b+");
    let _ = normal_form(&p, &parse_expr("k").unwrap()).unwrap();
}

#[test]
fn f_and_s3_centers() {
    let f = build(Family::F).unwrap();
    let gens: Vec<Element> = (0..4).map(|i| Element::generator(4, i)).collect();
    let q = CentralizerQuery { presentation: &f, constraints: gens, degree: 1, mode: Mode::Commute };
    let b = centralizer_basis(&q).unwrap();
    for g in ["z", "t"] {
        assert!(b.contains(&f.gen(g).unwrap()));
    }
    let s3 = build(Family::S3).unwrap();
    let z2 = s3.pow(&s3.gen("z").unwrap(), 2).unwrap();
    assert!(is_central(&s3, &z2).unwrap().0);
    let dims = center_dimensions(&s3, 4, Mode::Commute).unwrap();
    assert_eq!(dims.last(), Some(&(4, 3)));
}
