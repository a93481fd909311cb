use ospfield_core::expr::parse_expr;
use ospfield_core::reference::{
    build, embedding_witness, fermionic_change_of_variables, graph, illustration, osp12z, Family,
};

#[test]
fn families_validate() {
    for f in [
        Family::A1,
        Family::Afermi,
        Family::Mixed { r: 1, s: 1, t: 1 },
        Family::Hat { r: 2, s: 1, t: 1 },
        Family::S3,
        Family::S4,
        Family::F,
        Family::Sl2,
    ] {
        assert!(build(f).unwrap().is_validated(), "{f:?}");
    }
    assert!(osp12z().unwrap().is_validated());
}

#[test]
fn s3_dot() {
    let g = graph(&build(Family::S3).unwrap()).unwrap();
    assert_eq!(
        g.to_dot(),
        "digraph \"S3\" {\n  \"x\";\n  \"y\";\n  \"z\";\n  \"x\" -> \"y\";\n  \"x\" -> \"z\" [dir=none, style=dotted];\n  \"y\" -> \"z\" [dir=none, style=dotted];\n}\n"
    );
}

#[test]
fn illustration_shapes() {
    let n = graph(&illustration("n+").unwrap()).unwrap();
    assert_eq!(n.directed, vec![("tp".into(), "ap".into())]);
    assert_eq!(n.dotted, vec![("y".into(), "b1p".into())]);
    let b = graph(&illustration("b+").unwrap()).unwrap();
    assert_eq!(b.directed.len(), 3);
    assert_eq!(b.dotted.len(), 4);
    let p = graph(&illustration("p+").unwrap()).unwrap();
    assert_eq!(p.directed.len(), 3);
    assert_eq!(p.dotted.len(), 2);
    assert!(p.annotated.is_empty());
}

#[test]
fn fermionic_change() {
    let r = fermionic_change_of_variables().unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn fermionic_pair_embeds_in_hat() {
    let host = build(Family::Hat { r: 1, s: 1, t: 0 }).unwrap();
    let target = build(Family::Afermi).unwrap();
    let check = |v: &str| {
        let ims = [("u", parse_expr("w1").unwrap()), ("v", parse_expr(v).unwrap())];
        embedding_witness(&host, &["w1"], &ims, &target).unwrap().passed()
    };
    assert!(check("1/2*w1^-1*(u1 + 1)"));
    assert!(!check("w1^-1*(u1 + 1)"));
}
