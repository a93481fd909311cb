use ospfield_core::builtins::{center_presentation, generator_names, lie, list, presentation};

const NAMES: &[&str] = &[
    "osp(1,2)", "osp12", "osp(1,4)", "osp14", "osp(1,6)", "osp12full", "osp(1,4)full", "U-n+", "U-b+", "U-p+",
    "U-q+", "A1", "Afermi", "A(1,2,1)", "hatA(1,1,0)", "S3", "S4", "f", "sl2", "osp12z", "L79", "L77", "illus-n+",
    "illus-b+", "illus-p+",
];

#[test]
fn every_builtin_validates() {
    for n in NAMES {
        let p = presentation(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        assert!(p.is_validated(), "{n}");
        let names: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(generator_names(n).unwrap(), names, "{n}");
    }
}

#[test]
fn sizes() {
    assert_eq!(presentation("osp(1, 2)").unwrap().len(), 3);
    assert_eq!(presentation("osp14").unwrap().len(), 10);
    assert_eq!(presentation("osp(1,6)").unwrap().len(), 21);
    assert_eq!(presentation("osp14full").unwrap().len(), 14);
    assert_eq!(center_presentation("osp12").unwrap().len(), 5);
    for (n, d) in [("n+", 6), ("b+", 8), ("p+", 10), ("q+", 9), ("l", 5), ("h", 2), ("L79", 7), ("L77", 7)] {
        let l = lie(n).unwrap();
        assert_eq!(l.dim(), d, "{n}");
        assert!(l.validate_jacobi().passed(), "{n}");
    }
}

#[test]
fn listing_and_unknowns() {
    assert!(list().iter().any(|b| b.name == "L77"));
    assert!(presentation("nope").is_err());
    assert!(presentation("osp(1,3)").is_err());
}
