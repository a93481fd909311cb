use ospfield_claims::corpus::{context, SCRIPTS};
use ospfield_claims::{parse, run, Status};
use ospfield_core::builtins::{lie, osp_order};
use ospfield_core::Scalar;

fn order(o: &[String]) -> Vec<&str> {
    o.iter().map(String::as_str).collect()
}

#[test]
fn every_osp12_constant_is_load_bearing() {
    let base = lie("osp(1,2)").unwrap();
    let reduced = osp_order(1, false);
    let full = osp_order(1, true);
    let scripts: Vec<_> = SCRIPTS
        .iter()
        .filter(|(_, t)| t.contains("osp(1,2)"))
        .map(|(n, t)| (*n, parse(t).unwrap()))
        .collect();
    let mut mutated = 0;
    for i in 0..base.dim() {
        for j in i..base.dim() {
            for (k, c) in base.constant(i, j).clone() {
                let mut l = base.clone();
                let mut v = base.constant(i, j).clone();
                v.insert(k, c + Scalar::one());
                v.retain(|_, x| !x.is_zero());
                l.set_bracket(i, j, v);
                let mut ctx = context();
                ctx.lie_overrides.insert("osp(1,2)".into(), l.clone());
                ctx.overrides.insert(
                    "osp(1,2)".into(),
                    l.enveloping_unchecked("osp(1,2)", &order(&reduced))
                        .unwrap(),
                );
                ctx.overrides.insert(
                    "osp(1,2)full".into(),
                    l.enveloping_unchecked("osp(1,2)full", &order(&full))
                        .unwrap(),
                );
                let failed = scripts.iter().any(|(n, s)| {
                    run(n, s, &ctx)
                        .statements
                        .iter()
                        .any(|st| matches!(st.status, Status::Fail { .. }))
                });
                assert!(
                    failed,
                    "no assertion fails after mutating [{},{}] at {}",
                    base.basis_name(i),
                    base.basis_name(j),
                    base.basis_name(k)
                );
                mutated += 1;
            }
        }
    }
    assert!(mutated >= 10, "{mutated}");
}
