use std::time::Instant;

use ospfield_claims::corpus::{context, run_script, script, Q_PLUS_CERTIFICATE, SCRIPTS, TABLES};
use ospfield_claims::{json_report, parse, Status};

#[test]
fn corpus_has_at_least_fifteen_scripts() {
    assert!(SCRIPTS.len() >= 15, "{}", SCRIPTS.len());
}

#[test]
fn every_script_passes() {
    let ctx = context();
    let t = Instant::now();
    for (name, _) in SCRIPTS {
        let r = run_script(name, &ctx);
        assert!(r.passed(), "{}", r.render());
    }
    assert!(t.elapsed().as_secs() < 60);
}

#[test]
fn render_then_parse_is_identity() {
    for (name, text) in SCRIPTS {
        let s = parse(text).unwrap();
        let back = parse(&s.to_string()).unwrap_or_else(|e| panic!("{name}: {e}\n{s}"));
        assert_eq!(
            s.stmts().collect::<Vec<_>>(),
            back.stmts().collect::<Vec<_>>(),
            "{name}"
        );
    }
}

#[test]
fn every_table_parses() {
    for (name, text) in TABLES {
        let t = ospfield_core::lie::parse_table(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!t.is_empty(), "{name}");
    }
}

#[test]
fn q_plus_slot_is_empty() {
    assert!(Q_PLUS_CERTIFICATE.is_none());
    assert!(script("remark3_10").is_some());
}

#[test]
fn mutated_casimir_shift_fails_with_residual() {
    let text = script("prop2_2")
        .unwrap()
        .replace("let z = 2*b+*b- - 2*k + 1", "let z = 2*b+*b- - 2*k - 1");
    let r = ospfield_claims::run("mutated", &parse(&text).unwrap(), &context());
    assert!(!r.passed());
    let anti = r
        .statements
        .iter()
        .find(|s| s.statement == "assert_anticommute z, b+")
        .unwrap();
    // (z - 2) b+ + b+ (z - 2) = -4 b+ since z anticommutes with b+.
    assert_eq!(
        anti.status,
        Status::Fail {
            residual: "-4*b+".into()
        }
    );
    let later = r
        .statements
        .iter()
        .find(|s| s.statement == "assert_confluent d=3")
        .unwrap();
    assert!(later.status.passed());
}

#[test]
fn json_report_shape() {
    let r = run_script("lemma1_2", &context());
    let v = json_report(&[r]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    let st = &v["scripts"][0]["statements"][0];
    assert_eq!(st["status"], "PASS");
    assert!(st["line"].is_u64());
    assert!(st["micros"].is_u64());
    assert!(st["statement"].is_string());
}

#[test]
fn json_report_carries_residuals() {
    let text = "algebra U = osp(1,2)\nassert_zero b+*b-\n";
    let r = ospfield_claims::run("t", &parse(text).unwrap(), &context());
    let v = json_report(&[r]);
    assert_eq!(v["passed"], false);
    let st = &v["scripts"][0]["statements"][1];
    assert_eq!(st["status"], "FAIL");
    assert_eq!(st["residual"], "1*b+*b-");
}

#[test]
fn coverage_entries_point_at_unique_assertions() {
    let mut seen = std::collections::HashSet::new();
    for line in ospfield_claims::corpus::COVERAGE.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(" | ").collect();
        assert_eq!(parts.len(), 3, "{line}");
        let s = parse(script(parts[1]).unwrap_or_else(|| panic!("{line}"))).unwrap();
        let hits: Vec<_> = s
            .statements
            .iter()
            .filter(|st| st.stmt.to_string() == parts[2])
            .collect();
        assert!(!hits.is_empty(), "{line}");
        assert!(seen.insert(parts[0]), "duplicate identity {}", parts[0]);
        assert!(!matches!(
            hits[0].stmt,
            ospfield_claims::Stmt::Let { .. } | ospfield_claims::Stmt::Algebra { .. }
        ));
    }
    assert!(seen.len() >= 60);
}
