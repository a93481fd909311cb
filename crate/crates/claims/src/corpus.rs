//! Scripts and golden tables shipped with the crate.

use crate::parse::parse;
use crate::run::{run, Context, ScriptReport};

macro_rules! scripts {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".claims")))),*]
    };
}

macro_rules! tables {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/tables/", $name, ".table")))),*]
    };
}

pub const SCRIPTS: &[(&str, &str)] = scripts![
    "lemma1_2",
    "remark1_4",
    "prop1_5",
    "remark1_8",
    "prop2_2",
    "remark2_3",
    "osp12_sigma",
    "osp_structure",
    "prop3_2",
    "remark3_3",
    "thm3_5",
    "remark3_6",
    "thm3_7",
    "remark3_8",
    "corollary_centers",
    "remark3_10",
];

pub const TABLES: &[(&str, &str)] = tables![
    "brac_n",
    "brac_b",
    "brac_p",
    "genchev_n",
    "genchev_b",
    "genchev_p",
    "l79",
    "l77",
    "osp12",
];

/// Displayed identities mapped to the statement that asserts them:
/// `identity | script | statement` per line.
pub const COVERAGE: &str = include_str!("../corpus/coverage.txt");

/// Certificate for the isomorphism of Frac U(q+) with Frac(A1 x A1 x S3).
/// No change of variables is known to the corpus; the slot stays empty.
pub const Q_PLUS_CERTIFICATE: Option<&str> = None;

pub fn script(name: &str) -> Option<&'static str> {
    SCRIPTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn table(name: &str) -> Option<String> {
    TABLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
}

/// Context resolving golden tables from the embedded set.
pub fn context() -> Context<'static> {
    Context {
        tables: Some(&table),
        ..Default::default()
    }
}

/// Parses and runs one embedded script.
pub fn run_script(name: &str, ctx: &Context) -> ScriptReport {
    let text = script(name).unwrap_or_else(|| panic!("no corpus script `{name}`"));
    let s = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
    run(name, &s, ctx)
}
