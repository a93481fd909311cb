//! Claim scripts: a small language for replaying algebraic certificates,
//! and the embedded corpus.

pub mod ast;
pub mod corpus;
pub mod parse;
pub mod run;

pub use ast::{Script, Statement, Step, Stmt};
pub use parse::{parse, ParseError};
pub use run::{run, Context, ScriptReport, StatementReport, Status};

/// JSON report for a batch of scripts.
pub fn json_report(reports: &[ScriptReport]) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "passed": reports.iter().all(ScriptReport::passed),
        "scripts": reports,
    })
}
