//! Command-line front end for `mvroot`: a small language for algebras and
//! elements, a dispatcher onto the library, and exact reports.

pub mod dsl;
pub mod ledger;
pub mod report;
pub mod run;

pub use dsl::{parse_algebra, parse_dsl, parse_element, AlgebraExpr, Command, DslError, Flags, KindFlag, Verb};
pub use ledger::{ledger_checks, verify_paper};
pub use report::{Report, Status};
pub use run::run;

/// The JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../../../docs/report.schema.json");

/// Parses and runs one command line; also says whether JSON output was asked for.
pub fn execute(text: &str) -> (Report, bool) {
    match parse_dsl(text) {
        Ok(cmd) => (run(&cmd), cmd.flags.json),
        Err(e) => (Report::from_dsl_error(&e), text.split_whitespace().any(|w| w == "--json")),
    }
}
