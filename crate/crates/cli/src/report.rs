use std::collections::BTreeMap;
use std::fmt::Write as _;

use mvroot::{Error, Value};
use serde::Serialize;
use serde_json::Value as Json;

use crate::dsl::{parse_element, DslError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotExists,
    Absent,
    OpenProblem,
    Unsupported,
    Error,
}

impl Status {
    /// 0 ok, 1 a valid negative answer, 2 a tool limitation, 3 an error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotExists | Status::Absent | Status::OpenProblem => 1,
            Status::Unsupported => 2,
            Status::Error => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotExists => "not_exists",
            Status::Absent => "absent",
            Status::OpenProblem => "open_problem",
            Status::Unsupported => "unsupported",
            Status::Error => "error",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Unsupported(_) | Error::Resource(_) => Status::Unsupported,
            Error::NoSqrtMap(_) | Error::NoSqrtZero(_) => Status::Absent,
            _ => Status::Error,
        }
    }
}

/// Decimal renderings of the exact values in a report. Never authoritative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Approx {
    pub non_authoritative: bool,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub verb: String,
    pub target: Option<String>,
    /// Human-readable lines.
    pub summary: Vec<String>,
    pub payload: Json,
    /// Named results that the computation relied on.
    pub provenance: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<Approx>,
}

impl Report {
    pub fn new(status: Status, verb: impl Into<String>, target: Option<String>) -> Self {
        Report {
            status,
            verb: verb.into(),
            target,
            summary: Vec::new(),
            payload: Json::Object(Default::default()),
            provenance: Vec::new(),
            approx: None,
        }
    }

    pub fn from_error(verb: impl Into<String>, target: Option<String>, e: &Error) -> Self {
        let mut r = Report::new(Status::of_error(e), verb, target);
        r.summary.push(e.to_string());
        r.payload = serde_json::json!({ "error": e.to_string() });
        r
    }

    pub fn from_dsl_error(e: &DslError) -> Self {
        let mut r = Report::new(Status::Error, "parse", None);
        r.summary.push(e.to_string());
        r.payload = serde_json::json!({
            "error": e.message,
            "line": e.line,
            "column": e.column,
            "kind": match e.kind {
                crate::dsl::DslErrorKind::Syntax => "syntax",
                crate::dsl::DslErrorKind::Semantic => "semantic",
            },
        });
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Fills [`Report::approx`] from every string leaf of the payload that
    /// reads as an element.
    pub fn with_approx(mut self) -> Self {
        let mut values = BTreeMap::new();
        collect_approx(&self.payload, &mut values);
        self.approx = Some(Approx { non_authoritative: true, values });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{}: {}", self.verb, self.status.name());
        if let Some(t) = &self.target {
            let _ = write!(out, " [{t}]");
        }
        out.push('\n');
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        if let Some(a) = &self.approx {
            let _ = writeln!(out, "  approximations (non-authoritative):");
            for (k, v) in &a.values {
                let _ = writeln!(out, "    {k} ~ {v}");
            }
        }
        out
    }
}

fn decimal(v: &Value) -> String {
    match v {
        Value::Scalar(s) => format!("{:.6}", s.to_f64()),
        Value::Tuple(items) => format!("({})", items.iter().map(decimal).collect::<Vec<_>>().join(",")),
    }
}

fn exact_leaf(s: &str) -> Option<Value> {
    let v = parse_element(s).ok()?;
    // integers carry no information worth approximating
    match &v {
        Value::Scalar(mvroot::Scalar::Rat(r)) if r.is_integer() => None,
        _ => Some(v),
    }
}

fn collect_approx(j: &Json, out: &mut BTreeMap<String, String>) {
    match j {
        Json::String(s) => {
            if let Some(v) = exact_leaf(s) {
                out.insert(s.clone(), decimal(&v));
            }
        }
        Json::Array(xs) => xs.iter().for_each(|x| collect_approx(x, out)),
        Json::Object(m) => m.values().for_each(|x| collect_approx(x, out)),
        _ => {}
    }
}
