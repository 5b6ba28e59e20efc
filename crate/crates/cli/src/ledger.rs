//! Replays the reference examples: every entry recomputes a value and
//! compares its exact rendering with the expected text.

use mvroot::closures::{self, SqrtClosureOutcome};
use mvroot::ideals;
use mvroot::roots::{self, greatest_sqrt_subalgebra, Quantifier, SqrtResult};
use mvroot::{Algebra, FiniteAlgebra, GroupDescriptor, GroupElement, Result, ScalarTag, Value};
use serde::Serialize;
use serde_json::json;

use crate::dsl::parse_dsl;
use crate::report::{Report, Status};
use crate::run::run;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Default)]
struct Ledger {
    checks: Vec<Check>,
}

impl Ledger {
    fn check(&mut self, anchor: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) {
        let (expected, actual) = (expected.into(), actual.into());
        self.checks.push(Check { anchor: anchor.into(), pass: expected == actual, expected, actual });
    }

    fn computed(&mut self, anchor: impl Into<String>, expected: impl Into<String>, actual: Result<String>) {
        let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
        self.check(anchor, expected, actual);
    }
}

fn chain(n: u64) -> FiniteAlgebra {
    FiniteAlgebra::chain(n).expect("n >= 1")
}

fn root_text(alg: &Algebra, x: &Value) -> Result<String> {
    let e = alg.element(x)?;
    Ok(match roots::sqrt(alg, &e)? {
        SqrtResult::Exists(a) => alg.show(&a),
        SqrtResult::NotExists(_) => "absent".to_string(),
    })
}

fn set_text(fa: &FiniteAlgebra, xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(|&i| fa.label(i).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn group_laws(l: &mut Ledger) {
    let t3 = GroupDescriptor::Twist3(ScalarTag::Int);
    let t4 = GroupDescriptor::Twist4(ScalarTag::Int);
    let g = |xs: &[i64]| GroupElement::from_ints(xs);
    l.check("twist4: (0,b,0,0)+(0,0,c,0) = (0,b,c,bc) at b=2, c=3", "(0,2,3,6)", t4.render(&t4.add(&g(&[0, 2, 0, 0]), &g(&[0, 0, 3, 0]))).to_string());
    let x = g(&[1, 2, 3, 4]);
    let parts = closures::twist4_axes(&x);
    let sum = parts.iter().fold(t4.zero(), |acc, p| t4.add(&acc, p));
    l.check("twist4: (a,b,c,d) = (a,0,0,0)+(0,b,0,0)+(0,0,c,0)+(0,0,0,d-bc)", "(1,2,3,4)", t4.render(&sum).to_string());
    l.check("twist3: -(1,2,3) = (-1,-2,-c+ab)", "(-1,-2,-1)", t3.render(&t3.neg(&g(&[1, 2, 3]))).to_string());
    let gam = Algebra::Gamma(t3);
    let a = gam.element(&Value::Tuple(vec![Value::int(1), Value::int(-1), Value::int(1)]));
    l.computed(
        "twist3: (1,-1,1)⊙(1,-1,1) = (1,-2,2)",
        "(1,-2,2)",
        a.and_then(|a| gam.odot(&a, &a)).map(|p| gam.show(&p)),
    );
}

fn chains(l: &mut Ledger) {
    let m3 = Algebra::from(chain(3));
    l.check("M3 carrier", "{0,1/3,2/3,1}", set_text(m3.as_finite().unwrap(), &(0..4).collect::<Vec<_>>()));
    for (x, want) in [("0", "1/3"), ("1/3", "2/3"), ("1", "1"), ("2/3", "absent")] {
        let v = crate::dsl::parse_element(x).expect("literal");
        l.computed(format!("M3: sqrt {x}"), want, root_text(&m3, &v));
    }
    for n in 1..=6i64 {
        let k = 2 * n - 1;
        let m = Algebra::from(chain(k as u64));
        l.computed(format!("M{k}: sqrt 1/{k} = {n}/{k}"), Value::ratio(n, k).to_string(), root_text(&m, &Value::ratio(1, k)));
        // M1 is Boolean, so 0 has the root 0 there; absence starts at n = 2
        if n >= 2 {
            l.computed(format!("M{k}: sqrt {}/{k} absent", 2 * (n - 1)), "absent", root_text(&m, &Value::ratio(2 * (n - 1), k)));
        }
    }
    for n in 1..=6i64 {
        let k = 2 * n;
        let m = Algebra::from(chain(k as u64));
        l.computed(format!("M{k}: sqrt 0 = {n}/{k}"), Value::ratio(n, k).to_string(), root_text(&m, &Value::int(0)));
        l.computed(format!("M{k}: sqrt 1/{k} absent"), "absent", root_text(&m, &Value::ratio(1, k)));
    }
    let m4 = Algebra::from(chain(4));
    l.computed("M4: sqrt_zero", "1/2", roots::sqrt_zero(&m4).map(|r| r.root().map(|a| m4.show(a)).unwrap_or_default()));
    l.computed(
        "M4: sqrt of the idempotent 0 is 0 ∨ √0",
        "1/2",
        roots::sqrt_boolean(&m4, &m4.zero()).map(|r| r.root().map(|a| m4.show(a)).unwrap_or_default()),
    );
    let m1 = chain(1);
    l.check(
        "M1: the identity is a square-root map, not strict, w = 1",
        "identity strict=false w=1",
        match roots::sqrt_map(&m1) {
            Some(m) => format!(
                "{} strict={} w={}",
                if m.map == vec![0, 1] { "identity" } else { "other" },
                m.strict,
                m1.label(m.w)
            ),
            None => "absent".into(),
        },
    );
}

fn twist3(l: &mut Ledger) {
    let alg = Algebra::Gamma(GroupDescriptor::Twist3(ScalarTag::Int));
    let t = |a: i64, b: i64, c: i64| Value::Tuple(vec![Value::int(a), Value::int(b), Value::int(c)]);
    // (1,0,c) lies above u for c > 0, so n starts at 1
    for n in 1..=5 {
        for m in 0..=5 {
            l.computed(
                format!("twist3: sqrt (1,-{},{}) = (1,-{n},{m})", 2 * n, 2 * m),
                t(1, -n, m).to_string(),
                root_text(&alg, &t(1, -2 * n, 2 * m)),
            );
        }
    }
    l.computed("twist3: sqrt 0 absent", "absent", root_text(&alg, &t(0, 0, 0)));
}

fn greatest(l: &mut Ledger) {
    let m3 = chain(3);
    let g = greatest_sqrt_subalgebra(&m3, Quantifier::Ambient);
    let x1 = &g.stages[0];
    l.check("M3: X1 = {0,1/3,1}, not a subalgebra", "{0,1/3,1} false", format!("{} {}", set_text(&m3, &x1.carrier), x1.is_subalgebra));
    for n in 1..=6u64 {
        let m = chain(2 * n);
        let even: Vec<usize> = (0..=2 * n as usize).step_by(2).collect();
        let g = greatest_sqrt_subalgebra(&m, Quantifier::Ambient);
        let x1 = &g.stages[0];
        l.check(
            format!("M{}: X1 = even sub-chain, a subalgebra", 2 * n),
            format!("{} true", set_text(&m, &even)),
            format!("{} {}", set_text(&m, &x1.carrier), x1.is_subalgebra),
        );
    }
}

fn spectra(l: &mut Ledger) {
    let m3 = chain(3);
    l.computed("M3 is Boolean subdirectly irreducible", "true", ideals::is_bsi(&m3).map(|b| b.to_string()));
    let m46 = FiniteAlgebra::product(&[&chain(4), &chain(6)]).expect("product");
    l.computed("M4×M6 is Boolean subdirectly irreducible", "true", ideals::is_bsi(&m46).map(|b| b.to_string()));
    let m14 = FiniteAlgebra::product(&[&chain(1), &chain(4)]).expect("product");
    for (name, fa, want) in [("M1×M4", &m14, "(1,0)"), ("M3", &m3, "0"), ("M1", &chain(1), "1")] {
        l.computed(
            format!("{name}: separating element a = {want}"),
            want,
            ideals::nn12_element(fa).map(|a| a.map(|a| fa.label(a).to_string()).unwrap_or_else(|| "none".into())),
        );
    }
}

fn closures_ledger(l: &mut Ledger) {
    let strict = |d: &GroupDescriptor| closures::strict_closure(d).map(|c| c.closed().to_string());
    let sqrt = |d: &GroupDescriptor| {
        closures::sqrt_closure_descriptor(d).map(|o| match o {
            SqrtClosureOutcome::Closure { closure, .. } => closure.closed().to_string(),
            SqrtClosureOutcome::OpenProblem { .. } => "open".into(),
        })
    };
    let z = |n| GroupDescriptor::ScaledInt(n);
    l.computed("C(M1) = Γ(D,1)", "D", strict(&z(1)));
    l.computed("D(M1) = M1", "Z", sqrt(&z(1)));
    l.computed("C(M2) = Γ(D,1)", "D", strict(&z(2)));
    l.computed("D(M2) = Γ(D,1)", "D", sqrt(&z(2)));
    for p in [3u64, 5, 7] {
        l.computed(format!("C(M{p}) = Γ(D/{p},1)"), format!("D/{p}"), strict(&z(p)));
        l.computed(format!("D(M{p}) = C(M{p})"), format!("D/{p}"), sqrt(&z(p)));
    }
    l.computed("C(M6) = Γ(D/3,1)", "D/3", strict(&z(6)));
    let lex = GroupDescriptor::lex(GroupDescriptor::int(), GroupDescriptor::int());
    l.computed("C(Γ(lex(Z,Z),(1,0))) = Γ(lex(D,D),(1,0))", "lex(D,D)", strict(&lex));
    l.computed("D(Γ(lex(Z,Z),(1,0))) = C", "lex(D,D)", sqrt(&lex));
    let three = GroupDescriptor::Product(vec![z(3), z(4), lex.clone()]);
    l.computed("C of a three-factor product is the product of the closures", "prod(D/3,D,lex(D,D))", strict(&three));
    for d in [z(1), z(2), z(3), z(5), z(6), z(7), lex.clone(), three] {
        let verdict = closures::strict_closure(&d).and_then(|c| closures::crit_check(&c.base(), &c.closed()));
        l.computed(format!("halving criterion holds for C({d})"), "true", verdict.map(|v| v.holds().to_string()));
    }
    l.computed(
        "halving criterion fails for Z/2 inside D/3",
        "false h=1/3",
        closures::crit_check(&z(2), &GroupDescriptor::Dyadic(3)).map(|v| match v {
            closures::CritOutcome::Failure { h, .. } => format!("false h={}", GroupDescriptor::Dyadic(3).render(&h)),
            closures::CritOutcome::Certificate { .. } => "true".into(),
        }),
    );
}

fn commands(l: &mut Ledger) {
    for (text, status, needle) in [
        ("sqrt M(3) 2/3", Status::NotExists, "2/3 has no square root"),
        ("closure M(5)", Status::Ok, "C(M) = Γ(D/5, u)"),
    ] {
        let actual = match parse_dsl(text) {
            Ok(cmd) => {
                let r = run(&cmd);
                let hit = r.summary.iter().any(|s| s.contains(needle));
                format!("{} exit {} {}", r.status.name(), r.exit_code(), hit)
            }
            Err(e) => e.to_string(),
        };
        l.check(format!("command `{text}`"), format!("{} exit {} true", status.name(), status.exit_code()), actual);
    }
}

/// All ledger checks, in a fixed order.
pub fn ledger_checks() -> Vec<Check> {
    let mut l = Ledger::default();
    group_laws(&mut l);
    chains(&mut l);
    twist3(&mut l);
    greatest(&mut l);
    spectra(&mut l);
    closures_ledger(&mut l);
    commands(&mut l);
    l.checks
}

pub fn verify_paper() -> Report {
    let checks = ledger_checks();
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let status = if failed.is_empty() { Status::Ok } else { Status::Error };
    let mut r = Report::new(status, "verify-paper", None);
    r.summary.push(format!("{}/{} reference examples reproduced", checks.len() - failed.len(), checks.len()));
    for c in &failed {
        r.summary.push(format!("MISMATCH {}: expected {}, got {}", c.anchor, c.expected, c.actual));
    }
    r.payload = json!({
        "total": checks.len(),
        "passed": checks.len() - failed.len(),
        "failed": failed.iter().map(|c| c.anchor.clone()).collect::<Vec<_>>(),
        "checks": checks,
    });
    r.provenance = checks.iter().map(|c| c.anchor.clone()).collect();
    r
}
