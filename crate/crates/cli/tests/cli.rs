use std::process::Command as Proc;

use mvroot::roots::Quantifier;
use mvroot::{GroupDescriptor, QuadValue, Rational, Scalar, ScalarTag, Value};
use mvroot_cli::dsl::DslErrorKind;
use mvroot_cli::{execute, parse_dsl, run, AlgebraExpr, Command, Flags, KindFlag, Status, Verb, REPORT_SCHEMA};
use proptest::prelude::*;

fn cmd(text: &str) -> Command {
    parse_dsl(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn documented_commands_parse() {
    assert_eq!(cmd("sqrt M(3) 0"), Command::new(Verb::Sqrt, Some(AlgebraExpr::Chain(3)), vec![Value::int(0)]));
    let t3 = cmd("sqrt gamma(twist3(Z)) (1,-2,2)");
    assert_eq!(t3.target, Some(AlgebraExpr::Gamma(GroupDescriptor::Twist3(ScalarTag::Int))));
    assert_eq!(t3.args, vec![Value::Tuple(vec![Value::int(1), Value::int(-2), Value::int(2)])]);
    let c = cmd("closure prod(M(1),M(4)) --kind sqrt");
    assert_eq!(c.target, Some(AlgebraExpr::Prod(vec![AlgebraExpr::Chain(1), AlgebraExpr::Chain(4)])));
    assert_eq!(c.flags.kind, Some(KindFlag::Sqrt));
}

#[test]
fn nested_and_quadratic_elements() {
    let c = cmd("member gamma(prod(lex(Z,Z),D/3)) ((1,0),3/4)");
    assert_eq!(c.args[0].to_string(), "((1,0),3/4)");
    let q = cmd("sqrt gamma(dquad(1+sqrt(2))) 1/2-3/4*sqrt(2)");
    let Value::Scalar(Scalar::Quad(v)) = &q.args[0] else { panic!("expected a quadratic value") };
    assert_eq!(v, &"1/2-3/4*sqrt(2)".parse::<QuadValue>().unwrap());
    assert_eq!(cmd("analyze gamma(quad(sqrt(3)))").to_string(), "analyze gamma(quad(0+1*sqrt(3)))");
}

#[test]
fn whitespace_and_newlines_are_insignificant() {
    assert_eq!(cmd("  closure\n  prod( M(1) ,\tM(4) )\n --kind   sqrt "), cmd("closure prod(M(1),M(4)) --kind sqrt"));
}

#[test]
fn syntax_errors_carry_locations() {
    let e = parse_dsl("sqrt M(3").unwrap_err();
    assert_eq!((e.kind, e.line, e.column), (DslErrorKind::Syntax, 1, 9));
    let e = parse_dsl("sqrt M(3)\n  0 1").unwrap_err();
    assert_eq!((e.line, e.column), (2, 5));
    assert!(e.message.contains("too many"));
    let e = parse_dsl("frobnicate M(3)").unwrap_err();
    assert_eq!((e.kind, e.column), (DslErrorKind::Syntax, 1));
    assert!(e.message.contains("verify-paper"));
    let e = parse_dsl("closure M(3) --kind loose").unwrap_err();
    assert_eq!(e.column, 21);
    assert!(parse_dsl("sqrt M(3)").unwrap_err().message.contains("element"));
    assert!(parse_dsl("ideals gamma(twist5(Z))").is_err());
}

#[test]
fn semantic_errors_explain() {
    let e = parse_dsl("sqrt gamma(D/4) 0").unwrap_err();
    assert_eq!((e.kind, e.column), (DslErrorKind::Semantic, 12));
    assert!(e.message.contains("odd"));
    let e = parse_dsl("analyze M(0)").unwrap_err();
    assert_eq!(e.kind, DslErrorKind::Semantic);
    let e = parse_dsl("analyze gamma(lex(prod(Z,Z),Z))").unwrap_err();
    assert!(e.message.contains("linearly ordered"));
    assert_eq!(parse_dsl("sqrt M(3) 1/0").unwrap_err().kind, DslErrorKind::Semantic);
    assert_eq!(parse_dsl("analyze gamma(quad(1+1*sqrt(4)))").unwrap_err().kind, DslErrorKind::Semantic);
}

#[test]
fn statuses_and_exit_codes() {
    let cases = [
        ("sqrt M(3) 2/3", Status::NotExists),
        ("sqrt M(3) 0", Status::Ok),
        ("closure M(5)", Status::Ok),
        ("closure prod(gamma(lex(Z,Z)),M(1)) --kind sqrt", Status::OpenProblem),
        ("closure gamma(twist3(Z))", Status::Unsupported),
        ("sqrtmap M(2)", Status::Absent),
        ("sqrtmap prod(M(1),M(1))", Status::Ok),
        ("member M(3) 1/2", Status::NotExists),
        ("sqrt M(3) 1/2", Status::Error),
        ("verify-paper", Status::Ok),
    ];
    for (text, want) in cases {
        let (r, _) = execute(text);
        assert_eq!(r.status, want, "{text}: {:?}", r.summary);
    }
    assert_eq!(Status::NotExists.exit_code(), 1);
    assert_eq!(Status::Unsupported.exit_code(), 2);
    assert_eq!(Status::Error.exit_code(), 3);
}

#[test]
fn closure_of_m5_names_the_group() {
    let r = run(&cmd("closure M(5)"));
    assert_eq!(r.payload["closure"]["closed"], "D/5");
    assert_eq!(r.payload["crit"]["verdict"], "certificate");
}

#[test]
fn sqrt_closure_split_case() {
    let r = run(&cmd("closure prod(M(1),M(4)) --kind sqrt"));
    assert_eq!(r.payload["case"], "split");
    assert_eq!(r.payload["a"], "(1,0)");
    assert_eq!(r.payload["closure"]["closed"], "prod(Z,D)");
}

#[test]
fn twist3_box_search_agrees() {
    for x in ["(1,-2,2)", "(1,-1,0)", "(0,0,0)", "(0,1,5)"] {
        let r = run(&cmd(&format!("sqrt gamma(twist3(Z)) {x} --bound 3")));
        assert_eq!(r.payload["box"]["agrees"], true, "{x}");
    }
}

#[test]
fn greatest_reports_both_readings() {
    let amb = run(&cmd("greatest M(3)"));
    assert_eq!(amb.payload["stages"][0]["carrier"], serde_json::json!(["0", "1/3", "1"]));
    assert_eq!(amb.payload["readings_differ"], true);
    let rel = run(&cmd("greatest M(3) --quantifier relative"));
    assert_eq!(rel.payload["quantifier"], "relative");
}

#[test]
fn decompose_both_forms() {
    let r = run(&cmd("decompose M(3) 5/6"));
    assert_eq!(r.payload["n"], 1);
    assert_eq!(r.payload["parts"], serde_json::json!(["1", "2/3"]));
    let w = run(&cmd("decompose gamma(prod(Z,D))"));
    assert_eq!(w.status, Status::Unsupported);
    let w = run(&cmd("decompose prod(M(1),M(1))"));
    assert_eq!(w.status, Status::Ok);
    assert_eq!(w.payload["iso_verified"], true);
}

#[test]
fn approx_is_marked() {
    let r = run(&cmd("sqrt M(4) 0 --approx"));
    let a = r.approx.expect("approximations requested");
    assert!(a.non_authoritative);
    assert_eq!(a.values["1/2"], "0.500000");
}

#[test]
fn ideal_cap_is_a_tool_limit() {
    let r = run(&cmd("ideals prod(M(4),M(4),M(4))"));
    assert_eq!(r.status, Status::Unsupported);
}

fn validator() -> jsonschema::JSONSchema {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&schema)
        .expect("schema compiles")
}

#[test]
fn reports_validate_against_schema() {
    let v = validator();
    let texts = [
        "analyze M(3)",
        "analyze gamma(twist4(D)) --approx",
        "analyze gamma(prod(Z/3,D))",
        "sqrt M(3) 2/3",
        "sqrt gamma(twist3(Z)) (1,-4,6) --bound 3",
        "sqrt gamma(lex(D,D)) (0,3/4) --approx",
        "sqrtmap M(1)",
        "sqrtmap gamma(prod(D,Z))",
        "sqrtmap gamma(lex(Z,Z))",
        "ideals prod(M(1),M(4))",
        "ideals gamma(prod(lex(Z,Z),Z/3))",
        "closure M(6)",
        "closure gamma(twist4(Z))",
        "closure prod(gamma(lex(Z,Z)),M(1)) --kind sqrt",
        "member gamma(D/3) 1/6",
        "decompose gamma(D/3) 5/12",
        "greatest M(6)",
        "verify-paper --approx",
        "sqrt M(3",
        "closure gamma(twist3(Z))",
    ];
    for t in texts {
        let (r, _) = execute(t);
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let msgs: Vec<String> = match v.validate(&j) {
            Ok(()) => Vec::new(),
            Err(errs) => errs.map(|e| format!("{e} at {}", e.instance_path)).collect(),
        };
        assert!(msgs.is_empty(), "{t}: {msgs:?}");
    }
}

#[test]
fn schema_rejects_floats() {
    let v = validator();
    let bad = serde_json::json!({
        "status": "ok", "verb": "sqrt", "target": null, "summary": [],
        "payload": { "root": 0.5 }, "provenance": []
    });
    assert!(!v.is_valid(&bad));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mvroot");
    let code = |args: &[&str]| Proc::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["sqrt", "M(3)", "2/3"]), Some(1));
    assert_eq!(code(&["closure", "M(5)", "--json"]), Some(0));
    assert_eq!(code(&["closure", "gamma(twist3(Z))"]), Some(2));
    assert_eq!(code(&["sqrt", "gamma(D/4)", "0"]), Some(3));
    assert_eq!(code(&["verify-paper"]), Some(0));
    let out = Proc::new(bin).args(["sqrt", "M(3)", "0", "--json"]).output().unwrap();
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["payload"]["root"], "1/3");
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => arb_rational().prop_map(Scalar::Rat),
        1 => (arb_rational(), arb_rational(), prop::sample::select(vec![2i64, 3, 5, 7])).prop_filter_map(
            "irrational",
            |(a, b, d)| QuadValue::new(a, b, d).ok().map(Scalar::from_quad),
        ),
    ]
}

fn arb_value() -> impl Strategy<Value = Value> {
    arb_scalar().prop_map(Value::Scalar).prop_recursive(3, 12, 4, |inner| {
        prop::collection::vec(inner, 1..4).prop_map(Value::Tuple)
    })
}

fn arb_tag() -> impl Strategy<Value = ScalarTag> {
    prop::sample::select(vec![ScalarTag::Int, ScalarTag::Dyadic, ScalarTag::Rat])
}

fn arb_linear() -> impl Strategy<Value = GroupDescriptor> {
    let leaf = prop_oneof![
        (1u64..12).prop_map(GroupDescriptor::ScaledInt),
        (0u64..6).prop_map(|k| GroupDescriptor::Dyadic(2 * k + 1)),
        Just(GroupDescriptor::Rat),
        (prop::sample::select(vec![2i64, 3, 5]), any::<bool>()).prop_map(|(d, dy)| {
            GroupDescriptor::quad(QuadValue::new(Rational::zero(), Rational::one(), d).unwrap(), dy)
        }),
        arb_tag().prop_map(GroupDescriptor::Twist3),
        arb_tag().prop_map(GroupDescriptor::Twist4),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| (inner.clone(), inner).prop_map(|(h, g)| GroupDescriptor::lex(h, g)))
}

fn arb_group() -> impl Strategy<Value = GroupDescriptor> {
    prop_oneof![
        2 => arb_linear(),
        1 => prop::collection::vec(arb_linear(), 1..4).prop_map(GroupDescriptor::Product),
    ]
}

fn arb_algebra() -> impl Strategy<Value = AlgebraExpr> {
    let leaf = prop_oneof![(1u64..20).prop_map(AlgebraExpr::Chain), arb_group().prop_map(AlgebraExpr::Gamma)];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(AlgebraExpr::Prod),
            (inner, arb_value()).prop_map(|(a, b)| AlgebraExpr::Interval(Box::new(a), b)),
        ]
    })
}

fn arb_flags() -> impl Strategy<Value = Flags> {
    (
        any::<bool>(),
        any::<bool>(),
        prop::option::of(prop::sample::select(vec![KindFlag::Strict, KindFlag::Sqrt])),
        prop::option::of(prop::sample::select(vec![Quantifier::Ambient, Quantifier::Relative])),
        prop::option::of(0u32..100),
    )
        .prop_map(|(json, approx, kind, quantifier, bound)| Flags { json, approx, kind, quantifier, bound })
}

fn arb_command() -> impl Strategy<Value = Command> {
    (prop::sample::select(Verb::ALL.to_vec()), arb_algebra(), prop::collection::vec(arb_value(), 0..2), arb_flags())
        .prop_map(|(verb, target, mut args, flags)| {
            let (lo, hi) = verb.arity();
            args.truncate(hi);
            while args.len() < lo {
                args.push(Value::int(0));
            }
            let target = verb.needs_target().then_some(target);
            Command { verb, target, args, flags }
        })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(c in arb_command()) {
        let text = c.to_string();
        let back = parse_dsl(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, c);
    }

    #[test]
    fn elements_round_trip(v in arb_value()) {
        prop_assert_eq!(mvroot_cli::parse_element(&v.to_string()).unwrap(), v);
    }
}
