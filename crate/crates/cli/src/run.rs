use std::sync::Arc;

use mvroot::closures::{self, ClosureDescriptor, SqrtClosureOutcome};
use mvroot::ideals::{self, IdealSet};
use mvroot::roots::{self, NoRootReason, SqrtResult};
use mvroot::{Algebra, Element, Error, FiniteAlgebra, GroupDescriptor, Result, ScalarTag, Value};
use serde_json::{json, Value as Json};

use crate::dsl::{Command, KindFlag, Verb};
use crate::ledger::verify_paper;
use crate::report::{Report, Status};

/// Executes a parsed command. Library errors become reports with the
/// matching status; this never panics on user input.
pub fn run(cmd: &Command) -> Report {
    let target = cmd.target.as_ref().map(|t| t.to_string());
    let report = match dispatch(cmd) {
        Ok(r) => r,
        Err(e) => Report::from_error(cmd.verb.name(), target.clone(), &e),
    };
    let report = Report { target, ..report };
    if cmd.flags.approx {
        report.with_approx()
    } else {
        report
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    if cmd.verb == Verb::VerifyPaper {
        return Ok(verify_paper());
    }
    let alg = cmd.target.as_ref().expect("parser guarantees a target").build()?;
    match cmd.verb {
        Verb::Analyze => analyze(&alg),
        Verb::Sqrt => sqrt(&alg, &cmd.args[0], cmd.flags.bound),
        Verb::SqrtMap => sqrtmap(&alg),
        Verb::Ideals => ideals_of(&alg),
        Verb::Closure => closure(&alg, cmd.flags.kind.unwrap_or(KindFlag::Strict)),
        Verb::Member => member(&alg, &cmd.args[0]),
        Verb::Decompose => decompose(&alg, cmd.args.first()),
        Verb::Greatest => greatest(&alg, cmd.flags.quantifier.unwrap_or_default()),
        Verb::VerifyPaper => unreachable!("handled above"),
    }
}

fn report(status: Status, verb: Verb) -> Report {
    Report::new(status, verb.name(), None)
}

/// The finite table of an algebra, when its carrier is finite.
fn finite_view(alg: &Algebra) -> Result<Option<Arc<FiniteAlgebra>>> {
    match alg {
        Algebra::Finite(f) => Ok(Some(f.clone())),
        Algebra::Gamma(d) if d.has_finite_gamma() => alg.to_finite().map(Some),
        Algebra::Gamma(_) => Ok(None),
    }
}

fn labels(fa: &FiniteAlgebra, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&i| fa.label(i).to_string()).collect()
}

fn show_set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn analyze(alg: &Algebra) -> Result<Report> {
    let mut r = report(Status::Ok, Verb::Analyze);
    let sqrt0 = roots::sqrt_zero(alg)?;
    let sqrt0_text = sqrt0.root().map(|a| alg.show(a));
    let (symmetric, _) = alg.is_symmetric()?;
    let mut payload = json!({
        "descriptor": alg.to_descriptor().ok().map(|d| d.to_string()),
        "symmetric": symmetric,
        "sqrt_zero": sqrt0_text,
    });
    r.summary.push(match &sqrt0_text {
        Some(z) => format!("√0 = {z}"),
        None => "√0 does not exist".to_string(),
    });
    if let Algebra::Gamma(d) = alg {
        let (central, witness) = d.is_unit_central();
        payload["group"] = json!({
            "linear": d.is_linear(),
            "abelian": d.is_abelian(),
            "two_divisible": d.is_two_divisible(),
            "unit_central": central,
            "non_central_witness": witness.map(|w| d.render(&w).to_string()),
        });
        r.provenance.push("gamma.half-unit-floor".into());
        if let Some(m) = roots::gamma_sqrt_map(d) {
            payload["sqrt_map"] = json!({ "kinds": m.kinds, "strict": m.strict, "w": d.render(&m.w).to_string() });
            r.summary.push(format!("square-root map exists (strict: {}, w = {})", m.strict, d.render(&m.w)));
        } else {
            payload["sqrt_map"] = Json::Null;
            r.summary.push("no factorwise square-root map".to_string());
        }
        if let Ok(spec) = ideals::symbolic_spectrum(d) {
            r.summary.push(format!("Boolean subdirectly irreducible: {}", spec.is_bsi()));
            payload["bsi"] = json!(spec.is_bsi());
            payload["spectrum"] = serde_json::to_value(&spec).expect("serializable");
            r.provenance.push("spectrum.convex-subgroups".into());
        }
    }
    if let Some(fa) = finite_view(alg)? {
        payload["size"] = json!(fa.size());
        payload["commutative"] = json!(fa.is_commutative());
        payload["boolean_skeleton"] = json!(labels(&fa, &fa.boolean_skeleton()));
        r.summary.push(format!("{} elements, {} idempotent", fa.size(), fa.boolean_skeleton().len()));
        match roots::sqrt_map(&fa) {
            Some(m) => {
                payload["finite_sqrt_map"] = json!({ "strict": m.strict, "w": fa.label(m.w).to_string() });
                if alg.as_finite().is_some() {
                    r.summary.push(format!("square-root map exists (strict: {}, w = {})", m.strict, fa.label(m.w)));
                }
            }
            None => {
                payload["finite_sqrt_map"] = Json::Null;
                if alg.as_finite().is_some() {
                    r.summary.push("no square-root map".to_string());
                }
            }
        }
        if fa.size() > 1 && fa.size() <= ideals::ideal_cap() {
            let bsi = ideals::is_bsi(&fa)?;
            payload["bsi"] = json!(bsi);
            if alg.as_finite().is_some() {
                r.summary.push(format!("Boolean subdirectly irreducible: {bsi}"));
            }
            r.provenance.push("ideals.prime-partition".into());
        }
        r.provenance.push("roots.brute-force".into());
    }
    r.payload = payload;
    Ok(r)
}

fn reason_json(alg: &Algebra, why: &NoRootReason) -> Json {
    match why {
        NoRootReason::Sq2Violated(y) => json!({ "code": why.code(), "witness": alg.show(y) }),
        _ => json!({ "code": why.code(), "witness": Json::Null }),
    }
}

fn reason_text(alg: &Algebra, why: &NoRootReason) -> String {
    match why {
        NoRootReason::NoSolution => "no a satisfies a⊙a = x".into(),
        NoRootReason::Sq2Violated(y) => format!("{} has y⊙y ≤ x but lies below no solution", alg.show(y)),
        NoRootReason::NoMaxOfNilpotents => "the elements with y⊙y = 0 have no greatest member".into(),
    }
}

fn method(alg: &Algebra) -> &'static str {
    match alg {
        Algebra::Finite(_) => "roots.brute-force",
        Algebra::Gamma(GroupDescriptor::Twist3(ScalarTag::Int)) => "roots.twist3-procedure",
        Algebra::Gamma(d) if d.is_abelian() && d.try_halve(&d.unit()).is_some() => "roots.half-sum-formula",
        Algebra::Gamma(d) if d.has_finite_gamma() => "roots.brute-force",
        Algebra::Gamma(_) => "roots.boolean-join",
    }
}

fn radicand(x: &str) -> String {
    if x.contains("sqrt") {
        format!("({x})")
    } else {
        x.to_string()
    }
}

fn sqrt(alg: &Algebra, v: &Value, bound: Option<u32>) -> Result<Report> {
    let x = alg.element(v)?;
    let res = roots::sqrt(alg, &x)?;
    let mut r = match &res {
        SqrtResult::Exists(a) => {
            let mut r = report(Status::Ok, Verb::Sqrt);
            r.summary.push(format!("√{} = {}", radicand(&alg.show(&x)), alg.show(a)));
            r.payload = json!({ "x": alg.show(&x), "root": alg.show(a), "reason": Json::Null });
            r
        }
        SqrtResult::NotExists(why) => {
            let mut r = report(Status::NotExists, Verb::Sqrt);
            r.summary.push(format!("{} has no square root: {}", alg.show(&x), reason_text(alg, why)));
            r.payload = json!({ "x": alg.show(&x), "root": Json::Null, "reason": reason_json(alg, why) });
            r
        }
    };
    r.provenance.push(method(alg).into());
    if let Some(b) = bound {
        let check = box_search(alg, &x, &res, b)?;
        r.summary.push(format!("box search on [-{b},{b}]: {}", if check["agrees"] == json!(true) { "agrees" } else { "DISAGREES" }));
        r.payload["box"] = check;
        r.provenance.push("roots.box-search".into());
    }
    Ok(r)
}

/// Candidate elements of `Γ(G,u)` with integer coordinates in `[-b, b]`.
fn box_elements(alg: &Algebra, b: u32) -> Result<Vec<Element>> {
    let Algebra::Gamma(d) = alg else {
        return Err(Error::Unsupported("box search applies to Γ algebras".into()));
    };
    let k = d.arity();
    if k > 4 {
        return Err(Error::Resource(format!("box search over {k} coordinates")));
    }
    let b = i64::from(b);
    let side = (2 * b + 1) as usize;
    let mut out = Vec::new();
    for t in 0..side.pow(k as u32) {
        let mut rest = t;
        let coords: Vec<i64> = (0..k)
            .map(|_| {
                let c = (rest % side) as i64 - b;
                rest /= side;
                c
            })
            .collect();
        let e = Element::Group(mvroot::GroupElement::from_ints(&coords));
        if alg.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

fn box_root(alg: &Algebra, x: &Element, b: u32) -> Result<Option<Element>> {
    let cands = box_elements(alg, b)?;
    let mut below = Vec::new();
    for y in &cands {
        if alg.leq(&alg.odot(y, y)?, x)? {
            below.push(y.clone());
        }
    }
    for a in &below {
        if alg.odot(a, a)? == *x && below.iter().all(|y| alg.leq(y, a).unwrap_or(false)) {
            return Ok(Some(a.clone()));
        }
    }
    Ok(None)
}

/// Brute-force cross-check inside a finite box. At `x = 0` a box always has a
/// top nilpotent, so absence is confirmed by the top moving as the box grows.
fn box_search(alg: &Algebra, x: &Element, res: &SqrtResult, b: u32) -> Result<Json> {
    let found = box_root(alg, x, b)?;
    let agrees = if *x == alg.zero() && !res.exists() {
        found != box_root(alg, x, b + 1)?
    } else {
        found.as_ref() == res.root()
    };
    Ok(json!({
        "bound": b,
        "root": found.as_ref().map(|a| alg.show(a)),
        "agrees": agrees,
    }))
}

fn sqrtmap(alg: &Algebra) -> Result<Report> {
    if let Some(fa) = finite_view(alg)? {
        let mut r = match roots::sqrt_map(&fa) {
            Some(m) => {
                let mut r = report(Status::Ok, Verb::SqrtMap);
                let table: Vec<Json> = (0..fa.size())
                    .map(|x| json!({ "x": fa.label(x).to_string(), "root": fa.label(m.map[x]).to_string() }))
                    .collect();
                r.summary.push(format!("square-root map on {} elements (strict: {}, w = {})", fa.size(), m.strict, fa.label(m.w)));
                for x in 0..fa.size() {
                    r.summary.push(format!("r({}) = {}", fa.label(x), fa.label(m.map[x])));
                }
                r.payload = json!({ "strict": m.strict, "w": fa.label(m.w).to_string(), "table": table });
                r
            }
            None => {
                let mut r = report(Status::Absent, Verb::SqrtMap);
                let (x, why) = (0..fa.size())
                    .find_map(|x| match roots::sqrt_element_finite(&fa, x) {
                        SqrtResult::NotExists(w) => Some((x, w)),
                        SqrtResult::Exists(_) => None,
                    })
                    .expect("a missing map has a rootless element");
                let fin: Algebra = Algebra::Finite(fa.clone());
                r.summary.push(format!("no square-root map: {} has no square root ({})", fa.label(x), reason_text(&fin, &why)));
                r.payload = json!({ "first_failure": fa.label(x).to_string(), "reason": reason_json(&fin, &why) });
                r
            }
        };
        r.provenance.push("roots.brute-force".into());
        return Ok(r);
    }
    let d = alg.to_descriptor()?;
    let mut r = match roots::gamma_sqrt_map(&d) {
        Some(m) => {
            let mut r = report(Status::Ok, Verb::SqrtMap);
            r.summary.push(format!(
                "r(x) = (x+u)/2 on strict factors, identity on Z factors (strict: {}, w = {})",
                m.strict,
                d.render(&m.w)
            ));
            r.payload = json!({ "kinds": m.kinds, "strict": m.strict, "w": d.render(&m.w).to_string() });
            r
        }
        None => {
            let mut r = report(Status::Absent, Verb::SqrtMap);
            let bad: Vec<String> = d
                .factors()
                .into_iter()
                .filter(|f| roots::gamma_sqrt_map(f).is_none())
                .map(|f| f.to_string())
                .collect();
            r.summary.push(format!("no factorwise square-root map; failing factors: {}", bad.join(", ")));
            r.payload = json!({ "failing_factors": bad });
            r
        }
    };
    r.provenance.push("roots.factorwise-map".into());
    Ok(r)
}

fn ideal_json(fa: &FiniteAlgebra, i: &IdealSet) -> Json {
    json!({
        "members": labels(fa, &i.members),
        "top": fa.label(i.top).to_string(),
        "normal": i.is_normal,
        "prime": i.is_prime,
        "boolean": i.is_boolean_ideal,
        "strict_square": i.is_strict_square_ideal,
    })
}

fn ideals_of(alg: &Algebra) -> Result<Report> {
    let mut r = report(Status::Ok, Verb::Ideals);
    if let Some(fa) = finite_view(alg)? {
        let all = ideals::enumerate_ideals(&fa)?;
        r.summary.push(format!("{} ideals", all.len()));
        for i in &all {
            let mut tags = Vec::new();
            for (on, t) in [(i.is_normal, "normal"), (i.is_prime, "prime"), (i.is_boolean_ideal, "boolean")] {
                if on {
                    tags.push(t);
                }
            }
            if i.is_strict_square_ideal == Some(true) {
                tags.push("strict-square");
            }
            r.summary.push(format!("↓{} = {} [{}]", fa.label(i.top), show_set(&labels(&fa, &i.members)), tags.join(", ")));
        }
        r.payload = json!({ "ideals": all.iter().map(|i| ideal_json(&fa, i)).collect::<Vec<_>>() });
        if fa.size() > 1 {
            let p = ideals::partition_primes(&fa)?;
            let a = ideals::nn12_element(&fa)?;
            r.summary.push(format!("I₁ = {}, I₂ = {}", show_set(&labels(&fa, &p.i1)), show_set(&labels(&fa, &p.i2))));
            r.summary.push(match a {
                Some(a) => format!("separating element a = {}", fa.label(a)),
                None => "no separating element".to_string(),
            });
            r.payload["i1"] = json!(labels(&fa, &p.i1));
            r.payload["i2"] = json!(labels(&fa, &p.i2));
            r.payload["bsi"] = json!(p.i2 == vec![fa.zero()]);
            r.payload["separating"] = json!(a.map(|a| fa.label(a).to_string()));
        }
        r.provenance.push("ideals.idempotent-downsets".into());
        r.provenance.push("ideals.prime-partition".into());
        return Ok(r);
    }
    let d = alg.to_descriptor()?;
    let spec = ideals::symbolic_spectrum(&d)?;
    for f in &spec.factors {
        r.summary.push(format!("{}: I₁ = {}, I₂ = {}", f.factor, f.i1, f.i2));
    }
    let a = spec.nn12(&d);
    r.summary.push(match &a {
        Ok(a) => format!("separating element a = {}", d.render(a)),
        Err(why) => format!("no separating element: {why}"),
    });
    r.payload = json!({
        "spectrum": spec,
        "bsi": spec.is_bsi(),
        "separating": a.as_ref().ok().map(|a| d.render(a).to_string()),
    });
    r.provenance.push("spectrum.convex-subgroups".into());
    Ok(r)
}

fn closure_json(c: &ClosureDescriptor) -> Json {
    json!({
        "display": c.to_string(),
        "base": c.base().to_string(),
        "closed": c.closed().to_string(),
        "factors": c.factors,
    })
}

fn closure(alg: &Algebra, kind: KindFlag) -> Result<Report> {
    let d = alg.to_descriptor()?;
    match kind {
        KindFlag::Strict => {
            let c = closures::strict_closure(&d)?;
            let crit = closures::crit_check(&c.base(), &c.closed())?;
            let mut r = report(Status::Ok, Verb::Closure);
            r.summary.push(format!("C(M) = Γ({}, u)", c.closed()));
            r.summary.push(c.to_string());
            r.summary.push(format!("every element halves back into the base: {}", crit.holds()));
            r.payload = json!({ "kind": "strict", "closure": closure_json(&c), "crit": crit });
            r.provenance.push("closures.two-divisible-hull".into());
            r.provenance.push("closures.halving-criterion".into());
            if !crit.holds() {
                r.status = Status::Error;
            }
            Ok(r)
        }
        KindFlag::Sqrt => {
            let out = closures::sqrt_closure(alg)?;
            let mut r = match &out {
                SqrtClosureOutcome::Closure { case, closure: c, a, notes } => {
                    let mut r = report(Status::Ok, Verb::Closure);
                    r.summary.push(format!("D(M) = Γ({}, u) [{:?}]", c.closed(), case));
                    r.summary.push(c.to_string());
                    if let Some(a) = a {
                        r.summary.push(format!("separating element a = {}", d.render(a)));
                    }
                    r.summary.extend(notes.iter().cloned());
                    r.payload = json!({
                        "kind": "sqrt",
                        "case": case,
                        "closure": closure_json(c),
                        "a": a.as_ref().map(|a| d.render(a).to_string()),
                        "notes": notes,
                    });
                    r
                }
                SqrtClosureOutcome::OpenProblem { reason, spectrum } => {
                    let mut r = report(Status::OpenProblem, Verb::Closure);
                    r.summary.push(reason.clone());
                    r.payload = json!({ "kind": "sqrt", "reason": reason, "spectrum": spectrum });
                    r
                }
            };
            r.provenance.push("closures.case-analysis".into());
            r.provenance.push("spectrum.convex-subgroups".into());
            Ok(r)
        }
    }
}

fn member(alg: &Algebra, v: &Value) -> Result<Report> {
    match alg.element(v) {
        Ok(x) => {
            let mut r = report(Status::Ok, Verb::Member);
            r.summary.push(format!("{} is an element", alg.show(&x)));
            r.payload = json!({ "x": v.to_string(), "member": true, "reason": Json::Null });
            Ok(r)
        }
        Err(e @ (Error::NotMember(_) | Error::DescriptorMismatch(_) | Error::Param(_))) => {
            let mut r = report(Status::NotExists, Verb::Member);
            r.summary.push(e.to_string());
            r.payload = json!({ "x": v.to_string(), "member": false, "reason": e.to_string() });
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

fn decompose(alg: &Algebra, x: Option<&Value>) -> Result<Report> {
    let mut r = report(Status::Ok, Verb::Decompose);
    match x {
        Some(v) => {
            let d = alg.to_descriptor()?;
            let c = closures::strict_closure(&d)?;
            let closed = c.closed();
            let x = closed.element(v)?;
            let dec = closures::corrdp_decompose(&x, &c)?;
            let parts: Vec<String> = dec.parts.iter().map(|p| closed.render(p).to_string()).collect();
            r.summary.push(format!("{} = ({}) / 2^{}", closed.render(&x), parts.join(" + "), dec.n));
            r.payload = json!({ "x": closed.render(&x).to_string(), "n": dec.n, "parts": parts });
            r.provenance.push("closures.halving-decomposition".into());
        }
        None => {
            let fa = finite_view(alg)?
                .ok_or_else(|| Error::Unsupported("the w-decomposition is computed on finite algebras".into()))?;
            let dec = ideals::decomposition_by_w(&fa)?;
            let (a, ca) = &dec.boolean_part;
            let (b, cb) = &dec.strict_part;
            r.summary.push(format!(
                "M ≅ [0,{}] × [0,{}] with {} and {} elements (verified: {})",
                fa.label(dec.w),
                fa.label(fa.lneg(dec.w)),
                a.size(),
                b.size(),
                dec.iso_verified
            ));
            r.payload = json!({
                "w": fa.label(dec.w).to_string(),
                "boolean_part": labels(&fa, ca),
                "strict_part": labels(&fa, cb),
                "iso_verified": dec.iso_verified,
                "boolean_part_is_boolean": dec.boolean_part_is_boolean,
                "strict_part_is_strict": dec.strict_part_is_strict,
            });
            r.provenance.push("ideals.w-decomposition".into());
            if !(dec.iso_verified && dec.boolean_part_is_boolean && dec.strict_part_is_strict) {
                r.status = Status::Error;
            }
        }
    }
    Ok(r)
}

fn greatest(alg: &Algebra, q: roots::Quantifier) -> Result<Report> {
    let fa = finite_view(alg)?
        .ok_or_else(|| Error::Unsupported("the greatest subalgebra is computed on finite algebras".into()))?;
    let (ambient, relative, differ) = roots::compare_quantifiers(&fa);
    let g = if q == roots::Quantifier::Ambient { ambient } else { relative };
    let mut r = report(Status::Ok, Verb::Greatest);
    let stages: Vec<Json> = g
        .stages
        .iter()
        .map(|s| json!({ "carrier": labels(&fa, &s.carrier), "subalgebra": s.is_subalgebra }))
        .collect();
    for (i, s) in g.stages.iter().enumerate() {
        r.summary.push(format!(
            "X{} = {}{}",
            i + 1,
            show_set(&labels(&fa, &s.carrier)),
            if s.is_subalgebra { " (subalgebra)" } else { "" }
        ));
    }
    r.summary.push(format!("quantifier: {q}; the other reading {}", if differ { "differs" } else { "agrees" }));
    r.payload = json!({
        "quantifier": q,
        "stages": stages,
        "fixpoint": labels(&fa, &g.fixpoint().carrier),
        "readings_differ": differ,
    });
    r.provenance.push("roots.greatest-subalgebra".into());
    Ok(r)
}
