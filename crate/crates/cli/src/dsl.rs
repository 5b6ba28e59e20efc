//! The command language.
//!
//! ```text
//! command := verb [expr] {elem} {flag}
//! expr    := M(<int>) | gamma(group) | prod(expr, …) | interval(expr, elem)
//! group   := Z[/n] | D[/q] | Q | quad(v) | dquad(v) | lex(group, group)
//!          | twist3(S) | twist4(S) | prod(group, …)
//! elem    := scalar | (elem, …)
//! scalar  := p[/q] | [p[/q]] (+|-) [p[/q]*] sqrt(d)
//! flag    := --json | --approx | --kind strict|sqrt
//!          | --quantifier ambient|relative | --bound <n>
//! ```

use std::fmt;

use mvroot::roots::Quantifier;
use mvroot::{Algebra, GroupDescriptor, QuadValue, Rational, Scalar, ScalarTag, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verb {
    Analyze,
    Sqrt,
    SqrtMap,
    Ideals,
    Closure,
    Member,
    Decompose,
    Greatest,
    VerifyPaper,
}

impl Verb {
    pub const ALL: [Verb; 9] = [
        Verb::Analyze,
        Verb::Sqrt,
        Verb::SqrtMap,
        Verb::Ideals,
        Verb::Closure,
        Verb::Member,
        Verb::Decompose,
        Verb::Greatest,
        Verb::VerifyPaper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Analyze => "analyze",
            Verb::Sqrt => "sqrt",
            Verb::SqrtMap => "sqrtmap",
            Verb::Ideals => "ideals",
            Verb::Closure => "closure",
            Verb::Member => "member",
            Verb::Decompose => "decompose",
            Verb::Greatest => "greatest",
            Verb::VerifyPaper => "verify-paper",
        }
    }

    fn from_name(s: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == s)
    }

    /// How many element arguments the verb takes, as `(min, max)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Verb::Sqrt | Verb::Member => (1, 1),
            Verb::Decompose => (0, 1),
            _ => (0, 0),
        }
    }

    pub fn needs_target(self) -> bool {
        self != Verb::VerifyPaper
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KindFlag {
    Strict,
    Sqrt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub approx: bool,
    pub kind: Option<KindFlag>,
    pub quantifier: Option<Quantifier>,
    pub bound: Option<u32>,
}

/// An algebra expression, kept unevaluated so that commands print back verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraExpr {
    Chain(u64),
    Gamma(GroupDescriptor),
    Prod(Vec<AlgebraExpr>),
    Interval(Box<AlgebraExpr>, Value),
}

impl AlgebraExpr {
    pub fn build(&self) -> mvroot::Result<Algebra> {
        match self {
            AlgebraExpr::Chain(n) => Algebra::finite_mv_chain(*n),
            AlgebraExpr::Gamma(d) => Algebra::gamma(d.clone()),
            AlgebraExpr::Prod(fs) => Algebra::product(&fs.iter().map(|f| f.build()).collect::<mvroot::Result<Vec<_>>>()?),
            AlgebraExpr::Interval(a, b) => {
                let a = a.build()?;
                let b = a.element(b)?;
                a.interval(&b)
            }
        }
    }
}

impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraExpr::Chain(n) => write!(f, "M({n})"),
            AlgebraExpr::Gamma(d) => write!(f, "gamma({d})"),
            AlgebraExpr::Prod(fs) => {
                f.write_str("prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            AlgebraExpr::Interval(a, b) => write!(f, "interval({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub target: Option<AlgebraExpr>,
    pub args: Vec<Value>,
    pub flags: Flags,
}

impl Command {
    pub fn new(verb: Verb, target: Option<AlgebraExpr>, args: Vec<Value>) -> Self {
        Command { verb, target, args, flags: Flags::default() }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verb)?;
        if let Some(t) = &self.target {
            write!(f, " {t}")?;
        }
        for a in &self.args {
            write!(f, " {a}")?;
        }
        let fl = &self.flags;
        if fl.json {
            f.write_str(" --json")?;
        }
        if fl.approx {
            f.write_str(" --approx")?;
        }
        if let Some(k) = fl.kind {
            f.write_str(match k {
                KindFlag::Strict => " --kind strict",
                KindFlag::Sqrt => " --kind sqrt",
            })?;
        }
        if let Some(q) = fl.quantifier {
            write!(f, " --quantifier {q}")?;
        }
        if let Some(b) = fl.bound {
            write!(f, " --bound {b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::Semantic => "semantic error",
        };
        write!(f, "{k} at {}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DslError {}

type PResult<T> = Result<T, DslError>;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, at: usize, kind: DslErrorKind, message: impl Into<String>) -> DslError {
        let (line, column) = self.location(at);
        DslError { kind, line, column, message: message.into() }
    }

    fn syntax(&self, message: impl Into<String>) -> DslError {
        self.error_at(self.pos, DslErrorKind::Syntax, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(match self.peek() {
                Some(got) => format!("expected `{c}`, found `{got}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    /// Letters, digits, `_` and inner `-` (so `verify-paper` is one word).
    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            let inner_dash = c == '-' && self.pos > start && self.chars.get(self.pos + 1).is_some_and(|n| n.is_alphanumeric());
            if c.is_alphanumeric() || c == '_' || inner_dash {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn unsigned(&mut self, what: &str) -> PResult<u64> {
        self.skip_ws();
        let at = self.pos;
        let s = self.digits();
        if s.is_empty() {
            return Err(self.syntax(format!("expected {what}")));
        }
        s.parse().map_err(|_| self.error_at(at, DslErrorKind::Semantic, format!("{what} `{s}` is out of range")))
    }

    /// `[-]p[/q]` without surrounding whitespace handling of the sign.
    fn rational(&mut self) -> PResult<Option<Rational>> {
        let at = self.pos;
        let neg = self.peek() == Some('-');
        if neg || self.peek() == Some('+') {
            self.pos += 1;
        }
        let num = self.digits();
        if num.is_empty() {
            self.pos = at;
            return Ok(None);
        }
        let mut text = format!("{}{num}", if neg { "-" } else { "" });
        if self.peek() == Some('/') && self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            text.push('/');
            text.push_str(&self.digits());
        }
        text.parse::<Rational>()
            .map(Some)
            .map_err(|e| self.error_at(at, DslErrorKind::Semantic, e.to_string()))
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(kw.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    /// `sqrt(d)` after an optional coefficient.
    fn radical(&mut self) -> PResult<Option<i64>> {
        if !self.keyword("sqrt(") {
            return Ok(None);
        }
        let at = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(self.syntax("expected the radicand of sqrt"));
        }
        let d = d
            .parse()
            .map_err(|_| self.error_at(at, DslErrorKind::Semantic, format!("radicand `{d}` is too large")))?;
        self.expect(')')?;
        Ok(Some(d))
    }

    fn scalar(&mut self) -> PResult<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let a = self.rational()?;
        if a.is_none() && !self.chars[self.pos..].starts_with(&['s', 'q', 'r', 't']) {
            return Err(self.syntax("expected a number or a tuple"));
        }
        // a*sqrt(d) or a standalone sqrt(d)
        let coefficient_only = |p: &mut Self| -> PResult<Option<i64>> {
            let back = p.pos;
            if p.peek() == Some('*') {
                p.pos += 1;
                if let Some(d) = p.radical()? {
                    return Ok(Some(d));
                }
                p.pos = back;
                return Ok(None);
            }
            p.radical()
        };
        if let Some(d) = coefficient_only(self)? {
            let b = a.unwrap_or_else(Rational::one);
            return self.quad(start, Rational::zero(), b, d);
        }
        let Some(a) = a else {
            return Err(self.syntax("expected a number"));
        };
        let back = self.pos;
        if let Some(sign @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let b = match self.rational()? {
                Some(b) => b,
                None => Rational::one(),
            };
            let b = if sign == '-' { -b } else { b };
            if let Some(d) = coefficient_only(self)? {
                return self.quad(start, a, b, d);
            }
            self.pos = back;
        }
        Ok(Scalar::Rat(a))
    }

    fn quad(&self, start: usize, a: Rational, b: Rational, d: i64) -> PResult<Scalar> {
        QuadValue::new(a, b, d)
            .map(Scalar::from_quad)
            .map_err(|e| self.error_at(start, DslErrorKind::Semantic, e.to_string()))
    }

    fn element(&mut self) -> PResult<Value> {
        self.skip_ws();
        if self.eat('(') {
            let mut items = vec![self.element()?];
            while self.eat(',') {
                items.push(self.element()?);
            }
            self.expect(')')?;
            return Ok(Value::Tuple(items));
        }
        Ok(Value::Scalar(self.scalar()?))
    }

    fn tag(&mut self) -> PResult<ScalarTag> {
        let at = self.pos;
        match self.word().as_str() {
            "Z" => Ok(ScalarTag::Int),
            "D" => Ok(ScalarTag::Dyadic),
            "Q" => Ok(ScalarTag::Rat),
            other => Err(self.error_at(at, DslErrorKind::Syntax, format!("expected Z, D or Q, found `{other}`"))),
        }
    }

    fn alpha(&mut self) -> PResult<QuadValue> {
        self.skip_ws();
        let at = self.pos;
        match self.scalar()? {
            Scalar::Quad(q) => Ok(q),
            Scalar::Rat(r) => Err(self.error_at(at, DslErrorKind::Semantic, format!("α = {r} must be irrational"))),
        }
    }

    fn group(&mut self) -> PResult<GroupDescriptor> {
        self.skip_ws();
        let at = self.pos;
        let name = self.word();
        let d = match name.as_str() {
            "Z" | "D" => {
                let scale = if self.eat('/') { self.unsigned("a scale")? } else { 1 };
                if name == "Z" {
                    GroupDescriptor::ScaledInt(scale)
                } else {
                    GroupDescriptor::Dyadic(scale)
                }
            }
            "Q" => GroupDescriptor::Rat,
            "quad" | "dquad" => {
                self.expect('(')?;
                let alpha = self.alpha()?;
                self.expect(')')?;
                GroupDescriptor::quad(alpha, name == "dquad")
            }
            "lex" => {
                self.expect('(')?;
                let h = self.group()?;
                self.expect(',')?;
                let g = self.group()?;
                self.expect(')')?;
                GroupDescriptor::lex(h, g)
            }
            "twist3" | "twist4" => {
                self.expect('(')?;
                let t = self.tag()?;
                self.expect(')')?;
                if name == "twist3" {
                    GroupDescriptor::Twist3(t)
                } else {
                    GroupDescriptor::Twist4(t)
                }
            }
            "prod" => GroupDescriptor::Product(self.list(Self::group)?),
            "" => return Err(self.syntax("expected a group")),
            other => return Err(self.error_at(at, DslErrorKind::Syntax, format!("unknown group `{other}`"))),
        };
        d.validate().map_err(|e| self.error_at(at, DslErrorKind::Semantic, e.to_string()))?;
        Ok(d)
    }

    fn list<T>(&mut self, item: fn(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect('(')?;
        let mut out = vec![item(self)?];
        while self.eat(',') {
            out.push(item(self)?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn algebra(&mut self) -> PResult<AlgebraExpr> {
        self.skip_ws();
        let at = self.pos;
        match self.word().as_str() {
            "M" => {
                self.expect('(')?;
                let n = self.unsigned("the chain length")?;
                self.expect(')')?;
                if n == 0 {
                    return Err(self.error_at(at, DslErrorKind::Semantic, "M(n) needs n >= 1"));
                }
                Ok(AlgebraExpr::Chain(n))
            }
            "gamma" => {
                self.expect('(')?;
                let g = self.group()?;
                self.expect(')')?;
                Ok(AlgebraExpr::Gamma(g))
            }
            "prod" => Ok(AlgebraExpr::Prod(self.list(Self::algebra)?)),
            "interval" => {
                self.expect('(')?;
                let a = self.algebra()?;
                self.expect(',')?;
                let b = self.element()?;
                self.expect(')')?;
                Ok(AlgebraExpr::Interval(Box::new(a), b))
            }
            "" => Err(self.syntax("expected an algebra")),
            other => Err(self.error_at(at, DslErrorKind::Syntax, format!("unknown algebra `{other}`"))),
        }
    }

    fn flag(&mut self, flags: &mut Flags) -> PResult<()> {
        let at = self.pos;
        self.pos += 2;
        let name = self.word();
        let value = |p: &mut Self| {
            p.skip_ws();
            let v_at = p.pos;
            (p.word(), v_at)
        };
        match name.as_str() {
            "json" => flags.json = true,
            "approx" => flags.approx = true,
            "kind" => {
                let (v, v_at) = value(self);
                flags.kind = Some(match v.as_str() {
                    "strict" => KindFlag::Strict,
                    "sqrt" => KindFlag::Sqrt,
                    _ => return Err(self.error_at(v_at, DslErrorKind::Syntax, "--kind takes strict or sqrt")),
                });
            }
            "quantifier" => {
                let (v, v_at) = value(self);
                flags.quantifier = Some(
                    v.parse().map_err(|_| self.error_at(v_at, DslErrorKind::Syntax, "--quantifier takes ambient or relative"))?,
                );
            }
            "bound" => {
                let n = self.unsigned("a bound")?;
                flags.bound = Some(
                    u32::try_from(n).map_err(|_| self.error_at(at, DslErrorKind::Semantic, "--bound is too large"))?,
                );
            }
            other => return Err(self.error_at(at, DslErrorKind::Syntax, format!("unknown flag `--{other}`"))),
        }
        Ok(())
    }

    fn command(&mut self) -> PResult<Command> {
        self.skip_ws();
        let at = self.pos;
        let name = self.word();
        let verb = Verb::from_name(&name).ok_or_else(|| {
            let names: Vec<&str> = Verb::ALL.iter().map(|v| v.name()).collect();
            let found = if name.is_empty() { "nothing".to_string() } else { format!("`{name}`") };
            self.error_at(at, DslErrorKind::Syntax, format!("expected a verb ({}), found {found}", names.join(", ")))
        })?;
        let mut flags = Flags::default();
        let mut target = None;
        let mut args = Vec::new();
        while !self.at_end() {
            if self.chars[self.pos..].starts_with(&['-', '-']) {
                self.flag(&mut flags)?;
            } else if target.is_none() && verb.needs_target() {
                target = Some(self.algebra()?);
            } else {
                let a_at = self.pos;
                let v = self.element()?;
                if args.len() == verb.arity().1 {
                    return Err(self.error_at(a_at, DslErrorKind::Syntax, format!("too many arguments for `{verb}`")));
                }
                args.push(v);
            }
        }
        if verb.needs_target() && target.is_none() {
            return Err(self.syntax(format!("`{verb}` needs an algebra")));
        }
        if args.len() < verb.arity().0 {
            return Err(self.syntax(format!("`{verb}` needs an element argument")));
        }
        Ok(Command { verb, target, args, flags })
    }
}

/// Parses one command.
pub fn parse_dsl(text: &str) -> Result<Command, DslError> {
    Parser::new(text).command()
}

/// Parses a standalone algebra expression.
pub fn parse_algebra(text: &str) -> Result<AlgebraExpr, DslError> {
    let mut p = Parser::new(text);
    let a = p.algebra()?;
    if !p.at_end() {
        return Err(p.syntax("trailing input after the algebra"));
    }
    Ok(a)
}

/// Parses a standalone element.
pub fn parse_element(text: &str) -> Result<Value, DslError> {
    let mut p = Parser::new(text);
    let v = p.element()?;
    if !p.at_end() {
        return Err(p.syntax("trailing input after the element"));
    }
    Ok(v)
}
