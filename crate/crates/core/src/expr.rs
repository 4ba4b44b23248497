//! Knot expressions: syntax tree, validation, normalization and the text
//! grammar.
//!
//! ```text
//! expr := "unknot" | "torus(" int "," int ")" | "cable(" int "," int "," expr ")"
//!       | "mirror(" expr ")" | "connsum(" expr ("," expr)+ ")"
//!       | "seed(" "name=" ident "," "g=" int "," "tau=" int "," "hopf=" int
//!                 ["," "alex=" '"' poly '"'] ")"
//! ```
//!
//! Keywords are case-insensitive and whitespace is ignored between tokens.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::laurent::LaurentPoly;

/// Parser recursion limit.
pub const MAX_NESTING: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// The `(p, q)` torus knot; negative `q` gives the mirror.
    Torus {
        p: i64,
        q: i64,
    },
    /// The `(p, q)` cable of `companion`, `q` measured against the Seifert
    /// longitude.
    Cable {
        p: i64,
        q: i64,
        companion: Box<KnotExpr>,
    },
    Mirror(Box<KnotExpr>),
    ConnectSum(Vec<KnotExpr>),
    Seed(SeedDescriptor),
}

/// A fibered knot given only by declared data. Results computed for
/// expressions containing seeds are correct if the declarations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedDescriptor {
    pub name: String,
    pub genus: i64,
    pub tau: i64,
    pub hopf: i64,
    pub alexander: Option<LaurentPoly>,
}

impl SeedDescriptor {
    pub fn new(name: impl Into<String>, genus: i64, tau: i64, hopf: i64) -> Self {
        Self {
            name: name.into(),
            genus,
            tau,
            hopf,
            alexander: None,
        }
    }

    pub fn with_alexander(mut self, alexander: LaurentPoly) -> Self {
        self.alexander = Some(alexander);
        self
    }
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus { p, q }
    }

    pub fn cable(p: i64, q: i64, companion: KnotExpr) -> Self {
        KnotExpr::Cable {
            p,
            q,
            companion: Box::new(companion),
        }
    }

    pub fn mirror(inner: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(inner))
    }

    pub fn connsum(summands: impl IntoIterator<Item = KnotExpr>) -> Self {
        KnotExpr::ConnectSum(summands.into_iter().collect())
    }

    pub fn seed(descriptor: SeedDescriptor) -> Self {
        KnotExpr::Seed(descriptor)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } | KnotExpr::Seed(_) => 1,
            KnotExpr::Cable { companion, .. } => 1 + companion.size(),
            KnotExpr::Mirror(inner) => 1 + inner.size(),
            KnotExpr::ConnectSum(xs) => 1 + xs.iter().map(KnotExpr::size).sum::<usize>(),
        }
    }

    /// Checks every node invariant, collecting all violations.
    pub fn validate(self) -> Result<Self, ValidationErrors> {
        let mut violations = Vec::new();
        collect_violations(&self, &mut NodePath::default(), &mut violations);
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ValidationErrors(violations))
        }
    }

    pub fn is_valid(&self) -> bool {
        let mut violations = Vec::new();
        collect_violations(self, &mut NodePath::default(), &mut violations);
        violations.is_empty()
    }

    /// Rewrites to canonical form: trivial cables and torus knots collapse,
    /// mirrors are pushed down to seeds, and connected sums are flattened
    /// with unknot summands removed.
    pub fn normalize(&self) -> KnotExpr {
        match self {
            KnotExpr::Unknot => KnotExpr::Unknot,
            KnotExpr::Torus { p, q } => normal_torus(*p, *q),
            KnotExpr::Cable { p, q, companion } => {
                let companion = companion.normalize();
                if *p == 1 {
                    companion
                } else if companion == KnotExpr::Unknot {
                    normal_torus(*p, *q)
                } else {
                    KnotExpr::cable(*p, *q, companion)
                }
            }
            KnotExpr::Mirror(inner) => mirror_normal(inner.normalize()),
            KnotExpr::ConnectSum(xs) => {
                let mut survivors = Vec::with_capacity(xs.len());
                for x in xs {
                    match x.normalize() {
                        KnotExpr::Unknot => {}
                        KnotExpr::ConnectSum(inner) => survivors.extend(inner),
                        other => survivors.push(other),
                    }
                }
                match survivors.len() {
                    0 => KnotExpr::Unknot,
                    1 => survivors.pop().unwrap(),
                    _ => KnotExpr::ConnectSum(survivors),
                }
            }
            KnotExpr::Seed(s) => KnotExpr::Seed(s.clone()),
        }
    }

    /// Parses and validates an expression.
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        let expr = Parser::new(text).parse_all()?;
        Ok(expr.validate()?)
    }
}

fn normal_torus(p: i64, q: i64) -> KnotExpr {
    if p == 1 || q.abs() == 1 {
        KnotExpr::Unknot
    } else {
        KnotExpr::Torus { p, q }
    }
}

// `e` is already normalized.
fn mirror_normal(e: KnotExpr) -> KnotExpr {
    match e {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Torus { p, q } => KnotExpr::Torus { p, q: -q },
        KnotExpr::Cable { p, q, companion } => KnotExpr::cable(p, -q, mirror_normal(*companion)),
        KnotExpr::Mirror(inner) => *inner,
        KnotExpr::ConnectSum(xs) => KnotExpr::ConnectSum(xs.into_iter().map(mirror_normal).collect()),
        seed @ KnotExpr::Seed(_) => KnotExpr::mirror(seed),
    }
}

impl FromStr for KnotExpr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KnotExpr::parse(s)
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("unknot"),
            KnotExpr::Torus { p, q } => write!(f, "torus({p},{q})"),
            KnotExpr::Cable { p, q, companion } => write!(f, "cable({p},{q}, {companion})"),
            KnotExpr::Mirror(inner) => write!(f, "mirror({inner})"),
            KnotExpr::ConnectSum(xs) => {
                f.write_str("connsum(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            KnotExpr::Seed(s) => {
                write!(f, "seed(name={}, g={}, tau={}, hopf={}", s.name, s.genus, s.tau, s.hopf)?;
                if let Some(alex) = &s.alexander {
                    write!(f, ", alex=\"{alex}\"")?;
                }
                f.write_str(")")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Validation

/// Location of a node, e.g. `/companion/summands[1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(Vec<String>);

impl NodePath {
    fn push(&mut self, step: impl Into<String>) {
        self.0.push(step.into());
    }

    fn pop(&mut self) {
        self.0.pop();
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for step in &self.0 {
            write!(f, "/{step}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ViolationKind {
    #[error("gcd(p,q) must be 1 (p={p}, q={q})")]
    NotCoprime { p: i64, q: i64 },
    #[error("p must be positive (p={0})")]
    NonPositiveP(i64),
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("connected sum needs at least two summands, got {0}")]
    TooFewSummands(usize),
    #[error("seed genus must be at least 1 (g={0})")]
    SeedGenus(i64),
    #[error("seed tau must satisfy |tau| <= g (tau={tau}, g={genus})")]
    SeedTauOutOfRange { tau: i64, genus: i64 },
    #[error("tau=genus forces hopf=0 (hopf={0})")]
    SeedTightHopf(i64),
    #[error("seed alexander polynomial {0}")]
    SeedAlexander(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: NodePath,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.path, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<Violation>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

fn check_pq(p: i64, q: i64, path: &NodePath, out: &mut Vec<Violation>) {
    let mut push = |kind| {
        out.push(Violation {
            path: path.clone(),
            kind,
        })
    };
    if p <= 0 {
        push(ViolationKind::NonPositiveP(p));
    }
    if q == 0 {
        push(ViolationKind::ZeroQ);
    }
    if p > 0 && q != 0 && !p.gcd(&q).is_one() {
        push(ViolationKind::NotCoprime { p, q });
    }
}

fn collect_violations(e: &KnotExpr, path: &mut NodePath, out: &mut Vec<Violation>) {
    match e {
        KnotExpr::Unknot => {}
        KnotExpr::Torus { p, q } => check_pq(*p, *q, path, out),
        KnotExpr::Cable { p, q, companion } => {
            check_pq(*p, *q, path, out);
            path.push("companion");
            collect_violations(companion, path, out);
            path.pop();
        }
        KnotExpr::Mirror(inner) => {
            path.push("inner");
            collect_violations(inner, path, out);
            path.pop();
        }
        KnotExpr::ConnectSum(xs) => {
            if xs.len() < 2 {
                out.push(Violation {
                    path: path.clone(),
                    kind: ViolationKind::TooFewSummands(xs.len()),
                });
            }
            for (i, x) in xs.iter().enumerate() {
                path.push(format!("summands[{i}]"));
                collect_violations(x, path, out);
                path.pop();
            }
        }
        KnotExpr::Seed(s) => {
            for kind in seed_violations(s) {
                out.push(Violation {
                    path: path.clone(),
                    kind,
                });
            }
        }
    }
}

fn seed_violations(s: &SeedDescriptor) -> Vec<ViolationKind> {
    let mut out = Vec::new();
    if s.genus < 1 {
        out.push(ViolationKind::SeedGenus(s.genus));
    }
    if s.tau.checked_abs().is_none_or(|t| t > s.genus) {
        out.push(ViolationKind::SeedTauOutOfRange {
            tau: s.tau,
            genus: s.genus,
        });
    }
    if s.tau == s.genus && s.hopf != 0 {
        out.push(ViolationKind::SeedTightHopf(s.hopf));
    }
    if let Some(alex) = &s.alexander {
        if !alex.is_symmetric_normalized() {
            out.push(ViolationKind::SeedAlexander(
                "must be symmetric with value 1 at t=1".into(),
            ));
        } else {
            let degree = alex.degree().expect("nonzero");
            if degree != s.genus {
                out.push(ViolationKind::SeedAlexander(format!(
                    "has degree {degree} but g={}",
                    s.genus
                )));
            }
            if !alex.leading_coeff().is_some_and(|c| c.abs().is_one()) {
                out.push(ViolationKind::SeedAlexander(
                    "must have leading coefficient +1 or -1 (fibered knots are monic)".into(),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(#[from] ValidationErrors),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, depth: 0 }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => self.fail(format!("expected '{c}', found '{got}'")),
            None => self.fail(format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|(i, c)| !(c.is_ascii_alphabetic() || *c == '_' || (*i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return self.fail("expected an identifier");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ExprError> {
        let start = self.pos;
        let word = self.ident()?;
        if word.eq_ignore_ascii_case(kw) {
            Ok(())
        } else {
            self.pos = start;
            self.skip_ws();
            self.fail(format!("expected '{kw}', found '{word}'"))
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if matches!(bytes.get(end), Some(b'-' | b'+')) {
            end += 1;
        }
        let digits_start = end;
        while bytes.get(end).is_some_and(u8::is_ascii_digit) {
            end += 1;
        }
        if end == digits_start {
            return self.fail("expected an integer");
        }
        match self.src[start..end].parse::<i64>() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.fail("integer out of range"),
        }
    }

    fn parse_all(mut self) -> Result<KnotExpr, ExprError> {
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some(c) => self.fail(format!("unexpected trailing '{c}'")),
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, ExprError> {
        if self.depth >= MAX_NESTING {
            return self.fail("expression nested too deeply");
        }
        self.depth += 1;
        let start = {
            self.skip_ws();
            self.pos
        };
        let word = self.ident()?.to_ascii_lowercase();
        let e = match word.as_str() {
            "unknot" => KnotExpr::Unknot,
            "torus" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(')')?;
                KnotExpr::Torus { p, q }
            }
            "cable" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(',')?;
                let companion = self.expr()?;
                self.expect(')')?;
                KnotExpr::cable(p, q, companion)
            }
            "mirror" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                KnotExpr::mirror(inner)
            }
            "connsum" => {
                self.expect('(')?;
                let mut xs = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    xs.push(self.expr()?);
                }
                self.expect(')')?;
                if xs.len() < 2 {
                    return self.fail("connsum needs at least two summands");
                }
                KnotExpr::ConnectSum(xs)
            }
            "seed" => self.seed()?,
            other => {
                self.pos = start;
                return self.fail(format!("unknown constructor '{other}'"));
            }
        };
        self.depth -= 1;
        Ok(e)
    }

    fn field(&mut self, key: &str) -> Result<(), ExprError> {
        self.keyword(key)?;
        self.expect('=')
    }

    fn seed(&mut self) -> Result<KnotExpr, ExprError> {
        self.expect('(')?;
        self.field("name")?;
        let name = self.ident()?.to_string();
        self.expect(',')?;
        self.field("g")?;
        let genus = self.int()?;
        self.expect(',')?;
        self.field("tau")?;
        let tau = self.int()?;
        self.expect(',')?;
        self.field("hopf")?;
        let hopf = self.int()?;
        let mut seed = SeedDescriptor::new(name, genus, tau, hopf);
        if self.peek() == Some(',') {
            self.pos += 1;
            self.field("alex")?;
            seed.alexander = Some(self.quoted_poly()?);
        }
        self.expect(')')?;
        Ok(KnotExpr::Seed(seed))
    }

    fn quoted_poly(&mut self) -> Result<LaurentPoly, ExprError> {
        self.expect('"')?;
        let body_start = self.pos;
        let Some(len) = self.src[body_start..].find('"') else {
            return self.fail("unterminated polynomial string");
        };
        let body = &self.src[body_start..body_start + len];
        let poly = body.parse::<LaurentPoly>().map_err(|e| match e {
            crate::laurent::LaurentError::Parse { pos, msg } => ExprError::Syntax {
                pos: body_start + pos,
                msg: format!("in polynomial: {msg}"),
            },
            other => ExprError::Syntax {
                pos: body_start,
                msg: other.to_string(),
            },
        })?;
        self.pos = body_start + len + 1;
        Ok(poly)
    }
}
