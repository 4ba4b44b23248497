//! Consistency checks that compare two independent computations of the same
//! invariant on an expression and on small perturbations of it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::expr::{KnotExpr, SeedDescriptor};
use crate::hfk;
use crate::invariants::{self, InvariantError, TauValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Mirror,
    GenusDegree,
    Staircase,
    Connsum,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::Mirror,
        CheckKind::GenusDegree,
        CheckKind::Staircase,
        CheckKind::Connsum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Mirror => "mirror",
            CheckKind::GenusDegree => "genus-degree",
            CheckKind::Staircase => "staircase",
            CheckKind::Connsum => "connsum",
        }
    }

    /// Parses a comma-separated selection; `all` selects every check.
    pub fn parse_list(list: &str) -> Result<Vec<CheckKind>, String> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim) {
            if item.eq_ignore_ascii_case("all") {
                out.extend(Self::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for CheckKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check '{s}' (expected mirror, genus-degree, staircase, connsum or all)"))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One side of a comparison: the value and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Route {
    pub path: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub instance: String,
    pub quantity: String,
    pub left: Route,
    pub right: Route,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {}: {}: {} vs {}: {}",
            self.quantity, self.instance, self.left.path, self.left.value, self.right.path, self.right.value
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: CheckKind,
    pub status: CheckStatus,
    /// Number of comparisons made.
    pub comparisons: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub failures: Vec<Disagreement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub expression: String,
    pub status: CheckStatus,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Accumulates comparisons for one check.
struct Ledger {
    kind: CheckKind,
    comparisons: usize,
    failures: Vec<Disagreement>,
    note: Option<String>,
}

impl Ledger {
    fn new(kind: CheckKind) -> Self {
        Ledger {
            kind,
            comparisons: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        instance: &KnotExpr,
        quantity: &str,
        left: (&str, T),
        right: (&str, T),
    ) {
        self.comparisons += 1;
        if left.1 != right.1 {
            self.failures.push(Disagreement {
                instance: instance.to_string(),
                quantity: quantity.to_string(),
                left: Route {
                    path: left.0.to_string(),
                    value: left.1.to_string(),
                },
                right: Route {
                    path: right.0.to_string(),
                    value: right.1.to_string(),
                },
            });
        }
    }

    fn skip(kind: CheckKind, note: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: kind,
            status: CheckStatus::Skipped,
            comparisons: 0,
            note: Some(note.into()),
            failures: Vec::new(),
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.kind,
            status: if self.failures.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            comparisons: self.comparisons,
            note: self.note,
            failures: self.failures,
        }
    }
}

/// Hopf invariant of the negative cable `K_{p,q}` computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MirrorRoute {
    /// Direct negative-cable formula.
    pub cable_branch: i64,
    /// Reflect, take the positive `(p, -q)` cable of the mirror, reflect back.
    pub mirror_route: i64,
}

/// Requires `q < 0`. The mirror route evaluates `cable(p,-q, mirror(K))`
/// without normalizing, so it only uses the positive-cable rule and the
/// reflection identity `h(K) = -h(mirror K) - 2g`.
pub fn mirror_route(p: i64, q: i64, companion: &KnotExpr) -> Result<MirrorRoute, InvariantError> {
    let cable = KnotExpr::cable(p, q, companion.clone());
    let cable_branch = invariants::hopf(&cable)?;
    let reflected = KnotExpr::cable(p, -q, KnotExpr::mirror(companion.clone()));
    let mirror_route = invariants::mirror_hopf(invariants::hopf(&reflected)?, invariants::genus(&cable)?)?;
    Ok(MirrorRoute {
        cable_branch,
        mirror_route,
    })
}

const PERTURB_NEGATIVE: [(i64, i64); 6] = [(2, -1), (2, -3), (3, -1), (3, -5), (4, -3), (5, -7)];
const PERTURB_MIXED: [(i64, i64); 5] = [(2, 1), (2, 3), (2, -3), (3, 2), (3, -4)];

fn check_mirror(n: &KnotExpr) -> Result<CheckOutcome, InvariantError> {
    let mut ledger = Ledger::new(CheckKind::Mirror);
    let mut cases: Vec<(i64, i64, KnotExpr)> = PERTURB_NEGATIVE.iter().map(|&(p, q)| (p, q, n.clone())).collect();
    if let KnotExpr::Cable { p, q, companion } = n {
        if *q < 0 {
            cases.insert(0, (*p, *q, (**companion).clone()));
        }
    }
    for (p, q, companion) in cases {
        let r = mirror_route(p, q, &companion)?;
        ledger.compare(
            &KnotExpr::cable(p, q, companion),
            "hopf",
            ("negative-cable branch", r.cable_branch),
            ("mirror route", r.mirror_route),
        );
    }
    let reflected = KnotExpr::mirror(n.clone()).normalize();
    ledger.compare(
        n,
        "hopf",
        ("structural recursion", invariants::hopf(n)?),
        (
            "reflection identity on normalized mirror",
            invariants::mirror_hopf(invariants::hopf(&reflected)?, invariants::genus(n)?)?,
        ),
    );
    Ok(ledger.finish())
}

fn check_genus_degree(n: &KnotExpr) -> Result<CheckOutcome, InvariantError> {
    if invariants::alexander(n).is_none() {
        return Ok(Ledger::skip(CheckKind::GenusDegree, "no Alexander data"));
    }
    let mut ledger = Ledger::new(CheckKind::GenusDegree);
    let mut instances = vec![n.clone(), KnotExpr::mirror(n.clone()).normalize()];
    instances.extend(
        PERTURB_MIXED
            .iter()
            .map(|&(p, q)| KnotExpr::cable(p, q, n.clone()).normalize()),
    );
    for e in &instances {
        let Some(delta) = invariants::alexander(e) else {
            continue;
        };
        let degree = delta
            .degree()
            .map_err(|err| InvariantError::Inconsistent(err.to_string()))?;
        ledger.compare(
            e,
            "genus",
            ("formula", invariants::genus(e)?),
            ("alexander degree", degree),
        );
        ledger.compare(
            e,
            "alexander symmetry",
            ("polynomial", delta.to_string()),
            ("t -> 1/t", delta.reverse().to_string()),
        );
        ledger.compare(
            e,
            "alexander at t=1",
            ("evaluation", delta.eval_at_one()),
            ("expected", 1.into()),
        );
    }
    Ok(ledger.finish())
}

fn check_staircase(n: &KnotExpr) -> Result<CheckOutcome, InvariantError> {
    if !hfk::oracle_eligible(n)? {
        return Ok(Ledger::skip(CheckKind::Staircase, "ineligible"));
    }
    let Some(delta) = invariants::alexander(n) else {
        return Ok(Ledger::skip(CheckKind::Staircase, "alexander polynomial unavailable"));
    };
    let mut ledger = Ledger::new(CheckKind::Staircase);
    let table = match hfk::staircase_from_alexander(&delta) {
        Ok(t) => t,
        Err(err) => {
            ledger.compare(
                n,
                "staircase table",
                ("reconstruction", err.to_string()),
                ("expected", "a table".into()),
            );
            return Ok(ledger.finish());
        }
    };
    let hopf = invariants::hopf(n)?;
    let genus = invariants::genus(n)?;
    let table_hopf = hfk::hopf_from_table(&table).map_err(|e| InvariantError::Inconsistent(e.to_string()))?;
    let table_tau = hfk::tau_from_table(&table).map_err(|e| InvariantError::Inconsistent(e.to_string()))?;
    ledger.compare(n, "hopf", ("formula", hopf), ("top Maslov grading", table_hopf));
    ledger.compare(
        n,
        "tau",
        ("genus", TauValue::Exact(genus)),
        ("table", TauValue::Exact(table_tau)),
    );
    ledger.compare(
        n,
        "tau",
        ("formula", invariants::tau(n)?),
        ("table", TauValue::Exact(table_tau)),
    );
    ledger.compare(
        n,
        "tight",
        ("formula", invariants::is_tight(n)?),
        ("eligible staircase", true),
    );
    ledger.compare(
        n,
        "conjugation symmetry",
        ("table", hfk::check_conjugation_symmetry(&table)),
        ("expected", true),
    );
    ledger.compare(
        n,
        "euler characteristic",
        ("table", table.euler_characteristic().to_string()),
        ("alexander", delta.to_string()),
    );
    let mirror = KnotExpr::mirror(n.clone()).normalize();
    let mirror_table_hopf =
        hfk::hopf_from_table(&hfk::mirror_table(&table)).map_err(|e| InvariantError::Inconsistent(e.to_string()))?;
    ledger.compare(
        &mirror,
        "hopf",
        ("formula", invariants::hopf(&mirror)?),
        ("mirrored table", mirror_table_hopf),
    );
    ledger.compare(
        &mirror,
        "hopf",
        ("reflection identity", invariants::mirror_hopf(hopf, genus)?),
        ("mirrored table", mirror_table_hopf),
    );
    Ok(ledger.finish())
}

fn connsum_partners() -> Vec<KnotExpr> {
    vec![
        KnotExpr::torus(2, 3),
        KnotExpr::torus(2, -3),
        KnotExpr::torus(3, 4),
        KnotExpr::seed(SeedDescriptor::new("S", 2, 1, 3)),
    ]
}

fn check_connsum(n: &KnotExpr) -> Result<CheckOutcome, InvariantError> {
    use invariants::{genus, hopf, is_tight, tau};
    let mut ledger = Ledger::new(CheckKind::Connsum);
    for partner in connsum_partners() {
        let sum = KnotExpr::connsum([n.clone(), partner.clone()]).normalize();
        ledger.compare(
            &sum,
            "genus",
            ("sum", genus(&sum)?),
            ("summands", genus(n)? + genus(&partner)?),
        );
        ledger.compare(
            &sum,
            "hopf",
            ("sum", hopf(&sum)?),
            ("summands", hopf(n)? + hopf(&partner)?),
        );
        ledger.compare(
            &sum,
            "tight",
            ("sum", is_tight(&sum)?),
            ("summands", is_tight(n)? && is_tight(&partner)?),
        );
        if let (TauValue::Exact(a), TauValue::Exact(b)) = (tau(n)?, tau(&partner)?) {
            ledger.compare(&sum, "tau", ("sum", tau(&sum)?), ("summands", TauValue::Exact(a + b)));
        }
    }
    Ok(ledger.finish())
}

/// Runs the selected checks on `e` (validated).
pub fn verify(e: &KnotExpr, checks: &[CheckKind]) -> Result<VerifyOutcome, InvariantError> {
    let n = e.normalize();
    let mut outcomes = Vec::with_capacity(checks.len());
    for kind in checks {
        outcomes.push(match kind {
            CheckKind::Mirror => check_mirror(&n)?,
            CheckKind::GenusDegree => check_genus_degree(&n)?,
            CheckKind::Staircase => check_staircase(&n)?,
            CheckKind::Connsum => check_connsum(&n)?,
        });
    }
    let status = if outcomes.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else {
        CheckStatus::Pass
    };
    Ok(VerifyOutcome {
        expression: e.to_string(),
        status,
        checks: outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str, checks: &[CheckKind]) -> VerifyOutcome {
        verify(&KnotExpr::parse(text).unwrap(), checks).unwrap()
    }

    #[test]
    fn eligible_cable_passes_everything() {
        let out = run("cable(2,3, torus(2,3))", &CheckKind::ALL);
        assert!(out.passed(), "{out:?}");
        assert!(out.checks.iter().all(|c| c.status == CheckStatus::Pass));
        let staircase = out.checks.iter().find(|c| c.name == CheckKind::Staircase).unwrap();
        assert!(staircase.comparisons >= 8);
    }

    #[test]
    fn mirror_route_on_negative_cable() {
        let out = run("cable(3,-5, torus(2,3))", &[CheckKind::Mirror]);
        assert!(out.passed());
        assert_eq!(out.checks[0].comparisons, PERTURB_NEGATIVE.len() + 2);
    }

    #[test]
    fn seed_staircase_is_skipped() {
        let out = run("seed(name=X, g=2, tau=1, hopf=3)", &[CheckKind::Staircase]);
        assert!(out.passed());
        assert_eq!(out.checks[0].status, CheckStatus::Skipped);
        assert_eq!(out.checks[0].note.as_deref(), Some("ineligible"));
    }

    #[test]
    fn mirror_route_values() {
        let r = mirror_route(2, -1, &KnotExpr::torus(2, 3)).unwrap();
        assert_eq!(
            r,
            MirrorRoute {
                cable_branch: -2,
                mirror_route: -2
            }
        );
    }

    #[test]
    fn parse_check_lists() {
        assert_eq!(CheckKind::parse_list("all").unwrap(), CheckKind::ALL.to_vec());
        assert_eq!(
            CheckKind::parse_list("staircase, mirror,mirror").unwrap(),
            vec![CheckKind::Mirror, CheckKind::Staircase]
        );
        assert!(CheckKind::parse_list("bogus").is_err());
    }

    #[test]
    fn disagreement_names_both_paths() {
        let mut ledger = Ledger::new(CheckKind::Mirror);
        ledger.compare(
            &KnotExpr::torus(2, -3),
            "hopf",
            ("negative-cable branch", -2),
            ("mirror route", -4),
        );
        let out = ledger.finish();
        assert_eq!(out.status, CheckStatus::Fail);
        assert_eq!(
            out.failures[0].to_string(),
            "hopf on torus(2,-3): negative-cable branch: -2 vs mirror route: -4"
        );
    }
}
