//! Text and JSON renderings of reports, verification outcomes and
//! singularity classifications.

use std::fmt::Write;

use knotcalc_core::invariants::ChainLevel;
use knotcalc_core::verify::{CheckStatus, VerifyOutcome};
use knotcalc_core::{ContactClass, InvariantReport};
use serde::Serialize;
use serde_json::json;

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn report_text(r: &InvariantReport) -> String {
    let mut s = String::new();
    let alexander = r.alexander.as_ref().map_or("unknown".to_string(), |a| a.to_string());
    let contact = match r.contact {
        ContactClass::Tight => "tight".to_string(),
        ContactClass::Overtwisted(h) => format!("overtwisted (hopf {h})"),
    };
    let link = r.link_of_singularity.map_or("n/a", yes_no);
    let surface = r
        .surface_stats
        .map_or("n/a".to_string(), |s| format!("disks={}, bands={}", s.disks, s.bands));
    writeln!(s, "expression: {}", r.expression).unwrap();
    writeln!(s, "genus: {}", r.genus).unwrap();
    writeln!(s, "alexander: {alexander}").unwrap();
    writeln!(s, "hopf: {}", r.hopf).unwrap();
    writeln!(s, "contact: {contact}").unwrap();
    writeln!(s, "tau: {}", r.tau).unwrap();
    writeln!(s, "strongly quasipositive: {}", yes_no(r.strongly_quasipositive)).unwrap();
    writeln!(s, "bounds complex curve: {}", yes_no(r.bounds_complex_curve)).unwrap();
    writeln!(s, "link of singularity: {link}").unwrap();
    writeln!(s, "surface stats: {surface}").unwrap();
    s
}

pub fn report_json(r: &InvariantReport) -> String {
    serde_json::to_string(r).expect("reports always serialize") + "\n"
}

fn status_word(s: &CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skipped",
    }
}

pub fn verify_text(v: &VerifyOutcome) -> String {
    let mut s = String::new();
    writeln!(s, "expression: {}", v.expression).unwrap();
    for c in &v.checks {
        match (&c.status, &c.note) {
            (CheckStatus::Skipped, note) => writeln!(
                s,
                "{}: skipped ({})",
                c.name,
                note.as_deref().unwrap_or("not applicable")
            )
            .unwrap(),
            (status, _) => writeln!(s, "{}: {} ({} comparisons)", c.name, status_word(status), c.comparisons).unwrap(),
        }
        for f in &c.failures {
            writeln!(s, "  {f}").unwrap();
        }
    }
    writeln!(s, "overall: {}", status_word(&v.status)).unwrap();
    s
}

pub fn verify_json(v: &VerifyOutcome) -> String {
    serde_json::to_string(v).expect("outcomes always serialize") + "\n"
}

#[derive(Serialize)]
pub struct Classification<'a> {
    pub expression: String,
    pub link_of_singularity: bool,
    pub bounds_complex_curve: bool,
    pub levels: &'a [ChainLevel],
}

pub fn classify_text(c: &Classification) -> String {
    let mut s = String::new();
    writeln!(s, "expression: {}", c.expression).unwrap();
    writeln!(s, "link of singularity: {}", yes_no(c.link_of_singularity)).unwrap();
    writeln!(s, "bounds complex curve: {}", yes_no(c.bounds_complex_curve)).unwrap();
    for l in c.levels {
        writeln!(
            s,
            "level {}: p={}, q={}, needs q >= {}: {}",
            l.level,
            l.p,
            l.q,
            l.required_min_q,
            if l.satisfied { "ok" } else { "violated" }
        )
        .unwrap();
    }
    s
}

pub fn classify_json(c: &Classification) -> String {
    serde_json::to_string(c).expect("classifications always serialize") + "\n"
}

pub fn batch_error_text(line: usize, input: &str, err: &str) -> String {
    format!("error: line {line}: {input}: {err}\n")
}

pub fn batch_error_json(line: usize, input: &str, err: &str) -> String {
    json!({ "line": line, "input": input, "error": err }).to_string() + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotcalc_core::verify::{CheckKind, CheckOutcome, Disagreement, Route};

    #[test]
    fn failures_show_both_routes() {
        let v = VerifyOutcome {
            expression: "cable(2,-1, torus(2,3))".into(),
            status: CheckStatus::Fail,
            checks: vec![CheckOutcome {
                name: CheckKind::Mirror,
                status: CheckStatus::Fail,
                comparisons: 7,
                note: None,
                failures: vec![Disagreement {
                    instance: "cable(2,-1, torus(2,3))".into(),
                    quantity: "hopf".into(),
                    left: Route {
                        path: "negative-cable branch".into(),
                        value: "-2".into(),
                    },
                    right: Route {
                        path: "mirror route".into(),
                        value: "-4".into(),
                    },
                }],
            }],
        };
        assert_eq!(
            verify_text(&v),
            "expression: cable(2,-1, torus(2,3))\n\
             mirror: FAIL (7 comparisons)\n  \
             hopf on cable(2,-1, torus(2,3)): negative-cable branch: -2 vs mirror route: -4\n\
             overall: FAIL\n"
        );
        let json: serde_json::Value = serde_json::from_str(&verify_json(&v)).unwrap();
        assert_eq!(json["checks"][0]["failures"][0]["right"]["value"], "-4");
    }

    #[test]
    fn batch_error_records() {
        assert_eq!(
            batch_error_json(3, "torus(2,4)", "bad"),
            "{\"error\":\"bad\",\"input\":\"torus(2,4)\",\"line\":3}\n"
        );
        assert_eq!(batch_error_text(3, "x", "bad"), "error: line 3: x: bad\n");
    }
}
