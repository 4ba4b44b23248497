#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn knotcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcalc"))
        .args(args)
        .output()
        .expect("failed to launch knotcalc")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub success: bool,
}

const BATCH: &str = "@batch_input.txt";

/// Every subcommand in text and JSON form. `@file` arguments resolve inside
/// the golden directory.
pub const GOLDEN: &[GoldenCase] = &[
    GoldenCase {
        name: "eval_headline.txt",
        args: &["eval", "cable(2,1, torus(2,3))"],
        success: true,
    },
    GoldenCase {
        name: "eval_headline.json",
        args: &["eval", "cable(2,1, torus(2,3))", "--json"],
        success: true,
    },
    GoldenCase {
        name: "eval_unknot.json",
        args: &["eval", "unknot", "--json"],
        success: true,
    },
    GoldenCase {
        name: "eval_mirror_trefoil.txt",
        args: &["eval", "mirror(torus(2,3))"],
        success: true,
    },
    GoldenCase {
        name: "eval_seed_cable.txt",
        args: &["eval", "cable(2,3, seed(name=X, g=2, tau=1, hopf=3))"],
        success: true,
    },
    GoldenCase {
        name: "eval_seed_cable.json",
        args: &["eval", "cable(2,3, seed(name=X, g=2, tau=1, hopf=3))", "--json"],
        success: true,
    },
    GoldenCase {
        name: "verify_eligible.txt",
        args: &["verify", "cable(2,3, torus(2,3))"],
        success: true,
    },
    GoldenCase {
        name: "verify_eligible.json",
        args: &["verify", "cable(2,3, torus(2,3))", "--checks", "all", "--json"],
        success: true,
    },
    GoldenCase {
        name: "verify_negative_mirror.txt",
        args: &["verify", "cable(3,-5, torus(2,3))", "--checks", "mirror"],
        success: true,
    },
    GoldenCase {
        name: "verify_seed_staircase.txt",
        args: &["verify", "seed(name=X, g=2, tau=1, hopf=3)", "--checks", "staircase"],
        success: true,
    },
    GoldenCase {
        name: "verify_seed_staircase.json",
        args: &[
            "verify",
            "seed(name=X, g=2, tau=1, hopf=3)",
            "--checks",
            "staircase",
            "--json",
        ],
        success: true,
    },
    GoldenCase {
        name: "batch.txt",
        args: &["batch", BATCH],
        success: false,
    },
    GoldenCase {
        name: "batch.json",
        args: &["batch", BATCH, "--json"],
        success: false,
    },
    GoldenCase {
        name: "classify_singular.txt",
        args: &["classify-singularity", "cable(2,13, torus(2,3))"],
        success: true,
    },
    GoldenCase {
        name: "classify_singular.json",
        args: &["classify-singularity", "cable(2,13, torus(2,3))", "--json"],
        success: true,
    },
    GoldenCase {
        name: "classify_not_singular.txt",
        args: &["classify-singularity", "cable(2,5, torus(2,3))"],
        success: true,
    },
    GoldenCase {
        name: "classify_not_singular.json",
        args: &["classify-singularity", "cable(2,5, torus(2,3))", "--json"],
        success: true,
    },
];

/// Runs one case against its golden file. With `UPDATE_GOLDEN` set the file
/// is rewritten instead.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let dir = golden_dir();
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => dir.join(f).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = knotcalc(&refs);
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    if out.status.success() != case.success {
        return Err(format!(
            "{}: exit status {:?}, stderr: {}",
            case.name,
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let path = dir.join(case.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != stdout {
        return Err(format!(
            "{}: output differs\n--- want\n{want}--- got\n{stdout}",
            case.name
        ));
    }
    Ok(())
}

/// Fifty lines: 45 valid expressions and 5 malformed ones at fixed positions.
pub fn corpus_50() -> (String, Vec<bool>) {
    let bad = [
        "torus(2,4)",
        "cable(2,3",
        "connsum(torus(2,3))",
        "seed(name=S, g=1, tau=1, hopf=2)",
        "knot(3)",
    ];
    let mut lines = Vec::new();
    let mut valid = Vec::new();
    for i in 0..50usize {
        if i % 10 == 7 {
            lines.push(bad[i / 10].to_string());
            valid.push(false);
            continue;
        }
        let p = 2 + (i % 4) as i64;
        let q = (1..)
            .map(|k| k * 2 + 1 + i as i64)
            .find(|q| num_gcd(p, *q) == 1)
            .unwrap();
        let line = match i % 5 {
            0 => format!("torus({p},{q})"),
            1 => format!("cable({p},{q}, torus(2,3))"),
            2 => format!("mirror(torus({p},{q}))"),
            3 => format!("cable({p},-{q}, torus(3,4))"),
            _ => format!("connsum(torus({p},{q}), seed(name=S, g=2, tau=1, hopf=3))"),
        };
        lines.push(line);
        valid.push(true);
    }
    (lines.join("\n") + "\n", valid)
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

/// Batch-order and exit-status contract on the 50-line corpus.
pub fn check_batch_contract() -> Result<(), String> {
    let (src, valid) = corpus_50();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("corpus.txt");
    std::fs::write(&path, &src).map_err(|e| e.to_string())?;
    let path = path.to_string_lossy().into_owned();

    let out = knotcalc(&["batch", &path, "--json"]);
    if out.status.success() {
        return Err("batch with malformed lines exited 0".into());
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    let docs: Vec<&str> = stdout.lines().collect();
    if docs.len() != 50 {
        return Err(format!("expected 50 JSON lines, got {}", docs.len()));
    }
    let stderr_lines = String::from_utf8_lossy(&out.stderr).lines().count();
    if stderr_lines != 5 {
        return Err(format!("expected 5 error messages on stderr, got {stderr_lines}"));
    }
    for ((i, (doc, line)), ok) in docs.iter().zip(src.lines()).enumerate().zip(&valid) {
        let value: serde_json::Value = serde_json::from_str(doc).map_err(|e| format!("line {}: {e}", i + 1))?;
        if *ok {
            // Must equal a standalone eval of the same line.
            let single = knotcalc(&["eval", line, "--json"]);
            if !single.status.success() || String::from_utf8_lossy(&single.stdout).trim_end() != *doc {
                return Err(format!("line {}: batch output differs from eval", i + 1));
            }
        } else if value["line"] != i + 1 || value["input"] != *line || !value["error"].is_string() {
            return Err(format!("line {}: bad error record {doc}", i + 1));
        }
    }

    let text = knotcalc(&["batch", &path]);
    let want: String = src
        .lines()
        .zip(&valid)
        .filter(|(_, ok)| **ok)
        .map(|(l, _)| String::from_utf8_lossy(&knotcalc(&["eval", l]).stdout).into_owned())
        .collect();
    let got: String = String::from_utf8_lossy(&text.stdout)
        .split_inclusive('\n')
        .filter(|l| !l.starts_with("error: "))
        .collect();
    if text.status.success() || got != want {
        return Err("text batch is not the concatenation of eval outputs".into());
    }

    let valid_only: String = src
        .lines()
        .zip(&valid)
        .filter(|(_, ok)| **ok)
        .map(|(l, _)| format!("{l}\n"))
        .collect();
    std::fs::write(dir.path().join("valid.txt"), valid_only).map_err(|e| e.to_string())?;
    let clean = knotcalc(&["batch", &dir.path().join("valid.txt").to_string_lossy(), "--json"]);
    if !clean.status.success() || String::from_utf8_lossy(&clean.stdout).lines().count() != 45 {
        return Err("all-valid batch must exit 0 with 45 reports".into());
    }
    std::fs::write(dir.path().join("empty.txt"), "").map_err(|e| e.to_string())?;
    let empty = knotcalc(&["batch", &dir.path().join("empty.txt").to_string_lossy()]);
    if !empty.status.success() || !empty.stdout.is_empty() {
        return Err("empty batch must exit 0 with no output".into());
    }
    Ok(())
}
