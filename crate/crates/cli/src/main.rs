mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use knotcalc_core::batch::{evaluate_batch, Execution};
use knotcalc_core::verify::{self, CheckKind};
use knotcalc_core::{invariants, KnotExpr};

use render::Classification;

/// Invariants of fibered knots built from torus knots, cables, mirrors,
/// connected sums and declared seed knots.
#[derive(Parser)]
#[command(name = "knotcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of one expression.
    Eval {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check invariants by independent routes.
    Verify {
        expr: String,
        /// Comma-separated: mirror, genus-degree, staircase, connsum, all.
        #[arg(long, default_value = "all", value_parser = parse_checks)]
        checks: Checks,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one expression per line; `#` starts a comment line.
    Batch {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an iterated torus knot is a plane curve singularity link.
    ClassifySingularity {
        expr: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone)]
struct Checks(Vec<CheckKind>);

fn parse_checks(s: &str) -> Result<Checks, String> {
    CheckKind::parse_list(s).map(Checks)
}

/// Everything a subcommand produced; `main` writes it out.
struct Output {
    stdout: String,
    stderr: String,
    ok: bool,
}

impl Output {
    fn failure(msg: impl std::fmt::Display) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            ok: false,
        }
    }
}

fn run_eval(expr: &str, json: bool) -> Output {
    match knotcalc_core::evaluate(expr) {
        Ok(r) => Output {
            stdout: if json {
                render::report_json(&r)
            } else {
                render::report_text(&r)
            },
            stderr: String::new(),
            ok: true,
        },
        Err(e) => Output::failure(e),
    }
}

fn run_verify(expr: &str, checks: &[CheckKind], json: bool) -> Output {
    let e = match KnotExpr::parse(expr) {
        Ok(e) => e,
        Err(e) => return Output::failure(e),
    };
    match verify::verify(&e, checks) {
        Ok(v) => Output {
            stdout: if json {
                render::verify_json(&v)
            } else {
                render::verify_text(&v)
            },
            stderr: String::new(),
            ok: v.passed(),
        },
        Err(e) => Output::failure(e),
    }
}

fn run_batch(file: &PathBuf, json: bool) -> Output {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => return Output::failure(format_args!("{}: {e}", file.display())),
    };
    let mut out = Output {
        stdout: String::new(),
        stderr: String::new(),
        ok: true,
    };
    for item in evaluate_batch(&src, Execution::default()) {
        let (n, text) = (item.line.line_no, item.line.text);
        match item.result {
            Ok(r) if json => out.stdout += &render::report_json(&r),
            Ok(r) => out.stdout += &render::report_text(&r),
            Err(e) => {
                let msg = e.to_string();
                out.ok = false;
                out.stdout += &if json {
                    render::batch_error_json(n, text, &msg)
                } else {
                    render::batch_error_text(n, text, &msg)
                };
                out.stderr += &format!("error: line {n}: {msg}\n");
            }
        }
    }
    out
}

fn run_classify(expr: &str, json: bool) -> Output {
    let parsed = match KnotExpr::parse(expr) {
        Ok(e) => e,
        Err(e) => return Output::failure(e),
    };
    let e = parsed.normalize();
    let Some(levels) = invariants::singularity_ledger(&e) else {
        return Output::failure("not an iterated torus knot");
    };
    let bounds = match invariants::bounds_complex_curve(&e) {
        Ok(b) => b,
        Err(err) => return Output::failure(err),
    };
    let c = Classification {
        expression: parsed.to_string(),
        link_of_singularity: levels.iter().all(|l| l.satisfied),
        bounds_complex_curve: bounds,
        levels: &levels,
    };
    Output {
        stdout: if json {
            render::classify_json(&c)
        } else {
            render::classify_text(&c)
        },
        stderr: String::new(),
        ok: true,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Eval { expr, json } => run_eval(expr, *json),
        Command::Verify { expr, checks, json } => run_verify(expr, &checks.0, *json),
        Command::Batch { file, json } => run_batch(file, *json),
        Command::ClassifySingularity { expr, json } => run_classify(expr, *json),
    };
    // A closed pipe on stdout is not worth a panic.
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
