//! Order-preserving evaluation of many independent inputs, on the rayon pool
//! when the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::invariants::InvariantReport;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `items.iter().map(f).collect()`, with results in input order regardless of
/// execution strategy.
pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// One input line of a batch file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchLine<'a> {
    /// 1-based line number in the source.
    pub line_no: usize,
    pub text: &'a str,
}

/// Non-blank lines that do not start with `#`.
pub fn batch_lines(src: &str) -> Vec<BatchLine<'_>> {
    src.lines()
        .enumerate()
        .map(|(i, l)| BatchLine {
            line_no: i + 1,
            text: l.trim(),
        })
        .filter(|l| !l.text.is_empty() && !l.text.starts_with('#'))
        .collect()
}

#[derive(Debug)]
pub struct BatchResult<'a> {
    pub line: BatchLine<'a>,
    pub result: Result<InvariantReport, Error>,
}

/// Evaluates every expression line of `src`; results come back in input order.
pub fn evaluate_batch(src: &str, exec: Execution) -> Vec<BatchResult<'_>> {
    let lines = batch_lines(src);
    let results = map_ordered(&lines, exec, |l| crate::evaluate(l.text));
    lines
        .into_iter()
        .zip(results)
        .map(|(line, result)| BatchResult { line, result })
        .collect()
}
