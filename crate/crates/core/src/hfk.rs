//! Knot Floer homology tables of staircase (L-space) knots, rebuilt from the
//! Alexander polynomial. This is an independent route to the Hopf invariant
//! and tau of positive torus knots and their sufficiently positive cables.

use serde::Serialize;
use thiserror::Error;

use crate::expr::KnotExpr;
use crate::invariants::{self, InvariantError};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HfkError {
    #[error("polynomial is not symmetric")]
    Asymmetric,
    #[error("not a staircase polynomial: {0}")]
    NotStaircase(String),
    #[error("top alexander grading has rank {0}, expected 1")]
    TopRank(u64),
    #[error("empty table")]
    Empty,
    #[error("grading overflow")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HfkEntry {
    pub alexander: i64,
    pub maslov: i64,
    pub rank: u64,
}

/// Bigraded ranks, sorted by decreasing Alexander grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HfkTable(Vec<HfkEntry>);

impl HfkTable {
    /// Builds a table from `(alexander, maslov, rank)` triples.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, i64, u64)>) -> Self {
        let mut v: Vec<HfkEntry> = entries
            .into_iter()
            .map(|(alexander, maslov, rank)| HfkEntry {
                alexander,
                maslov,
                rank,
            })
            .collect();
        v.sort_by(|a, b| b.alexander.cmp(&a.alexander).then(b.maslov.cmp(&a.maslov)));
        HfkTable(v)
    }

    pub fn entries(&self) -> &[HfkEntry] {
        &self.0
    }

    pub fn top(&self) -> Option<&HfkEntry> {
        self.0.first()
    }

    pub fn as_triples(&self) -> Vec<(i64, i64, u64)> {
        self.0.iter().map(|e| (e.alexander, e.maslov, e.rank)).collect()
    }

    /// `sum rank * (-1)^maslov * t^alexander`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().map(|e| {
            let sign: i64 = if e.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
            (e.alexander, num_bigint::BigInt::from(e.rank) * sign)
        }))
    }
}

/// Reconstructs the table of a staircase knot from its Alexander polynomial.
///
/// With nonzero exponents `n_0 > n_1 > ... > n_2m`, the top generator sits in
/// Maslov grading 0; odd steps drop by `2(n_{j-1} - n_j) - 1`, even steps by 1.
pub fn staircase_from_alexander(delta: &LaurentPoly) -> Result<HfkTable, HfkError> {
    if delta.is_zero() {
        return Err(HfkError::NotStaircase("zero polynomial".into()));
    }
    if !delta.is_symmetric() {
        return Err(HfkError::Asymmetric);
    }
    let terms: Vec<(i64, i64)> = delta
        .terms()
        .rev()
        .map(|(e, c)| {
            i64::try_from(c)
                .ok()
                .filter(|c| c.abs() == 1)
                .map(|c| (e, c))
                .ok_or_else(|| HfkError::NotStaircase(format!("coefficient {c} at t^{e} is not +-1")))
        })
        .collect::<Result<_, _>>()?;
    if terms[0].1 != 1 {
        return Err(HfkError::NotStaircase("leading coefficient must be +1".into()));
    }
    if terms.len().is_multiple_of(2) {
        return Err(HfkError::NotStaircase("even number of terms".into()));
    }
    if let Some(w) = terms.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(HfkError::NotStaircase(format!(
            "signs do not alternate at t^{}",
            w[1].0
        )));
    }

    let mut entries = Vec::with_capacity(terms.len());
    let mut maslov = 0i64;
    entries.push((terms[0].0, maslov, 1));
    for (j, w) in terms.windows(2).enumerate() {
        let drop = if j % 2 == 0 {
            w[0].0
                .checked_sub(w[1].0)
                .and_then(|gap| gap.checked_mul(2))
                .map(|x| x - 1)
                .ok_or(HfkError::Overflow)?
        } else {
            1
        };
        maslov = maslov.checked_sub(drop).ok_or(HfkError::Overflow)?;
        entries.push((w[1].0, maslov, 1));
    }
    let table = HfkTable::from_entries(entries);
    if !check_conjugation_symmetry(&table) {
        return Err(HfkError::NotStaircase(
            "reconstructed table violates conjugation symmetry".into(),
        ));
    }
    debug_assert_eq!(&table.euler_characteristic(), delta);
    Ok(table)
}

/// Table of the reflection: `(a, m, r) -> (-a, -m, r)`.
pub fn mirror_table(t: &HfkTable) -> HfkTable {
    HfkTable::from_entries(t.0.iter().map(|e| (-e.alexander, -e.maslov, e.rank)))
}

/// Every `(a, m, r)` has a partner `(-a, m - 2a, r)`.
pub fn check_conjugation_symmetry(t: &HfkTable) -> bool {
    t.0.iter().all(|e| {
        let want = e.maslov.checked_sub(e.alexander.saturating_mul(2));
        t.0.iter()
            .any(|o| Some(o.maslov) == want && o.alexander == -e.alexander && o.rank == e.rank)
    })
}

/// Minus the Maslov grading of the rank-one top group.
pub fn hopf_from_table(t: &HfkTable) -> Result<i64, HfkError> {
    let top = t.top().ok_or(HfkError::Empty)?;
    let rank: u64 =
        t.0.iter()
            .take_while(|e| e.alexander == top.alexander)
            .map(|e| e.rank)
            .sum();
    if rank != 1 {
        return Err(HfkError::TopRank(rank));
    }
    top.maslov.checked_neg().ok_or(HfkError::Overflow)
}

/// Top Alexander grading; equals tau for the staircase tables built here.
pub fn tau_from_table(t: &HfkTable) -> Result<i64, HfkError> {
    t.top().map(|e| e.alexander).ok_or(HfkError::Empty)
}

/// Structural filter for expressions whose table can be rebuilt: positive
/// torus knots and cables `K_{p,q}` of such knots with `q >= p(2g(K) - 1)`.
/// Expects a normalized expression.
pub fn oracle_eligible(e: &KnotExpr) -> Result<bool, InvariantError> {
    Ok(match e {
        KnotExpr::Unknot => true,
        KnotExpr::Torus { q, .. } => *q > 0,
        KnotExpr::Cable { p, q, companion } => {
            let g = invariants::genus(companion)?;
            let bound = g
                .checked_mul(2)
                .and_then(|x| x.checked_sub(1))
                .and_then(|x| x.checked_mul(*p))
                .ok_or(InvariantError::Overflow("eligibility bound"))?;
            *q > 0 && *q >= bound && oracle_eligible(companion)?
        }
        _ => false,
    })
}
