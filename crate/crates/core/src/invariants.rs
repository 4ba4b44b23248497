//! Invariants of fibered knot expressions, by structural recursion.
//!
//! All functions expect a validated expression. `genus` and `hopf` give the
//! same answer on any validated tree; the remaining predicates assume the
//! tree is normalized (see [`KnotExpr::normalize`]), which [`report`] does
//! itself.
//!
//! Conventions: the tight structure is reported separately from the
//! overtwisted ones, and its plane field has Hopf invariant 0. The enhanced
//! Milnor number of a fibered knot is `-hopf`.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::expr::KnotExpr;
use crate::laurent::LaurentPoly;

/// Alexander polynomials are not computed above this genus.
pub const ALEXANDER_GENUS_LIMIT: i64 = 1 << 20;
/// Largest term-count product attempted in a single polynomial multiplication.
const ALEXANDER_MUL_BUDGET: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

type Result<T> = std::result::Result<T, InvariantError>;

fn ovf(what: &'static str) -> impl FnOnce() -> InvariantError {
    move || InvariantError::Overflow(what)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactClass {
    Tight,
    Overtwisted(i64),
}

impl Serialize for ContactClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            ContactClass::Tight => map.serialize_entry("tight", &true)?,
            ContactClass::Overtwisted(h) => map.serialize_entry("overtwisted", h)?,
        }
        map.end()
    }
}

/// The tau invariant, exactly or as a closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauValue {
    Exact(i64),
    Bounds(i64, i64),
}

impl TauValue {
    pub fn lo(&self) -> i64 {
        match *self {
            TauValue::Exact(v) => v,
            TauValue::Bounds(lo, _) => lo,
        }
    }

    pub fn hi(&self) -> i64 {
        match *self {
            TauValue::Exact(v) => v,
            TauValue::Bounds(_, hi) => hi,
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    fn interval(lo: i64, hi: i64) -> Result<Self> {
        match lo.cmp(&hi) {
            std::cmp::Ordering::Less => Ok(TauValue::Bounds(lo, hi)),
            std::cmp::Ordering::Equal => Ok(TauValue::Exact(lo)),
            std::cmp::Ordering::Greater => {
                Err(InvariantError::Inconsistent(format!("empty tau interval [{lo}, {hi}]")))
            }
        }
    }

    fn clamp(self, genus: i64) -> Result<Self> {
        Self::interval(self.lo().max(-genus), self.hi().min(genus))
    }

    fn negate(self) -> Self {
        match self {
            TauValue::Exact(v) => TauValue::Exact(-v),
            TauValue::Bounds(lo, hi) => TauValue::Bounds(-hi, -lo),
        }
    }
}

impl Serialize for TauValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            TauValue::Exact(v) => map.serialize_entry("exact", v)?,
            TauValue::Bounds(lo, hi) => map.serialize_entry("bounds", &[lo, hi])?,
        }
        map.end()
    }
}

impl std::fmt::Display for TauValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TauValue::Exact(v) => write!(f, "{v}"),
            TauValue::Bounds(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// Disk and band counts of a quasipositive Seifert surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasipositiveSurfaceStats {
    pub disks: i64,
    pub bands: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub expression: String,
    pub genus: i64,
    pub alexander: Option<LaurentPoly>,
    pub hopf: i64,
    pub contact: ContactClass,
    pub tau: TauValue,
    pub strongly_quasipositive: bool,
    pub bounds_complex_curve: bool,
    pub link_of_singularity: Option<bool>,
    pub surface_stats: Option<QuasipositiveSurfaceStats>,
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantReport", 10)?;
        st.serialize_field("expression", &self.expression)?;
        st.serialize_field("genus", &self.genus)?;
        st.serialize_field("alexander", &self.alexander)?;
        st.serialize_field("hopf", &self.hopf)?;
        st.serialize_field("contact", &self.contact)?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("strongly_quasipositive", &self.strongly_quasipositive)?;
        st.serialize_field("bounds_complex_curve", &self.bounds_complex_curve)?;
        st.serialize_field("link_of_singularity", &self.link_of_singularity)?;
        st.serialize_field("surface_stats", &self.surface_stats)?;
        st.end()
    }
}

/// Genus of the `(p, |q|)` torus knot.
pub fn torus_genus(p: i64, q: i64) -> Result<i64> {
    let a = p.checked_sub(1).ok_or_else(ovf("genus"))?;
    let b = q
        .checked_abs()
        .and_then(|q| q.checked_sub(1))
        .ok_or_else(ovf("genus"))?;
    Ok(a.checked_mul(b).ok_or_else(ovf("genus"))? / 2)
}

pub fn genus(e: &KnotExpr) -> Result<i64> {
    match e {
        KnotExpr::Unknot => Ok(0),
        KnotExpr::Torus { p, q } => torus_genus(*p, *q),
        KnotExpr::Cable { p, q, companion } => p
            .checked_mul(genus(companion)?)
            .and_then(|g| g.checked_add(torus_genus(*p, *q).ok()?))
            .ok_or_else(ovf("genus")),
        KnotExpr::Mirror(inner) => genus(inner),
        KnotExpr::ConnectSum(xs) => xs
            .iter()
            .try_fold(0i64, |acc, x| acc.checked_add(genus(x)?).ok_or_else(ovf("genus"))),
        KnotExpr::Seed(s) => Ok(s.genus),
    }
}

/// Symmetric-normalized Alexander polynomial, or `None` when some subtree
/// carries no Alexander data (undeclared seed) or the polynomial is too large
/// to compute.
pub fn alexander(e: &KnotExpr) -> Option<LaurentPoly> {
    if genus(e).ok()? > ALEXANDER_GENUS_LIMIT {
        return None;
    }
    alexander_inner(e)
}

fn bounded_mul(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    (a.num_terms().saturating_mul(b.num_terms()) <= ALEXANDER_MUL_BUDGET).then(|| a * b)
}

fn alexander_inner(e: &KnotExpr) -> Option<LaurentPoly> {
    match e {
        KnotExpr::Unknot => Some(LaurentPoly::one()),
        KnotExpr::Torus { p, q } => LaurentPoly::torus_alexander(*p, q.abs()).ok(),
        KnotExpr::Cable { p, q, companion } => {
            let satellite = alexander_inner(companion)?.compose_power(*p).ok()?;
            let pattern = LaurentPoly::torus_alexander(*p, q.abs()).ok()?;
            bounded_mul(&satellite, &pattern)?.normalize_symmetric().ok()
        }
        KnotExpr::Mirror(inner) => alexander_inner(inner)?.reverse().normalize_symmetric().ok(),
        KnotExpr::ConnectSum(xs) => {
            let mut acc = LaurentPoly::one();
            for x in xs {
                acc = bounded_mul(&acc, &alexander_inner(x)?)?;
            }
            acc.normalize_symmetric().ok()
        }
        KnotExpr::Seed(s) => s.alexander.clone(),
    }
}

/// Hopf invariant of the plane field of the contact structure induced by
/// the fiber.
///
/// Positive cables keep the companion's value; a negative `(p, q)` cable of
/// a genus `g` companion adds `(1 - p)(2g - q - 1)`. A negative torus knot is
/// the negative cable of the unknot, so it gets `(1 - p)(-q - 1)`.
pub fn hopf(e: &KnotExpr) -> Result<i64> {
    match e {
        KnotExpr::Unknot => Ok(0),
        KnotExpr::Torus { p, q } => negative_cable_shift(*p, *q, 0),
        KnotExpr::Cable { p, q, companion } => {
            let h = hopf(companion)?;
            let shift = negative_cable_shift(*p, *q, genus(companion)?)?;
            h.checked_add(shift).ok_or_else(ovf("hopf"))
        }
        KnotExpr::Mirror(inner) => mirror_hopf(hopf(inner)?, genus(inner)?),
        KnotExpr::ConnectSum(xs) => xs
            .iter()
            .try_fold(0i64, |acc, x| acc.checked_add(hopf(x)?).ok_or_else(ovf("hopf"))),
        KnotExpr::Seed(s) => Ok(s.hopf),
    }
}

/// `(1 - p)(2g - q - 1)` for `q < 0`, zero otherwise.
fn negative_cable_shift(p: i64, q: i64, companion_genus: i64) -> Result<i64> {
    if q > 0 {
        return Ok(0);
    }
    let a = 1i64.checked_sub(p);
    let b = companion_genus
        .checked_mul(2)
        .and_then(|g2| g2.checked_sub(q))
        .and_then(|x| x.checked_sub(1));
    a.zip(b).and_then(|(a, b)| a.checked_mul(b)).ok_or_else(ovf("hopf"))
}

/// Hopf invariant of the reflection: `-h - 2g`.
pub fn mirror_hopf(h: i64, genus: i64) -> Result<i64> {
    h.checked_neg()
        .and_then(|x| x.checked_sub(genus.checked_mul(2)?))
        .ok_or_else(ovf("hopf"))
}

/// Whether the induced contact structure is the tight one.
pub fn is_tight(e: &KnotExpr) -> Result<bool> {
    Ok(match e {
        KnotExpr::Unknot => true,
        KnotExpr::Torus { q, .. } => *q > 0,
        KnotExpr::Cable { q, companion, .. } => *q > 0 && is_tight(companion)?,
        KnotExpr::Mirror(inner) => genus(inner)? == 0 && is_tight(inner)?,
        KnotExpr::ConnectSum(xs) => {
            for x in xs {
                if !is_tight(x)? {
                    return Ok(false);
                }
            }
            true
        }
        KnotExpr::Seed(s) => s.tau == s.genus,
    })
}

pub fn contact_class(e: &KnotExpr) -> Result<ContactClass> {
    let h = hopf(e)?;
    if is_tight(e)? {
        if h != 0 {
            return Err(InvariantError::Inconsistent(format!(
                "{e} is tight but has hopf invariant {h}"
            )));
        }
        Ok(ContactClass::Tight)
    } else {
        Ok(ContactClass::Overtwisted(h))
    }
}

/// Two-sided tau estimate for the `(p, q)` cable of a companion whose tau lies
/// in `companion_tau`, not using tightness.
///
/// For `q = pn + 1` this is `[p*lo + pn(p-1)/2, p*hi + pn(p-1)/2 + p - 1]`.
/// Otherwise the upper end comes from the next `q' = pn' + 1 >= q` (tau cannot
/// increase when positive crossings become negative) and the lower end is
/// `-genus`. The result is clamped to `[-genus, genus]`.
pub fn cable_tau_bounds(p: i64, q: i64, companion_tau: TauValue, cable_genus: i64) -> Result<TauValue> {
    let step = |n: i64| -> Option<i64> { p.checked_mul(n)?.checked_mul(p - 1).map(|x| x / 2) };
    let offset = (1 - q).rem_euclid(p);
    let q_up = q.checked_add(offset).ok_or_else(ovf("tau"))?;
    let n = (q_up - 1) / p;
    let shift = step(n).ok_or_else(ovf("tau"))?;
    let hi = p
        .checked_mul(companion_tau.hi())
        .and_then(|x| x.checked_add(shift))
        .and_then(|x| x.checked_add(p - 1))
        .ok_or_else(ovf("tau"))?;
    let lo = if offset == 0 {
        p.checked_mul(companion_tau.lo())
            .and_then(|x| x.checked_add(shift))
            .ok_or_else(ovf("tau"))?
    } else {
        -cable_genus
    };
    TauValue::interval(lo.max(-cable_genus), hi.min(cable_genus))
}

pub fn tau(e: &KnotExpr) -> Result<TauValue> {
    let g = genus(e)?;
    if is_tight(e)? {
        return Ok(TauValue::Exact(g));
    }
    let value = match e {
        KnotExpr::Unknot => TauValue::Exact(0),
        KnotExpr::Torus { .. } => TauValue::Exact(-g),
        KnotExpr::Seed(s) => TauValue::Exact(s.tau),
        KnotExpr::Mirror(inner) => tau(inner)?.negate(),
        KnotExpr::ConnectSum(xs) => {
            let (mut lo, mut hi) = (0i64, 0i64);
            for x in xs {
                let t = tau(x)?;
                lo = lo.checked_add(t.lo()).ok_or_else(ovf("tau"))?;
                hi = hi.checked_add(t.hi()).ok_or_else(ovf("tau"))?;
            }
            TauValue::interval(lo, hi)?
        }
        KnotExpr::Cable { p, q, companion } => cable_tau_bounds(*p, *q, tau(companion)?, g)?,
    };
    value.clamp(g)
}

pub fn is_strongly_quasipositive(e: &KnotExpr) -> Result<bool> {
    is_tight(e)
}

pub fn bounds_complex_curve(e: &KnotExpr) -> Result<bool> {
    is_tight(e)
}

/// One cabling level of an iterated torus knot, innermost first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLevel {
    pub level: usize,
    pub p: i64,
    pub q: i64,
    /// Smallest `q` allowed at this level: 1 for the innermost torus knot,
    /// `p * p_prev * q_prev + 1` above it.
    pub required_min_q: i128,
    pub satisfied: bool,
}

/// The `(p_i, q_i)` chain of an iterated torus knot, innermost first, or
/// `None` for anything else. The unknot has an empty chain.
pub fn iterated_torus_chain(e: &KnotExpr) -> Option<Vec<(i64, i64)>> {
    let mut chain = Vec::new();
    let mut node = e;
    loop {
        match node {
            KnotExpr::Unknot => break,
            KnotExpr::Torus { p, q } => {
                chain.push((*p, *q));
                break;
            }
            KnotExpr::Cable { p, q, companion } => {
                chain.push((*p, *q));
                node = companion;
            }
            _ => return None,
        }
    }
    chain.reverse();
    Some(chain)
}

/// Per-level check of the singularity-link condition.
pub fn singularity_ledger(e: &KnotExpr) -> Option<Vec<ChainLevel>> {
    let chain = iterated_torus_chain(e)?;
    let mut levels = Vec::with_capacity(chain.len());
    for (i, &(p, q)) in chain.iter().enumerate() {
        let required = match i {
            0 => 1,
            _ => {
                let (pp, qp) = chain[i - 1];
                (p as i128)
                    .saturating_mul(pp as i128)
                    .saturating_mul(qp as i128)
                    .saturating_add(1)
            }
        };
        levels.push(ChainLevel {
            level: i + 1,
            p,
            q,
            required_min_q: required,
            satisfied: (q as i128) >= required,
        });
    }
    Some(levels)
}

/// Whether an iterated torus knot is the link of a plane curve singularity;
/// `None` if `e` is not an iterated torus knot. The unknot counts (regular
/// point).
pub fn is_link_of_singularity(e: &KnotExpr) -> Option<bool> {
    singularity_ledger(e).map(|levels| levels.iter().all(|l| l.satisfied))
}

/// Disk and band counts of the quasipositive fiber surface obtained by
/// cabling, or `None` when the structure is overtwisted.
///
/// Positive torus knots use the braid-closure surface (`p` disks, `(p-1)q`
/// bands). A positive cable takes `p` parallel copies of the companion's
/// surface and adds `(p-1)q` positive bands.
pub fn quasipositive_surface_stats(e: &KnotExpr) -> Result<Option<QuasipositiveSurfaceStats>> {
    if !is_tight(e)? {
        return Ok(None);
    }
    surface_stats_tight(e).map(Some)
}

fn surface_stats_tight(e: &KnotExpr) -> Result<QuasipositiveSurfaceStats> {
    let o = || InvariantError::Overflow("surface stats");
    Ok(match e {
        KnotExpr::Unknot | KnotExpr::Mirror(_) => QuasipositiveSurfaceStats { disks: 1, bands: 0 },
        KnotExpr::Torus { p, q } => QuasipositiveSurfaceStats {
            disks: *p,
            bands: (p - 1).checked_mul(*q).ok_or_else(o)?,
        },
        KnotExpr::Cable { p, q, companion } => {
            let inner = surface_stats_tight(companion)?;
            let extra = (p - 1).checked_mul(*q).ok_or_else(o)?;
            QuasipositiveSurfaceStats {
                disks: p.checked_mul(inner.disks).ok_or_else(o)?,
                bands: p
                    .checked_mul(inner.bands)
                    .and_then(|b| b.checked_add(extra))
                    .ok_or_else(o)?,
            }
        }
        KnotExpr::ConnectSum(xs) => {
            let mut acc = QuasipositiveSurfaceStats { disks: 0, bands: -1 };
            for x in xs {
                let s = surface_stats_tight(x)?;
                acc.disks = acc.disks.checked_add(s.disks).ok_or_else(o)?;
                acc.bands = acc
                    .bands
                    .checked_add(s.bands)
                    .and_then(|b| b.checked_add(1))
                    .ok_or_else(o)?;
            }
            acc
        }
        KnotExpr::Seed(s) => QuasipositiveSurfaceStats {
            disks: 1,
            bands: s.genus.checked_mul(2).ok_or_else(o)?,
        },
    })
}

/// Normalizes `e` and computes every invariant.
pub fn report(e: &KnotExpr) -> Result<InvariantReport> {
    let n = e.normalize();
    let genus = genus(&n)?;
    let contact = contact_class(&n)?;
    let tight = contact == ContactClass::Tight;
    let report = InvariantReport {
        expression: e.to_string(),
        genus,
        alexander: alexander(&n),
        hopf: hopf(&n)?,
        contact,
        tau: tau(&n)?,
        strongly_quasipositive: is_strongly_quasipositive(&n)?,
        bounds_complex_curve: bounds_complex_curve(&n)?,
        link_of_singularity: is_link_of_singularity(&n),
        surface_stats: quasipositive_surface_stats(&n)?,
    };
    if tight && report.tau != TauValue::Exact(genus) {
        return Err(InvariantError::Inconsistent(format!(
            "{e} is tight but tau is {}",
            report.tau
        )));
    }
    if let Some(s) = report.surface_stats {
        if s.disks - s.bands != 1 - 2 * genus {
            return Err(InvariantError::Inconsistent(format!(
                "surface with {} disks and {} bands cannot have genus {genus}",
                s.disks, s.bands
            )));
        }
    }
    Ok(report)
}
