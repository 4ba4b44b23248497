//! Contact-geometric and Floer-theoretic invariants of fibered knots in the
//! three-sphere, written as expressions over unknots, torus knots, cables,
//! mirrors, connected sums and declared seed knots.
//!
//! ```
//! use knotcalc_core::{evaluate, ContactClass, TauValue};
//!
//! let r = evaluate("cable(2,1, torus(2,3))").unwrap();
//! assert_eq!(r.genus, 2);
//! assert_eq!(r.contact, ContactClass::Tight);
//! assert_eq!(r.tau, TauValue::Exact(2));
//! ```

pub mod batch;
pub mod expr;
pub mod hfk;
pub mod invariants;
pub mod laurent;
pub mod verify;

pub use expr::{ExprError, KnotExpr, SeedDescriptor};
pub use hfk::{HfkEntry, HfkTable};
pub use invariants::{ContactClass, InvariantError, InvariantReport, QuasipositiveSurfaceStats, TauValue};
pub use laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Parses, validates and reports on one expression.
pub fn evaluate(text: &str) -> Result<InvariantReport, Error> {
    let e = KnotExpr::parse(text)?;
    Ok(invariants::report(&e)?)
}
