//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are arbitrary precision and zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("degree is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("substitution power must be positive, got {0}")]
    NonPositivePower(i64),
    #[error("polynomial is not symmetric up to a unit")]
    NotSymmetrizable,
    #[error("polynomial evaluates to {0} at t=1, expected +1 or -1")]
    EvaluationNotUnit(BigInt),
    #[error("torus parameters must be positive and coprime, got ({p},{q})")]
    InvalidTorusParameters { p: i64, q: i64 },
    #[error("long division needs ordinary polynomials (no negative exponents)")]
    NotPolynomial,
    #[error("divisor must be nonzero with leading coefficient +1 or -1")]
    NonUnitDivisor,
    #[error("division left a nonzero remainder: {0}")]
    InexactDivision(LaurentPoly),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An integer Laurent polynomial, stored as a sparse exponent to coefficient map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal exponent with a nonzero coefficient.
    pub fn degree(&self) -> Result<i64, LaurentError> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Minimal exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Result<i64, LaurentError> {
        self.terms.keys().next().copied().ok_or(LaurentError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `t -> t^p` for a positive integer `p`.
    pub fn compose_power(&self, p: i64) -> Result<Self, LaurentError> {
        if p <= 0 {
            return Err(LaurentError::NonPositivePower(p));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e = e.checked_mul(p).ok_or(LaurentError::ExponentOverflow)?;
            terms.insert(e, c.clone());
        }
        Ok(Self { terms })
    }

    /// Substitutes `t -> t^-1`.
    pub fn reverse(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Result<Self, LaurentError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e = e.checked_add(k).ok_or(LaurentError::ExponentOverflow)?;
            terms.insert(e, c.clone());
        }
        Ok(Self { terms })
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Returns the unique `u * t^m * self` (`u = ±1`) that is invariant under
    /// `t -> t^-1` and evaluates to `+1` at `t = 1`.
    pub fn normalize_symmetric(&self) -> Result<Self, LaurentError> {
        let hi = self.degree()?;
        let lo = self.min_degree()?;
        let span = (lo as i128) + (hi as i128);
        if span % 2 != 0 {
            return Err(LaurentError::NotSymmetrizable);
        }
        let centered = self.shift((-span / 2) as i64)?;
        if !centered.is_symmetric() {
            return Err(LaurentError::NotSymmetrizable);
        }
        let value = centered.eval_at_one();
        if value.is_one() {
            Ok(centered)
        } else if (-&value).is_one() {
            Ok(-centered)
        } else {
            Err(LaurentError::EvaluationNotUnit(value))
        }
    }

    pub fn is_symmetric_normalized(&self) -> bool {
        !self.is_zero() && self.is_symmetric() && self.eval_at_one().is_one()
    }

    /// Long division of ordinary polynomials by a divisor whose leading
    /// coefficient is a unit. Returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), LaurentError> {
        let d_lead = divisor.leading_coeff().ok_or(LaurentError::NonUnitDivisor)?;
        if !d_lead.abs().is_one() {
            return Err(LaurentError::NonUnitDivisor);
        }
        if divisor.min_degree()? < 0 {
            return Err(LaurentError::NotPolynomial);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        if self.min_degree()? < 0 {
            return Err(LaurentError::NotPolynomial);
        }
        let n_deg = self.degree()?;
        let d_deg = divisor.degree()?;
        if n_deg < d_deg {
            return Ok((Self::zero(), self.clone()));
        }

        let len = usize::try_from(n_deg + 1).map_err(|_| LaurentError::ExponentOverflow)?;
        let mut rem = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            rem[*e as usize] = c.clone();
        }
        // Lower terms of the divisor, stored as offsets below its leading term.
        let lower: Vec<(usize, &BigInt)> = divisor
            .terms
            .iter()
            .filter(|(e, _)| **e != d_deg)
            .map(|(e, c)| ((d_deg - e) as usize, c))
            .collect();

        let d_deg = d_deg as usize;
        let mut quotient = BTreeMap::new();
        for i in (d_deg..len).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = std::mem::take(&mut rem[i]) * d_lead;
            for (off, c) in &lower {
                rem[i - off] -= &q * *c;
            }
            quotient.insert((i - d_deg) as i64, q);
        }

        let remainder = Self::from_terms(rem.into_iter().take(d_deg).enumerate().map(|(e, c)| (e as i64, c)));
        Ok((Self { terms: quotient }, remainder))
    }

    /// Symmetric-normalized Alexander polynomial of the `(p, q)` torus knot,
    /// `(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
    pub fn torus_alexander(p: i64, q: i64) -> Result<Self, LaurentError> {
        if p <= 0 || q <= 0 || !p.gcd(&q).is_one() {
            return Err(LaurentError::InvalidTorusParameters { p, q });
        }
        let pq = p.checked_mul(q).ok_or(LaurentError::ExponentOverflow)?;
        let binomial = |k: i64| Self::from_terms([(k, 1), (0, -1)]);
        let numerator = &binomial(pq) * &binomial(1);
        let denominator = &binomial(p) * &binomial(q);
        let (quotient, remainder) = numerator.div_rem(&denominator)?;
        if !remainder.is_zero() {
            return Err(LaurentError::InexactDivision(remainder));
        }
        quotient.normalize_symmetric()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Decreasing exponents, e.g. `t^3 - t^2 + 1 - t^-2 + t^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    match *e {
                        1 => f.write_str("t")?,
                        e => write!(f, "t^{e}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the display form, plus an optional `*` between coefficient
    /// and `t`, and arbitrary whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TermParser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut poly = LaurentPoly::zero();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        while let Some(b) = self.peek() {
            let negative = match b {
                b'+' | b'-' => {
                    self.pos += 1;
                    b == b'-'
                }
                _ if first => false,
                _ => return self.err("expected '+' or '-' between terms"),
            };
            first = false;
            let (exp, coeff) = self.term()?;
            poly.add_term(exp, if negative { -coeff } else { coeff });
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(i64, BigInt), LaurentError> {
        self.skip_ws();
        let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
        if self.peek() == Some(b'*') {
            if coeff.is_none() {
                return self.err("'*' without a coefficient");
            }
            self.pos += 1;
            if self.peek() != Some(b't') {
                return self.err("expected 't' after '*'");
            }
        }
        if self.peek() != Some(b't') {
            return match coeff {
                Some(c) => Ok((0, c)),
                None => self.err("expected a coefficient or 't'"),
            };
        }
        self.pos += 1;
        let coeff = coeff.unwrap_or_else(BigInt::one);
        if self.peek() != Some(b'^') {
            return Ok((1, coeff));
        }
        self.pos += 1;
        self.skip_ws();
        let negative = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let Some(d) = self.digits() else {
            return self.err("expected an exponent after '^'");
        };
        let Ok(exp) = d.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        Ok((if negative { -exp } else { exp }, coeff))
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
