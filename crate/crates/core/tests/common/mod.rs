#![allow(dead_code)]

use knotcalc_core::{KnotExpr, LaurentPoly, SeedDescriptor};
use num_integer::Integer;
use proptest::prelude::*;

pub fn coprime_pair(p: std::ops::Range<i64>, q: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = (i64, i64)> {
    (p, q).prop_filter("p, q coprime and q nonzero", |(p, q)| *q != 0 && p.gcd(q) == 1)
}

pub fn seed() -> impl Strategy<Value = KnotExpr> {
    (1i64..=3)
        .prop_flat_map(|g| (Just(g), -g..=g, -3i64..=3, any::<bool>()))
        .prop_map(|(g, tau, hopf, with_alex)| {
            let hopf = if tau == g { 0 } else { hopf };
            let mut s = SeedDescriptor::new(format!("S{g}"), g, tau, hopf);
            if with_alex {
                // Alexander polynomial of T(2, 2g+1): monic, degree g.
                s = s.with_alexander(LaurentPoly::torus_alexander(2, 2 * g + 1).unwrap());
            }
            KnotExpr::seed(s)
        })
}

pub fn leaf() -> impl Strategy<Value = KnotExpr> {
    prop_oneof![
        Just(KnotExpr::Unknot),
        coprime_pair(1..6, -9..=9).prop_map(|(p, q)| KnotExpr::torus(p, q)),
        seed(),
    ]
}

/// Arbitrary validated expressions.
pub fn knot_expr() -> impl Strategy<Value = KnotExpr> {
    leaf().prop_recursive(4, 16, 3, |inner| {
        prop_oneof![
            (coprime_pair(1..5, -7..=7), inner.clone()).prop_map(|((p, q), k)| KnotExpr::cable(p, q, k)),
            inner.clone().prop_map(KnotExpr::mirror),
            prop::collection::vec(inner, 2..=3).prop_map(KnotExpr::connsum),
        ]
    })
}

/// Iterated torus knots with positive twisting and their positive cables.
pub fn positive_iterated() -> impl Strategy<Value = KnotExpr> {
    (
        coprime_pair(2..6, 2..=9),
        prop::collection::vec(coprime_pair(2..4, 1..=9), 0..3),
    )
        .prop_map(|((p, q), cables)| {
            cables
                .into_iter()
                .fold(KnotExpr::torus(p, q), |k, (p, q)| KnotExpr::cable(p, q, k))
        })
}
