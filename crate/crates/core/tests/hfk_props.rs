mod common;

use common::coprime_pair;
use knotcalc_core::hfk::{
    check_conjugation_symmetry, hopf_from_table, mirror_table, oracle_eligible, staircase_from_alexander,
    tau_from_table,
};
use knotcalc_core::invariants::{alexander, genus, hopf, tau};
use knotcalc_core::{KnotExpr, TauValue};
use proptest::prelude::*;

/// Positive torus knots and their cables with `q >= p(2g - 1)`.
fn eligible() -> impl Strategy<Value = KnotExpr> {
    (
        coprime_pair(2..5, 1..=9),
        prop::collection::vec((2i64..4, 0i64..6), 0..3),
    )
        .prop_map(|((p, q), cables)| {
            cables.into_iter().fold(KnotExpr::torus(p, q), |k, (p, extra)| {
                let g = genus(&k).unwrap();
                let q = ((p * (2 * g - 1)).max(1) + extra..)
                    .find(|q| num_integer::gcd(p, *q) == 1)
                    .unwrap();
                KnotExpr::cable(p, q, k)
            })
        })
}

proptest! {
    #[test]
    fn table_agrees_with_formulas(e in eligible()) {
        let n = e.normalize();
        prop_assert!(oracle_eligible(&n).unwrap());
        let delta = alexander(&n).unwrap();
        let table = staircase_from_alexander(&delta).unwrap();
        prop_assert!(check_conjugation_symmetry(&table));
        prop_assert_eq!(table.euler_characteristic(), delta);
        prop_assert_eq!(hopf_from_table(&table).unwrap(), hopf(&n).unwrap());
        prop_assert_eq!(TauValue::Exact(tau_from_table(&table).unwrap()), tau(&n).unwrap());
    }

    #[test]
    fn mirrored_table_gives_mirror_hopf(e in eligible()) {
        let n = e.normalize();
        let table = staircase_from_alexander(&alexander(&n).unwrap()).unwrap();
        let m = mirror_table(&table);
        prop_assert_eq!(mirror_table(&m), table);
        prop_assert_eq!(hopf_from_table(&m).unwrap(), hopf(&KnotExpr::mirror(n)).unwrap());
    }
}

#[test]
fn torus_grid() {
    for p in 2..=5i64 {
        for q in 2..=13i64 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let e = KnotExpr::torus(p, q);
            let table = staircase_from_alexander(&alexander(&e).unwrap()).unwrap();
            assert_eq!(hopf_from_table(&table), Ok(0), "T({p},{q})");
            assert_eq!(tau_from_table(&table), Ok(genus(&e).unwrap()), "T({p},{q})");
        }
    }
}

#[test]
fn stabilization_of_trefoil_cables() {
    let trefoil = KnotExpr::torus(2, 3);
    for p in 2..=3i64 {
        for n in 1..=6i64 {
            let q = p * n + 1;
            let cable = KnotExpr::cable(p, q, trefoil.clone());
            let table = staircase_from_alexander(&alexander(&cable).unwrap()).unwrap();
            let want = p + p * n * (p - 1) / 2;
            assert_eq!(tau_from_table(&table), Ok(want), "p={p} n={n}");
            assert_eq!(hopf_from_table(&table), Ok(0), "p={p} n={n}");
        }
    }
}
